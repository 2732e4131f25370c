#pragma once

#include <Eigen/Dense>
#include <functional>
#include <variant>
#include <vector>

#include "qwalk/state.hpp"

namespace qwalk {

struct CoinOperator {
    Eigen::Matrix2cd matrix;

    static CoinOperator hadamard();
    static CoinOperator identity();
};

// Local interaction: a unitary acting on the joint coin space, applied only
// where both walkers occupy the same site.

struct NoInteraction {};

// e^{i theta_plus} on equal coin pairs (UU, DD), e^{i theta_minus} on opposite
// pairs (UD, DU). theta_minus = 0 gives the single-parameter family V0(theta).
struct PhasePair {
    double theta_plus = 0.0;
    double theta_minus = 0.0;
};

// Coefficients h_ij of H = sum_ij h_ij sigma_i (x) sigma_j in the Pauli basis
// (sigma_0 = identity); the applied coin unitary is exp(iH).
struct HermitianGenerator {
    Eigen::Matrix4d coefficients = Eigen::Matrix4d::Zero();
};

// Arbitrary 4x4 unitary on the joint coin space, basis (UU, UD, DU, DD).
struct ExplicitCoinUnitary {
    Eigen::Matrix4cd matrix = Eigen::Matrix4cd::Identity();
};

using InteractionSpec = std::variant<NoInteraction, PhasePair, HermitianGenerator, ExplicitCoinUnitary>;

// coin (x) coin on the spin-pair index at every cell; time unchanged.
TwoWalkerState coin_step(const TwoWalkerState& state, const CoinOperator& coin);

// Up components move x -> x+1, Down components x -> x-1, per walker. Cyclic
// at the window edge; throws capacity_error if a nonzero amplitude would
// wrap, or if state.time has already reached lattice.max_steps.
TwoWalkerState shift_step(const TwoWalkerState& state);

// shift_step(coin_step(state)); time advances by one.
TwoWalkerState free_step(const TwoWalkerState& state, const CoinOperator& coin);

// exp(iH) through the eigendecomposition of the Hermitian 4x4 H, so the
// result is unitary to round-off.
Eigen::Matrix4cd build_coin_unitary(const HermitianGenerator& generator);

// Applies the interaction's coin unitary on every diagonal cell x1 = x2;
// off-diagonal cells and time are untouched.
TwoWalkerState apply_interaction(const TwoWalkerState& state, const InteractionSpec& spec);

// One interleaved step: interaction after the free step, V * (S C (x) S C).
TwoWalkerState interacting_step(const TwoWalkerState& state, const CoinOperator& coin,
                                const InteractionSpec& spec);

struct Trajectory {
    std::vector<TwoWalkerState> snapshots;  // t = 0, every cadence point, final step

    const TwoWalkerState& final_state() const { return snapshots.back(); }
};

// Streams every intermediate state (t = 0 through t = steps) to the observer
// without retaining them.
void evolve_observed(const TwoWalkerState& initial, const CoinOperator& coin,
                     const InteractionSpec& spec, int steps,
                     const std::function<void(const TwoWalkerState&)>& observe);

// Snapshots at t = 0, every record_every steps, and the final step.
Trajectory evolve(const TwoWalkerState& initial, const CoinOperator& coin,
                  const InteractionSpec& spec, int steps, int record_every = 1);

}  // namespace qwalk
