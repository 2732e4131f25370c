#include "qwalk/evolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr double kCoinUnitaryTolerance = 1e-12;
constexpr double kInteractionUnitaryTolerance = 1e-10;

bool is_unitary(const Eigen::Matrix2cd& m, double tol) {
    return (m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Eigen::Matrix4cd& m, double tol) {
    return (m.adjoint() * m - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() <= tol;
}

// K[s][s'] = C(s1,s1') C(s2,s2') on the flattened spin-pair index.
std::array<std::array<Complex, 4>, 4> coin_kron(const Eigen::Matrix2cd& c) {
    std::array<std::array<Complex, 4>, 4> k;
    for (int s = 0; s < 4; ++s) {
        for (int t = 0; t < 4; ++t) {
            k[s][t] = c(s >> 1, t >> 1) * c(s & 1, t & 1);
        }
    }
    return k;
}

// Nonzero amplitude on the outermost ring means the next shift would wrap it
// around the window; the lattice was sized so this never happens within
// max_steps from a centered start.
void require_guard_band_clear(const TwoWalkerState& state) {
    const int L = state.lattice.num_sites;
    auto occupied = [&](SpinPair s, int i1, int i2) {
        return state.amp(s, i1, i2) != Complex{0.0, 0.0};
    };
    for (int s = 0; s < kSpinPairCount; ++s) {
        const auto pair = static_cast<SpinPair>(s);
        for (int i = 0; i < L; ++i) {
            if (occupied(pair, 0, i) || occupied(pair, L - 1, i) || occupied(pair, i, 0) ||
                occupied(pair, i, L - 1)) {
                throw capacity_error("shift_step: nonzero amplitude reached the guard band");
            }
        }
    }
}

// Multiplies the four spin-pair amplitudes of every diagonal cell by `op`.
TwoWalkerState apply_contact_unitary(const TwoWalkerState& state, const Eigen::Matrix4cd& op) {
    TwoWalkerState out = state;
    const int L = out.lattice.num_sites;
    const std::size_t plane = out.plane_size();
    for (int i = 0; i < L; ++i) {
        const std::size_t cell = static_cast<std::size_t>(i) * L + i;
        std::array<Complex, 4> v;
        for (int s = 0; s < 4; ++s) v[s] = out.amplitudes[s * plane + cell];
        for (int s = 0; s < 4; ++s) {
            out.amplitudes[s * plane + cell] =
                op(s, 0) * v[0] + op(s, 1) * v[1] + op(s, 2) * v[2] + op(s, 3) * v[3];
        }
    }
    return out;
}

const Eigen::Matrix2cd& pauli(int i) {
    static const std::array<Eigen::Matrix2cd, 4> sigma = [] {
        std::array<Eigen::Matrix2cd, 4> s;
        const Complex I{0.0, 1.0};
        s[0] << 1, 0, 0, 1;
        s[1] << 0, 1, 1, 0;
        s[2] << 0, -I, I, 0;
        s[3] << 1, 0, 0, -1;
        return s;
    }();
    return sigma[i];
}

}  // namespace

CoinOperator CoinOperator::hadamard() {
    CoinOperator coin;
    const double h = 1.0 / std::sqrt(2.0);
    coin.matrix << h, h, h, -h;
    return coin;
}

CoinOperator CoinOperator::identity() {
    return CoinOperator{Eigen::Matrix2cd::Identity()};
}

TwoWalkerState coin_step(const TwoWalkerState& state, const CoinOperator& coin) {
    if (!is_unitary(coin.matrix, kCoinUnitaryTolerance)) {
        throw std::invalid_argument("coin_step: coin matrix is not unitary");
    }
    const std::size_t plane = state.plane_size();
    const auto k = coin_kron(coin.matrix);

    TwoWalkerState out{state.lattice, state.time, std::vector<Complex>(kSpinPairCount * plane)};
    const Complex* in = state.amplitudes.data();
    for (int s = 0; s < 4; ++s) {
        // gather the nonzero row entries; a lone unit entry is a plain copy
        int cols[4];
        int n = 0;
        for (int t = 0; t < 4; ++t) {
            if (k[s][t] != Complex{0.0, 0.0}) cols[n++] = t;
        }
        Complex* dst = out.amplitudes.data() + s * plane;
        if (n == 1 && k[s][cols[0]] == Complex{1.0, 0.0}) {
            std::copy_n(in + cols[0] * plane, plane, dst);
            continue;
        }
        for (std::size_t i = 0; i < plane; ++i) {
            Complex acc{0.0, 0.0};
            for (int j = 0; j < n; ++j) {
                acc += k[s][cols[j]] * in[cols[j] * plane + i];
            }
            dst[i] = acc;
        }
    }
    return out;
}

TwoWalkerState shift_step(const TwoWalkerState& state) {
    if (state.time >= state.lattice.max_steps) {
        throw capacity_error("shift_step: lattice step budget exhausted");
    }
    require_guard_band_clear(state);

    const int L = state.lattice.num_sites;
    const std::size_t plane = state.plane_size();
    TwoWalkerState out{state.lattice, state.time, std::vector<Complex>(kSpinPairCount * plane)};
    for (int s = 0; s < 4; ++s) {
        const auto pair = static_cast<SpinPair>(s);
        const int d1 = first_spin(pair) == Spin::Up ? 1 : -1;
        const int d2 = second_spin(pair) == Spin::Up ? 1 : -1;
        const Complex* src_plane = state.amplitudes.data() + s * plane;
        Complex* dst_plane = out.amplitudes.data() + s * plane;
        for (int i1 = 0; i1 < L; ++i1) {
            int from = i1 - d1;
            if (from < 0) from += L;
            if (from >= L) from -= L;
            const Complex* src = src_plane + static_cast<std::size_t>(from) * L;
            Complex* dst = dst_plane + static_cast<std::size_t>(i1) * L;
            if (d2 == 1) {  // dst[i2] = src[i2 - 1], cyclic
                dst[0] = src[L - 1];
                std::copy_n(src, L - 1, dst + 1);
            } else {  // dst[i2] = src[i2 + 1], cyclic
                std::copy_n(src + 1, L - 1, dst);
                dst[L - 1] = src[0];
            }
        }
    }
    return out;
}

TwoWalkerState free_step(const TwoWalkerState& state, const CoinOperator& coin) {
    TwoWalkerState out = shift_step(coin_step(state, coin));
    out.time = state.time + 1;
    return out;
}

Eigen::Matrix4cd build_coin_unitary(const HermitianGenerator& generator) {
    if (!generator.coefficients.allFinite()) {
        throw std::invalid_argument("build_coin_unitary: coefficients must be finite");
    }
    Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (generator.coefficients(i, j) == 0.0) continue;
            Eigen::Matrix4cd term;
            const auto& a = pauli(i);
            const auto& b = pauli(j);
            term.block<2, 2>(0, 0) = a(0, 0) * b;
            term.block<2, 2>(0, 2) = a(0, 1) * b;
            term.block<2, 2>(2, 0) = a(1, 0) * b;
            term.block<2, 2>(2, 2) = a(1, 1) * b;
            h += generator.coefficients(i, j) * term;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h);
    Eigen::Vector4cd phases;
    for (int i = 0; i < 4; ++i) {
        phases(i) = std::polar(1.0, solver.eigenvalues()(i));
    }
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

TwoWalkerState apply_interaction(const TwoWalkerState& state, const InteractionSpec& spec) {
    return std::visit(
        [&](const auto& s) -> TwoWalkerState {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, NoInteraction>) {
                return state;
            } else if constexpr (std::is_same_v<T, PhasePair>) {
                TwoWalkerState out = state;
                const int L = out.lattice.num_sites;
                const std::size_t plane = out.plane_size();
                // zero angles skip the multiply, so V(0,0) is bit-exact identity
                auto rotate = [&](double theta, int pair_a, int pair_b) {
                    if (theta == 0.0) return;
                    const Complex phase = std::polar(1.0, theta);
                    for (int i = 0; i < L; ++i) {
                        const std::size_t cell = static_cast<std::size_t>(i) * L + i;
                        out.amplitudes[pair_a * plane + cell] *= phase;
                        out.amplitudes[pair_b * plane + cell] *= phase;
                    }
                };
                rotate(s.theta_plus, 0, 3);   // UU, DD
                rotate(s.theta_minus, 1, 2);  // UD, DU
                return out;
            } else if constexpr (std::is_same_v<T, HermitianGenerator>) {
                return apply_contact_unitary(state, build_coin_unitary(s));
            } else {
                if (!is_unitary(s.matrix, kInteractionUnitaryTolerance)) {
                    throw std::invalid_argument("apply_interaction: coin operator is not unitary");
                }
                return apply_contact_unitary(state, s.matrix);
            }
        },
        spec);
}

TwoWalkerState interacting_step(const TwoWalkerState& state, const CoinOperator& coin,
                                const InteractionSpec& spec) {
    return apply_interaction(free_step(state, coin), spec);
}

void evolve_observed(const TwoWalkerState& initial, const CoinOperator& coin,
                     const InteractionSpec& spec, int steps,
                     const std::function<void(const TwoWalkerState&)>& observe) {
    if (steps < 0) {
        throw std::invalid_argument("evolve: steps must be non-negative");
    }
    if (initial.time > initial.lattice.max_steps - steps) {
        throw capacity_error("evolve: steps exceed the lattice step budget");
    }
    TwoWalkerState state = initial;
    observe(state);
    for (int k = 0; k < steps; ++k) {
        state = interacting_step(state, coin, spec);
        observe(state);
    }
}

Trajectory evolve(const TwoWalkerState& initial, const CoinOperator& coin,
                  const InteractionSpec& spec, int steps, int record_every) {
    if (record_every < 1) {
        throw std::invalid_argument("evolve: record_every must be at least 1");
    }
    Trajectory trajectory;
    evolve_observed(initial, coin, spec, steps, [&](const TwoWalkerState& state) {
        const int elapsed = state.time - initial.time;
        if (elapsed == 0 || elapsed == steps || elapsed % record_every == 0) {
            trajectory.snapshots.push_back(state);
        }
    });
    return trajectory;
}

}  // namespace qwalk
