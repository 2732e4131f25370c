#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "qwalk/evolution.hpp"

namespace qwalk::oracle {

// Brute-force verifier: the full interleaved step V * (S (x) S) * (C (x) C)
// assembled as one explicit dense matrix on a small lattice. Basis ordering
// of the flat index is (s * L + i1) * L + i2 -- the single source of truth
// the engine's storage layout is tested against.
struct DenseStep {
    Eigen::MatrixXcd matrix;  // 4 L^2 x 4 L^2
    Lattice lattice;
};

// L <= 15 (dimension <= 900); larger lattices throw capacity_error.
DenseStep build_dense_step(const Lattice& lattice, const CoinOperator& coin,
                           const InteractionSpec& spec);

// State vector in the dense basis ordering.
Eigen::VectorXcd flatten(const TwoWalkerState& state);

using StepFunction =
    std::function<TwoWalkerState(const TwoWalkerState&, const CoinOperator&, const InteractionSpec&)>;

// Evolves `initial` by repeated dense matrix-vector products and by the
// engine; returns the max absolute amplitude deviation. Requires
// steps <= (L-3)/2 so the support stays off the boundary.
double compare_evolutions(const Lattice& lattice, const CoinOperator& coin,
                          const InteractionSpec& spec, const TwoWalkerState& initial, int steps);

struct SuiteCase {
    std::string label;
    int max_steps = 3;  // lattice size via make_lattice
    CoinVector coin1;
    CoinVector coin2;
    int x1 = 0;
    int x2 = 0;
    InteractionSpec spec;
    int steps = 3;
};

// Deterministic for a given seed; covers every InteractionSpec variant.
std::vector<SuiteCase> suite_cases(unsigned seed);

struct SuiteReport {
    struct Entry {
        std::string label;
        double deviation = 0.0;
    };
    std::vector<Entry> entries;
    double max_deviation = 0.0;

    bool all_within(double tolerance) const { return max_deviation <= tolerance; }
};

inline constexpr unsigned kDefaultSuiteSeed = 20250901u;

// Runs every suite case against the dense matrices. engine_step defaults to
// interacting_step; tests inject a corrupted step as a negative control.
SuiteReport run_suite(unsigned seed, const StepFunction& engine_step = {});

}  // namespace qwalk::oracle
