// Acceptance suite: end-to-end checks of the full observable pipeline at the
// desk scale used throughout (t = 100, L = 203). Prints one line per
// criterion; exits nonzero if any fail.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "qwalk/evolution.hpp"
#include "qwalk/observables.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/state.hpp"
#include "reference_walk.hpp"

using namespace qwalk;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSteps = 100;

int failures = 0;

void report(int criterion, bool passed, const char* description, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s%s%s\n", passed ? "PASS" : "FAIL", criterion, description,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!passed) ++failures;
}

std::string num(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

TwoWalkerState balanced_start(int max_steps) {
    return product_initial_state(make_lattice(max_steps), coin_plus(), coin_plus(), 0, 0);
}

TwoWalkerState run_phase_walk(int steps, double theta) {
    TwoWalkerState state = balanced_start(steps);
    const CoinOperator coin = CoinOperator::hadamard();
    for (int t = 0; t < steps; ++t) state = interacting_step(state, coin, PhasePair{theta, 0.0});
    return state;
}

void criterion_1_unitarity() {
    double worst = 0.0;
    for (double theta : {0.0, kPi / 4, kPi, 3 * kPi / 2}) {
        worst = std::max(worst, std::abs(norm_squared(run_phase_walk(kSteps, theta)) - 1.0));
    }
    report(1, worst <= 1e-10, "norm conserved after 100 interleaved steps",
           "max |norm^2 - 1| = " + num(worst));
}

void criterion_2_factorization() {
    const TwoWalkerState state = run_phase_walk(kSteps, 0.0);
    const JointDistribution joint = joint_distribution(state);
    const Marginal n = marginal(joint);
    const int L = state.lattice.num_sites;
    double worst = 0.0;
    for (int i1 = 0; i1 < L; ++i1) {
        for (int i2 = 0; i2 < L; ++i2) {
            worst = std::max(worst, std::abs(joint.at(i1, i2) - n.at(i1) * n.at(i2)));
        }
    }
    const ZoneProbabilities zones = zone_probabilities(joint, kSteps);
    const double side_gap = std::abs(zones.p_b - zones.p_c);
    report(2, worst <= 1e-12 && side_gap <= 1e-10,
           "theta = 0 factorizes and balances the sides",
           "max |P - n n| = " + num(worst) + ", |pB - pC| = " + num(side_gap));
}

void criterion_3_bunching_plateau() {
    const ZoneProbabilities zones =
        zone_probabilities(joint_distribution(run_phase_walk(kSteps, kPi)), kSteps);
    report(3, std::abs(zones.p_a - 0.45) <= 0.05, "theta = pi interior probability near 45%",
           "pA = " + num(zones.p_a));
}

void criterion_4_zero_entanglement_line() {
    double worst = 0.0;
    evolve_observed(balanced_start(kSteps), CoinOperator::hadamard(), PhasePair{0.0, 0.0}, kSteps,
                    [&](const TwoWalkerState& state) {
                        worst = std::max(worst, std::abs(entanglement_entropy(state)));
                    });
    report(4, worst <= 1e-10, "theta = 0 generates no entanglement for any t <= 100",
           "max |entropy| = " + num(worst));
}

void criterion_5_first_step_entropy() {
    double worst_engine = 0.0;
    double worst_brute = 0.0;
    for (int k = 0; k < 8; ++k) {
        const double theta = 2.0 * kPi * k / 8.0;
        const TwoWalkerState out =
            interacting_step(balanced_start(1), CoinOperator::hadamard(), PhasePair{theta, 0.0});
        const double expected = qwalk_test::binary_entropy((1.0 + std::abs(std::cos(theta))) / 2.0);
        worst_engine = std::max(worst_engine, std::abs(entanglement_entropy(out) - expected));

        const Eigen::MatrixXcd brute = qwalk_test::brute_force_reduced_density(out);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(brute, Eigen::EigenvaluesOnly);
        const Eigen::VectorXd lambdas = solver.eigenvalues();
        const double brute_entropy =
            entropy_of_spectrum({lambdas.data(), static_cast<std::size_t>(lambdas.size())});
        worst_brute = std::max(worst_brute, std::abs(brute_entropy - expected));
    }
    report(5, worst_engine <= 1e-10 && worst_brute <= 1e-10,
           "t = 1 entropy equals the binary-entropy closed form on 8 angles",
           "engine dev = " + num(worst_engine) + ", brute-force dev = " + num(worst_brute));
}

void criterion_6_periodicity() {
    const double theta = 0.7;
    const TwoWalkerState a = run_phase_walk(kSteps, theta);
    const TwoWalkerState b = run_phase_walk(kSteps, theta + 2.0 * kPi);

    double state_dev = 0.0;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        state_dev = std::max(state_dev, std::abs(a.amplitudes[i] - b.amplitudes[i]));
    }
    const JointDistribution ja = joint_distribution(a);
    const JointDistribution jb = joint_distribution(b);
    double joint_dev = 0.0;
    for (std::size_t i = 0; i < ja.values.size(); ++i) {
        joint_dev = std::max(joint_dev, std::abs(ja.values[i] - jb.values[i]));
    }
    const ZoneProbabilities za = zone_probabilities(ja, kSteps);
    const ZoneProbabilities zb = zone_probabilities(jb, kSteps);
    const double zone_dev =
        std::max({std::abs(za.p_a - zb.p_a), std::abs(za.p_b - zb.p_b),
                  std::abs(za.p_c - zb.p_c), std::abs(za.p_d - zb.p_d)});
    const double entropy_dev =
        std::abs(entanglement_entropy(a) - entanglement_entropy(b));
    const double worst = std::max({state_dev, joint_dev, zone_dev, entropy_dev});
    report(6, worst <= 1e-10, "theta and theta + 2 pi agree on states and observables",
           "max deviation = " + num(worst));
}

void criterion_7_theta_shape() {
    const double entropy_tail = entanglement_entropy(run_phase_walk(kSteps, 7 * kPi / 4));
    const double entropy_mid = entanglement_entropy(run_phase_walk(kSteps, kPi));
    const bool entropy_ok = entropy_tail < entropy_mid;

    const double pa_small =
        zone_probabilities(joint_distribution(run_phase_walk(kSteps, kPi / 8)), kSteps).p_a;
    const double pa_half =
        zone_probabilities(joint_distribution(run_phase_walk(kSteps, kPi / 2)), kSteps).p_a;
    const bool zones_ok = pa_small < pa_half;

    report(7, entropy_ok && zones_ok, "qualitative theta shape",
           "E(100, 7pi/4) = " + num(entropy_tail) + " vs E(100, pi) = " + num(entropy_mid) +
               " (want <); pA(pi/8) = " + num(pa_small) + " vs pA(pi/2) = " + num(pa_half) +
               " (want <)");
}

void criterion_8_oracle_equivalence() {
    const oracle::SuiteReport suite = oracle::run_suite(oracle::kDefaultSuiteSeed);
    report(8, suite.entries.size() >= 20 && suite.all_within(1e-12),
           "engine matches dense-matrix evolution on the seeded suite",
           std::to_string(suite.entries.size()) +
               " cases, max deviation = " + num(suite.max_deviation));
}

void criterion_9_structural_invariants() {
    bool structure_ok = true;
    double exchange_dev = 0.0;
    evolve_observed(balanced_start(kSteps), CoinOperator::hadamard(), PhasePair{kPi, 0.0}, kSteps,
                    [&](const TwoWalkerState& state) {
                        structure_ok = structure_ok && qwalk_test::support_and_parity_exact(state);
                        exchange_dev =
                            std::max(exchange_dev, qwalk_test::exchange_asymmetry(state));
                    });
    report(9, structure_ok && exchange_dev <= 1e-12,
           "support and parity exact, exchange symmetric at every step of a theta = pi run",
           std::string("support/parity ") + (structure_ok ? "exact" : "VIOLATED") +
               ", exchange dev = " + num(exchange_dev));
}

void criterion_10_corner_peaks() {
    const TwoWalkerState state = run_phase_walk(kSteps, 0.0);
    const JointDistribution joint = joint_distribution(state);
    const int L = state.lattice.num_sites;

    struct Cell {
        double p;
        int x1;
        int x2;
    };
    std::vector<Cell> cells;
    cells.reserve(joint.values.size());
    for (int i1 = 0; i1 < L; ++i1) {
        for (int i2 = 0; i2 < L; ++i2) {
            cells.push_back({joint.at(i1, i2), joint.lattice.coordinate(i1),
                             joint.lattice.coordinate(i2)});
        }
    }
    std::partial_sort(cells.begin(), cells.begin() + 4, cells.end(),
                      [](const Cell& a, const Cell& b) { return a.p > b.p; });

    const double threshold = 2.0 * kSteps / 3.0;
    bool corners_ok = true;
    std::array<bool, 4> quadrant_seen{};  // (++, +-, -+, --)
    std::string placement;
    for (int k = 0; k < 4; ++k) {
        const Cell& cell = cells[k];
        corners_ok = corners_ok && std::abs(cell.x1) > threshold && std::abs(cell.x2) > threshold;
        const int quadrant = (cell.x1 > 0 ? 0 : 2) + (cell.x2 > 0 ? 0 : 1);
        quadrant_seen[quadrant] = true;
        placement += "(" + std::to_string(cell.x1) + "," + std::to_string(cell.x2) + ") ";
    }
    const bool all_quadrants =
        quadrant_seen[0] && quadrant_seen[1] && quadrant_seen[2] && quadrant_seen[3];
    report(10, corners_ok && all_quadrants,
           "the four largest joint probabilities sit in the four far corners",
           "cells: " + placement);
}

}  // namespace

int main() {
    criterion_1_unitarity();
    criterion_2_factorization();
    criterion_3_bunching_plateau();
    criterion_4_zero_entanglement_line();
    criterion_5_first_step_entropy();
    criterion_6_periodicity();
    criterion_7_theta_shape();
    criterion_8_oracle_equivalence();
    criterion_9_structural_invariants();
    criterion_10_corner_peaks();

    std::printf("acceptance: %d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
