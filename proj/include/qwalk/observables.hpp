#pragma once

#include <Eigen/Dense>
#include <array>
#include <span>
#include <utility>
#include <vector>

#include "qwalk/evolution.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

// P(x1, x2) = sum over spin pairs of |Psi|^2.
struct JointDistribution {
    Lattice lattice;
    int time = 0;
    std::vector<double> values;  // L*L row-major [x1-site][x2-site]

    double at(int site1, int site2) const {
        return values[static_cast<std::size_t>(site1) * lattice.num_sites + site2];
    }
    double at_coordinates(int x1, int x2) const {
        return at(lattice.site_of(x1), lattice.site_of(x2));
    }
};

JointDistribution joint_distribution(const TwoWalkerState& state);

// n(x) = sum_x' P(x, x').
struct Marginal {
    Lattice lattice;
    int time = 0;
    std::vector<double> values;  // length L

    double at(int site) const { return values[site]; }
    double at_coordinate(int x) const { return values[lattice.site_of(x)]; }
};

Marginal marginal(const JointDistribution& joint);

// Three-part split of the occupied segment at step t: the interior holds all
// x with 3|x| <= t+1 (integer arithmetic), the rest goes left or right by sign.
enum class Zone : int { Interior = 0, Left = 1, Right = 2 };

Zone classify_zone(int x, int time);

// All nine zone-pair sums of the joint distribution, indexed
// [zone of x1][zone of x2]. The shortcut formulas below assume exchange and
// reflection symmetry; these sums let callers verify that directly.
using ZonePairSums = std::array<std::array<double, 3>, 3>;

ZonePairSums zone_pair_sums(const JointDistribution& joint);

struct ZoneProbabilities {
    double p_a = 0.0;  // both walkers interior
    double p_b = 0.0;  // opposite edges: 2 * sum(L x R)
    double p_c = 0.0;  // same edge:      2 * sum(L x L)
    double p_d = 0.0;  // mixed:          4 * sum(I x L)
    int zone_boundary = 0;  // largest |x| inside the interior zone
};

// time must match joint.time (guards against stale distributions).
ZoneProbabilities zone_probabilities(const JointDistribution& joint, int time);

// One walker's state after tracing out the other, over coin (x) position.
struct ReducedDensityMatrix {
    Eigen::MatrixXcd matrix;      // 2L x 2L, row index = spin * L + site
    Eigen::VectorXd eigenvalues;  // descending, clamped to >= 0
    Eigen::MatrixXcd orbitals;    // eigenvectors as columns, same order
    double entropy = 0.0;         // von Neumann, in bits
    int time = 0;
};

ReducedDensityMatrix reduced_density_matrix(const TwoWalkerState& state);

// Entropy contribution of a density-matrix spectrum: values in [-1e-10, 0)
// clamp to zero, anything below -1e-10 throws numerical_error, 0 log 0 := 0.
double entropy_of_spectrum(std::span<const double> eigenvalues);

// Same result as reduced_density_matrix(state).entropy, but solves only the
// occupied block and skips the eigenvectors.
double entanglement_entropy(const TwoWalkerState& state);

std::vector<std::pair<int, double>> entropy_series(const Trajectory& trajectory);

}  // namespace qwalk
