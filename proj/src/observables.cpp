#include "qwalk/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr double kEigenvalueFloor = -1e-10;

// Amplitudes as the (spin1, x1) x (spin2, x2) matrix whose Gram matrix is the
// walker-1 reduced density matrix.
Eigen::MatrixXcd pair_matrix(const TwoWalkerState& state) {
    const int L = state.lattice.num_sites;
    Eigen::MatrixXcd m(2 * L, 2 * L);
    using PlaneMap = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
    const std::size_t plane = state.plane_size();
    for (int s = 0; s < kSpinPairCount; ++s) {
        const auto pair = static_cast<SpinPair>(s);
        const int row = static_cast<int>(first_spin(pair)) * L;
        const int col = static_cast<int>(second_spin(pair)) * L;
        m.block(row, col, L, L) = PlaneMap(state.amplitudes.data() + s * plane, L, L);
    }
    return m;
}

}  // namespace

JointDistribution joint_distribution(const TwoWalkerState& state) {
    const std::size_t plane = state.plane_size();
    JointDistribution joint{state.lattice, state.time, std::vector<double>(plane, 0.0)};
    const Complex* amps = state.amplitudes.data();
    for (int s = 0; s < kSpinPairCount; ++s) {
        const Complex* src = amps + s * plane;
        for (std::size_t i = 0; i < plane; ++i) {
            joint.values[i] += std::norm(src[i]);
        }
    }
    return joint;
}

Marginal marginal(const JointDistribution& joint) {
    const int L = joint.lattice.num_sites;
    Marginal result{joint.lattice, joint.time, std::vector<double>(L, 0.0)};
    for (int i1 = 0; i1 < L; ++i1) {
        double row = 0.0;
        const double* src = joint.values.data() + static_cast<std::size_t>(i1) * L;
        for (int i2 = 0; i2 < L; ++i2) row += src[i2];
        result.values[i1] = row;
    }
    return result;
}

Zone classify_zone(int x, int time) {
    if (3 * std::abs(x) <= time + 1) return Zone::Interior;
    return x < 0 ? Zone::Left : Zone::Right;
}

ZonePairSums zone_pair_sums(const JointDistribution& joint) {
    const int L = joint.lattice.num_sites;
    ZonePairSums sums{};
    std::vector<int> zone(L);
    for (int i = 0; i < L; ++i) {
        zone[i] = static_cast<int>(classify_zone(joint.lattice.coordinate(i), joint.time));
    }
    for (int i1 = 0; i1 < L; ++i1) {
        const double* src = joint.values.data() + static_cast<std::size_t>(i1) * L;
        auto& row = sums[zone[i1]];
        for (int i2 = 0; i2 < L; ++i2) {
            row[zone[i2]] += src[i2];
        }
    }
    return sums;
}

ZoneProbabilities zone_probabilities(const JointDistribution& joint, int time) {
    if (time != joint.time) {
        throw std::invalid_argument("zone_probabilities: time does not match the distribution");
    }
    const ZonePairSums sums = zone_pair_sums(joint);
    const auto z = [](Zone zone) { return static_cast<int>(zone); };
    ZoneProbabilities p;
    p.p_a = sums[z(Zone::Interior)][z(Zone::Interior)];
    p.p_b = 2.0 * sums[z(Zone::Left)][z(Zone::Right)];
    p.p_c = 2.0 * sums[z(Zone::Left)][z(Zone::Left)];
    p.p_d = 4.0 * sums[z(Zone::Interior)][z(Zone::Left)];
    p.zone_boundary = (time + 1) / 3;
    return p;
}

double entropy_of_spectrum(std::span<const double> eigenvalues) {
    double entropy = 0.0;
    for (double lambda : eigenvalues) {
        if (lambda < kEigenvalueFloor) {
            throw numerical_error("density matrix eigenvalue below -1e-10; upstream unitarity is broken");
        }
        if (lambda <= 0.0) continue;  // clamped, 0 log 0 := 0
        entropy -= lambda * std::log2(lambda);
    }
    return entropy;
}

ReducedDensityMatrix reduced_density_matrix(const TwoWalkerState& state) {
    ReducedDensityMatrix reduced;
    reduced.time = state.time;

    const Eigen::MatrixXcd m = pair_matrix(state);
    reduced.matrix = m * m.adjoint();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(reduced.matrix);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("reduced_density_matrix: eigensolver failed");
    }
    // solver returns ascending order; flip to descending
    reduced.eigenvalues = solver.eigenvalues().reverse();
    reduced.orbitals = solver.eigenvectors().rowwise().reverse();
    for (int i = 0; i < reduced.eigenvalues.size(); ++i) {
        if (reduced.eigenvalues(i) < kEigenvalueFloor) {
            throw numerical_error("density matrix eigenvalue below -1e-10; upstream unitarity is broken");
        }
        if (reduced.eigenvalues(i) < 0.0) reduced.eigenvalues(i) = 0.0;
    }
    reduced.entropy =
        entropy_of_spectrum({reduced.eigenvalues.data(), static_cast<std::size_t>(reduced.eigenvalues.size())});
    return reduced;
}

double entanglement_entropy(const TwoWalkerState& state) {
    // Only rows/columns that carry weight contribute nonzero eigenvalues, and
    // at step t that is about (t+1) of the L sites, so solve the occupied
    // block instead of the full 2L x 2L matrix.
    const Eigen::MatrixXcd m = pair_matrix(state);
    std::vector<int> rows, cols;
    for (int r = 0; r < m.rows(); ++r) {
        if (m.row(r).squaredNorm() > 0.0) rows.push_back(r);
    }
    for (int c = 0; c < m.cols(); ++c) {
        if (m.col(c).squaredNorm() > 0.0) cols.push_back(c);
    }
    if (rows.empty() || cols.empty()) return 0.0;

    Eigen::MatrixXcd sub(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            sub(r, c) = m(rows[r], cols[c]);
        }
    }
    Eigen::MatrixXcd rho = sub * sub.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("entanglement_entropy: eigensolver failed");
    }
    const Eigen::VectorXd lambdas = solver.eigenvalues();
    return entropy_of_spectrum({lambdas.data(), static_cast<std::size_t>(lambdas.size())});
}

std::vector<std::pair<int, double>> entropy_series(const Trajectory& trajectory) {
    std::vector<std::pair<int, double>> series;
    series.reserve(trajectory.snapshots.size());
    for (const TwoWalkerState& state : trajectory.snapshots) {
        series.emplace_back(state.time, entanglement_entropy(state));
    }
    return series;
}

}  // namespace qwalk
