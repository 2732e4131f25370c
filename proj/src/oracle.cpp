#include "qwalk/oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qwalk/errors.hpp"

namespace qwalk::oracle {

namespace {

constexpr int kMaxDenseSites = 15;

std::size_t basis_index(const Lattice& lattice, int s, int i1, int i2) {
    const int L = lattice.num_sites;
    return (static_cast<std::size_t>(s) * L + i1) * L + i2;
}

Eigen::Matrix4cd contact_unitary(const InteractionSpec& spec) {
    return std::visit(
        [](const auto& s) -> Eigen::Matrix4cd {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, NoInteraction>) {
                return Eigen::Matrix4cd::Identity();
            } else if constexpr (std::is_same_v<T, PhasePair>) {
                Eigen::Matrix4cd op = Eigen::Matrix4cd::Identity();
                op(0, 0) = std::polar(1.0, s.theta_plus);
                op(3, 3) = std::polar(1.0, s.theta_plus);
                op(1, 1) = std::polar(1.0, s.theta_minus);
                op(2, 2) = std::polar(1.0, s.theta_minus);
                return op;
            } else if constexpr (std::is_same_v<T, HermitianGenerator>) {
                return build_coin_unitary(s);
            } else {
                return s.matrix;
            }
        },
        spec);
}

TwoWalkerState engine_default_step(const TwoWalkerState& state, const CoinOperator& coin,
                                   const InteractionSpec& spec) {
    return interacting_step(state, coin, spec);
}

CoinVector random_coin(std::mt19937& rng) {
    std::normal_distribution<double> n;
    Complex up{n(rng), n(rng)};
    Complex down{n(rng), n(rng)};
    const double scale = 1.0 / std::sqrt(std::norm(up) + std::norm(down));
    return CoinVector{up * scale, down * scale};
}

Eigen::Matrix4cd random_unitary(std::mt19937& rng) {
    std::normal_distribution<double> n;
    Eigen::Matrix4cd a;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) a(i, j) = Complex{n(rng), n(rng)};
    }
    Eigen::HouseholderQR<Eigen::Matrix4cd> qr(a);
    Eigen::Matrix4cd q = qr.householderQ();
    const Eigen::Matrix4cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 4; ++i) {
        const Complex d = r(i, i);
        q.col(i) *= std::abs(d) > 1e-12 ? d / std::abs(d) : Complex{1.0, 0.0};
    }
    return q;
}

double compare_with(const Lattice& lattice, const CoinOperator& coin, const InteractionSpec& spec,
                    const TwoWalkerState& initial, int steps, const StepFunction& engine_step) {
    if (!(initial.lattice == lattice)) {
        throw std::invalid_argument("compare_evolutions: state built on a different lattice");
    }
    if (steps < 0 || steps > (lattice.num_sites - 3) / 2) {
        throw std::invalid_argument("compare_evolutions: support would reach the boundary");
    }
    const DenseStep dense = build_dense_step(lattice, coin, spec);
    Eigen::VectorXcd reference = flatten(initial);
    TwoWalkerState state = initial;
    for (int k = 0; k < steps; ++k) {
        reference = dense.matrix * reference;
        state = engine_step(state, coin, spec);
    }
    return (flatten(state) - reference).cwiseAbs().maxCoeff();
}

}  // namespace

DenseStep build_dense_step(const Lattice& lattice, const CoinOperator& coin,
                           const InteractionSpec& spec) {
    const int L = lattice.num_sites;
    if (L > kMaxDenseSites) {
        throw capacity_error("build_dense_step: lattice too large for the dense oracle");
    }
    if ((coin.matrix.adjoint() * coin.matrix - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("build_dense_step: coin matrix is not unitary");
    }
    const int dim = 4 * L * L;

    Eigen::Matrix4cd k4;
    for (int s = 0; s < 4; ++s) {
        for (int t = 0; t < 4; ++t) {
            k4(s, t) = coin.matrix(s >> 1, t >> 1) * coin.matrix(s & 1, t & 1);
        }
    }
    Eigen::MatrixXcd coin_full = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i1 = 0; i1 < L; ++i1) {
        for (int i2 = 0; i2 < L; ++i2) {
            for (int s = 0; s < 4; ++s) {
                for (int t = 0; t < 4; ++t) {
                    coin_full(basis_index(lattice, s, i1, i2), basis_index(lattice, t, i1, i2)) = k4(s, t);
                }
            }
        }
    }

    Eigen::MatrixXcd shift_full = Eigen::MatrixXcd::Zero(dim, dim);
    for (int s = 0; s < 4; ++s) {
        const auto pair = static_cast<SpinPair>(s);
        const int d1 = first_spin(pair) == Spin::Up ? 1 : -1;
        const int d2 = second_spin(pair) == Spin::Up ? 1 : -1;
        for (int i1 = 0; i1 < L; ++i1) {
            for (int i2 = 0; i2 < L; ++i2) {
                const int to1 = (i1 + d1 + L) % L;
                const int to2 = (i2 + d2 + L) % L;
                shift_full(basis_index(lattice, s, to1, to2), basis_index(lattice, s, i1, i2)) = 1.0;
            }
        }
    }

    Eigen::MatrixXcd contact_full = Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::Matrix4cd op = contact_unitary(spec);
    for (int i = 0; i < L; ++i) {
        for (int s = 0; s < 4; ++s) {
            for (int t = 0; t < 4; ++t) {
                contact_full(basis_index(lattice, s, i, i), basis_index(lattice, t, i, i)) = op(s, t);
            }
        }
    }

    return DenseStep{contact_full * shift_full * coin_full, lattice};
}

Eigen::VectorXcd flatten(const TwoWalkerState& state) {
    return Eigen::Map<const Eigen::VectorXcd>(state.amplitudes.data(),
                                              static_cast<Eigen::Index>(state.amplitudes.size()));
}

double compare_evolutions(const Lattice& lattice, const CoinOperator& coin,
                          const InteractionSpec& spec, const TwoWalkerState& initial, int steps) {
    return compare_with(lattice, coin, spec, initial, steps, engine_default_step);
}

std::vector<SuiteCase> suite_cases(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> offset(-1, 1);

    std::vector<SuiteCase> cases;
    auto label = [](const std::string& text, int index) {
        std::ostringstream out;
        out << "case " << index << ": " << text;
        return out.str();
    };

    // fixed reference points
    cases.push_back({"", 3, coin_plus(), coin_plus(), 0, 0, NoInteraction{}, 3});
    cases.push_back({"", 3, coin_plus(), coin_plus(), 0, 0, PhasePair{0.0, 0.0}, 3});
    cases.push_back({"", 3, coin_plus(), coin_plus(), 0, 0, PhasePair{std::numbers::pi, 0.0}, 3});
    cases.push_back({"", 1, coin_up(), coin_down(), 0, 0, PhasePair{std::numbers::pi / 2, 0.0}, 1});

    // randomized coverage: every variant at both L=5 (one step) and L=9
    for (int k = 0; k < 5; ++k) {
        const int t = k == 0 ? 1 : 3;
        cases.push_back({"", t, random_coin(rng), random_coin(rng), k == 0 ? 0 : offset(rng),
                         k == 0 ? 0 : offset(rng), NoInteraction{}, t});
    }
    for (int k = 0; k < 6; ++k) {
        const int t = k == 0 ? 1 : 3;
        cases.push_back({"", t, random_coin(rng), random_coin(rng), k == 0 ? 0 : offset(rng),
                         k == 0 ? 0 : offset(rng), PhasePair{angle(rng), angle(rng)}, t});
    }
    for (int k = 0; k < 5; ++k) {
        const int t = k == 0 ? 1 : 3;
        HermitianGenerator gen;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) gen.coefficients(i, j) = coeff(rng);
        }
        cases.push_back({"", t, random_coin(rng), random_coin(rng), k == 0 ? 0 : offset(rng),
                         k == 0 ? 0 : offset(rng), std::move(gen), t});
    }
    for (int k = 0; k < 5; ++k) {
        const int t = k == 0 ? 1 : 3;
        cases.push_back({"", t, random_coin(rng), random_coin(rng), k == 0 ? 0 : offset(rng),
                         k == 0 ? 0 : offset(rng), ExplicitCoinUnitary{random_unitary(rng)}, t});
    }

    for (std::size_t i = 0; i < cases.size(); ++i) {
        const char* kind = std::visit(
            [](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, NoInteraction>) return "none";
                else if constexpr (std::is_same_v<T, PhasePair>) return "phase";
                else if constexpr (std::is_same_v<T, HermitianGenerator>) return "hermitian";
                else return "unitary";
            },
            cases[i].spec);
        std::ostringstream text;
        text << kind << " L=" << 2 * cases[i].max_steps + 3 << " steps=" << cases[i].steps
             << " x=(" << cases[i].x1 << "," << cases[i].x2 << ")";
        if (const auto* p = std::get_if<PhasePair>(&cases[i].spec)) {
            text << " theta=(" << p->theta_plus << "," << p->theta_minus << ")";
        }
        cases[i].label = label(text.str(), static_cast<int>(i));
    }
    return cases;
}

SuiteReport run_suite(unsigned seed, const StepFunction& engine_step) {
    const StepFunction& step = engine_step ? engine_step : StepFunction(engine_default_step);
    SuiteReport report;
    for (const SuiteCase& c : suite_cases(seed)) {
        const Lattice lattice = make_lattice(c.max_steps);
        const TwoWalkerState initial =
            product_initial_state(lattice, c.coin1, c.coin2, c.x1, c.x2);
        const double deviation = compare_with(lattice, CoinOperator::hadamard(), c.spec, initial,
                                              c.steps, step);
        report.entries.push_back({c.label, deviation});
        report.max_deviation = std::max(report.max_deviation, deviation);
    }
    return report;
}

}  // namespace qwalk::oracle
