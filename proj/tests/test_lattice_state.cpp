#include <doctest.h>

#include <numbers>

#include "qwalk/errors.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/state.hpp"
#include "reference_walk.hpp"

using namespace qwalk;

TEST_CASE("make_lattice sizes the window from the step budget") {
    const Lattice small = make_lattice(1);
    CHECK(small.num_sites == 5);
    CHECK(small.origin_index == 2);
    CHECK(small.max_steps == 1);

    const Lattice desk = make_lattice(100);
    CHECK(desk.num_sites == 203);
    CHECK(desk.origin_index == 101);

    CHECK(make_lattice(3).coordinate(0) == -4);
    CHECK(make_lattice(3).site_of(-4) == 0);

    CHECK_THROWS_AS(make_lattice(0), std::invalid_argument);
    CHECK_THROWS_AS(make_lattice(-5), std::invalid_argument);
    CHECK_THROWS_AS(make_lattice(2'000'000'000), std::invalid_argument);
}

TEST_CASE("spin pair index map is fixed") {
    CHECK(static_cast<int>(SpinPair::UpUp) == 0);
    CHECK(static_cast<int>(SpinPair::UpDown) == 1);
    CHECK(static_cast<int>(SpinPair::DownUp) == 2);
    CHECK(static_cast<int>(SpinPair::DownDown) == 3);
    CHECK(make_spin_pair(Spin::Up, Spin::Down) == SpinPair::UpDown);
    CHECK(exchanged(SpinPair::UpDown) == SpinPair::DownUp);
    CHECK(exchanged(SpinPair::DownDown) == SpinPair::DownDown);
}

TEST_CASE("product initial state is the tensor product of the coins") {
    const Lattice lattice = make_lattice(2);

    SUBCASE("balanced coins at the origin") {
        const TwoWalkerState state = product_initial_state(lattice, coin_plus(), coin_plus(), 0, 0);
        CHECK(state.time == 0);
        CHECK(std::abs(state.amp_at(SpinPair::UpUp, 0, 0) - Complex{0.5, 0.0}) < 1e-15);
        CHECK(std::abs(state.amp_at(SpinPair::UpDown, 0, 0) - Complex{0.0, 0.5}) < 1e-15);
        CHECK(std::abs(state.amp_at(SpinPair::DownUp, 0, 0) - Complex{0.0, 0.5}) < 1e-15);
        CHECK(std::abs(state.amp_at(SpinPair::DownDown, 0, 0) - Complex{-0.5, 0.0}) < 1e-15);
        CHECK(norm_squared(state) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("basis coins give a single basis amplitude") {
        const TwoWalkerState state = product_initial_state(lattice, coin_up(), coin_down(), 1, -1);
        CHECK(state.amp_at(SpinPair::UpDown, 1, -1) == Complex{1.0, 0.0});
        int nonzero = 0;
        for (const Complex& a : state.amplitudes) {
            if (a != Complex{0.0, 0.0}) ++nonzero;
        }
        CHECK(nonzero == 1);
    }

    SUBCASE("rejects bad input") {
        CHECK_THROWS_AS(product_initial_state(lattice, CoinVector{{0.9, 0.0}, {0.0, 0.0}},
                                              coin_plus(), 0, 0),
                        std::invalid_argument);
        CHECK_THROWS_AS(product_initial_state(lattice, coin_plus(), coin_plus(), 99, 0),
                        std::invalid_argument);
    }
}

TEST_CASE("norm_squared") {
    const Lattice lattice = make_lattice(1);
    const TwoWalkerState fresh = product_initial_state(lattice, coin_plus(), coin_plus(), 0, 0);
    CHECK(norm_squared(fresh) == doctest::Approx(1.0).epsilon(1e-14));

    TwoWalkerState zeroed = fresh;
    zeroed.amplitudes.assign(zeroed.amplitudes.size(), Complex{0.0, 0.0});
    CHECK(norm_squared(zeroed) == 0.0);
}

TEST_CASE("norm is conserved over long interleaved evolutions") {
    const Lattice lattice = make_lattice(100);
    const TwoWalkerState initial = product_initial_state(lattice, coin_plus(), coin_plus(), 0, 0);
    TwoWalkerState state = initial;
    const CoinOperator coin = CoinOperator::hadamard();
    const InteractionSpec spec = PhasePair{0.9, 0.3};
    for (int t = 0; t < 100; ++t) {
        state = interacting_step(state, coin, spec);
    }
    CHECK(std::abs(norm_squared(state) - 1.0) <= 1e-12);
}

TEST_CASE("support, parity, and exchange symmetry hold step by step") {
    const Lattice lattice = make_lattice(12);
    TwoWalkerState state = product_initial_state(lattice, coin_plus(), coin_plus(), 0, 0);
    const CoinOperator coin = CoinOperator::hadamard();
    const InteractionSpec spec = PhasePair{std::numbers::pi, 0.0};
    for (int t = 0; t < 12; ++t) {
        state = interacting_step(state, coin, spec);
        CHECK(qwalk_test::support_and_parity_exact(state));
        CHECK(qwalk_test::exchange_asymmetry(state) <= 1e-12);
    }
}

TEST_CASE("asymmetric starts break no invariants except exchange") {
    const Lattice lattice = make_lattice(6);
    TwoWalkerState state = product_initial_state(lattice, coin_up(), coin_plus(), 0, 0);
    const CoinOperator coin = CoinOperator::hadamard();
    for (int t = 0; t < 6; ++t) {
        state = interacting_step(state, coin, PhasePair{1.2, 0.0});
        CHECK(qwalk_test::support_and_parity_exact(state));
        CHECK(std::abs(norm_squared(state) - 1.0) <= 1e-12);
    }
}
