#include "qwalk/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qwalk {

namespace {
constexpr double kCoinNormTolerance = 1e-9;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

CoinVector coin_plus() { return CoinVector{{kInvSqrt2, 0.0}, {0.0, kInvSqrt2}}; }
CoinVector coin_up() { return CoinVector{{1.0, 0.0}, {0.0, 0.0}}; }
CoinVector coin_down() { return CoinVector{{0.0, 0.0}, {1.0, 0.0}}; }

TwoWalkerState product_initial_state(const Lattice& lattice, const CoinVector& coin1,
                                     const CoinVector& coin2, int x1, int x2) {
    if (lattice.num_sites < 3) {
        throw std::invalid_argument("product_initial_state: invalid lattice");
    }
    for (const CoinVector* coin : {&coin1, &coin2}) {
        if (std::abs(coin->norm_squared() - 1.0) > kCoinNormTolerance) {
            throw std::invalid_argument("product_initial_state: coin is not normalized");
        }
    }
    if (!lattice.contains(x1) || !lattice.contains(x2)) {
        throw std::invalid_argument("product_initial_state: start site outside the lattice (|x| <= max_steps+1)");
    }

    TwoWalkerState state{lattice, 0, {}};
    state.amplitudes.assign(kSpinPairCount * state.plane_size(), Complex{0.0, 0.0});

    const int site1 = lattice.site_of(x1);
    const int site2 = lattice.site_of(x2);
    const Complex c1[2] = {coin1.up, coin1.down};
    const Complex c2[2] = {coin2.up, coin2.down};
    for (int s = 0; s < kSpinPairCount; ++s) {
        const auto pair = static_cast<SpinPair>(s);
        state.amplitudes[state.flat(pair, site1, site2)] =
            c1[static_cast<int>(first_spin(pair))] * c2[static_cast<int>(second_spin(pair))];
    }
    return state;
}

double norm_squared(const TwoWalkerState& state) {
    double total = 0.0;
    for (const Complex& a : state.amplitudes) {
        total += std::norm(a);
    }
    return total;
}

}  // namespace qwalk
