#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qwalk/lattice.hpp"

namespace qwalk {

using Complex = std::complex<double>;

struct CoinVector {
    Complex up{1.0, 0.0};
    Complex down{0.0, 0.0};

    double norm_squared() const { return std::norm(up) + std::norm(down); }
};

// (|up> + i|down>)/sqrt(2), the balanced coin used throughout.
CoinVector coin_plus();
CoinVector coin_up();
CoinVector coin_down();

// Dense two-walker wave function on the lattice window. Storage order is
// [spin-pair][x1-site][x2-site], flat index (s*L + i1)*L + i2, so the
// on-contact diagonal x1 = x2 and the coin mixing are both stride-friendly.
// States are value objects: stepping operations return a new state.
struct TwoWalkerState {
    Lattice lattice;
    int time = 0;
    std::vector<Complex> amplitudes;  // size 4 * L * L

    std::size_t plane_size() const {
        return static_cast<std::size_t>(lattice.num_sites) * lattice.num_sites;
    }
    std::size_t flat(SpinPair s, int site1, int site2) const {
        return (static_cast<std::size_t>(s) * lattice.num_sites + site1) * lattice.num_sites + site2;
    }
    Complex amp(SpinPair s, int site1, int site2) const { return amplitudes[flat(s, site1, site2)]; }
    // by coordinates rather than site indices
    Complex amp_at(SpinPair s, int x1, int x2) const {
        return amp(s, lattice.site_of(x1), lattice.site_of(x2));
    }
};

// Psi(s1,s2; x1,x2; 0) = coin1[s1] * coin2[s2] * delta(x1) * delta(x2) around
// the requested start sites. Coins must be normalized to 1e-9.
TwoWalkerState product_initial_state(const Lattice& lattice, const CoinVector& coin1,
                                     const CoinVector& coin2, int x1, int x2);

double norm_squared(const TwoWalkerState& state);

}  // namespace qwalk
