#pragma once

namespace qwalk {

enum class Spin : int { Up = 0, Down = 1 };

// Joint coin basis of the two walkers. The index map is fixed project-wide:
// UpUp=0, UpDown=1, DownUp=2, DownDown=3, i.e. walker 1 owns the high bit.
enum class SpinPair : int { UpUp = 0, UpDown = 1, DownUp = 2, DownDown = 3 };

inline constexpr int kSpinPairCount = 4;

constexpr Spin first_spin(SpinPair s) { return static_cast<Spin>(static_cast<int>(s) >> 1); }
constexpr Spin second_spin(SpinPair s) { return static_cast<Spin>(static_cast<int>(s) & 1); }
constexpr SpinPair make_spin_pair(Spin a, Spin b) {
    return static_cast<SpinPair>((static_cast<int>(a) << 1) | static_cast<int>(b));
}
constexpr SpinPair exchanged(SpinPair s) { return make_spin_pair(second_spin(s), first_spin(s)); }

// Finite window of the infinite line. Site index i and coordinate
// x = i - origin_index are a bijection on [0, num_sites). The window has a
// one-site guard band per edge: a walk of max_steps steps started at x = 0
// never touches the outermost sites.
struct Lattice {
    int num_sites = 0;     // L, odd
    int origin_index = 0;  // site index of x = 0
    int max_steps = 0;     // number of time steps this window supports

    constexpr int coordinate(int site_index) const { return site_index - origin_index; }
    constexpr int site_of(int x) const { return x + origin_index; }
    constexpr int min_coordinate() const { return -origin_index; }
    constexpr int max_coordinate() const { return num_sites - 1 - origin_index; }
    constexpr bool contains(int x) const { return x >= min_coordinate() && x <= max_coordinate(); }

    friend bool operator==(const Lattice&, const Lattice&) = default;
};

// L = 2*max_steps + 3: the 2t+1 support segment plus guard sites.
Lattice make_lattice(int max_steps);

}  // namespace qwalk
