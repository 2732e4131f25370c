#include "qwalk/lattice.hpp"

#include <limits>
#include <stdexcept>

namespace qwalk {

Lattice make_lattice(int max_steps) {
    if (max_steps < 1) {
        throw std::invalid_argument("make_lattice: max_steps must be at least 1");
    }
    if (max_steps > (std::numeric_limits<int>::max() - 3) / 2) {
        throw std::invalid_argument("make_lattice: max_steps too large for site indexing");
    }
    const int num_sites = 2 * max_steps + 3;
    return Lattice{num_sites, (num_sites - 1) / 2, max_steps};
}

}  // namespace qwalk
