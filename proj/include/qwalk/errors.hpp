#pragma once

#include <stdexcept>

namespace qwalk {

// Requested evolution would exceed the step budget the lattice was sized for.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical invariant broke down (e.g. a genuinely negative eigenvalue of a
// density matrix), signalling a bug upstream rather than bad user input.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qwalk
