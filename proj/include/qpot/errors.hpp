#pragma once

#include <stdexcept>
#include <string>

namespace qpot {

// Input violates a documented precondition (bad matrix symmetry, bad grid
// size, infeasible boundary data, ...).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An iterative solver failed to reach its tolerance within the sweep cap, or a
// spectral pairing check failed.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The requested computation is outside what the discretization can represent
// (for example a measure too concentrated for the grid).
struct OutOfModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qpot
