#ifndef MAGCRIT_ERRORS_HPP
#define MAGCRIT_ERRORS_HPP

#include <stdexcept>

namespace magcrit {

/// Numerical failure: integration breakdown, eigensolver non-convergence,
/// no bracketable minimum. CLI maps these to exit code 2.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failure while writing artifacts. CLI maps these to exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace magcrit

#endif
