#ifndef ICG_ERRORS_HPP
#define ICG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace icg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Interval constructed with lo > hi, or an objective evaluated to an
// inverted endpoint pair.
struct InvalidInterval : Error {
    using Error::Error;
};

struct EndpointOrderViolation : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// The direction QP reported an infeasible status. The instances built by the
// direction subproblem always admit v = u = 0, tau = 0, so this signals a
// solver defect rather than a bad problem.
struct QPInfeasible : Error {
    using Error::Error;
};

struct QPNotConverged : Error {
    using Error::Error;
};

struct NumericalBreakdown : Error {
    using Error::Error;
};

struct NotDescentDirection : Error {
    using Error::Error;
};

struct UnknownProblem : Error {
    using Error::Error;
};

// Conjugate-parameter denominator below threshold; the caller restarts the
// direction with beta = 0.
struct DegenerateDenominator : Error {
    using Error::Error;
};

}  // namespace icg

#endif
