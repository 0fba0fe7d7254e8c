#ifndef ICG_QP_HPP
#define ICG_QP_HPP

#include <Eigen/Core>
#include <iosfwd>

#include "icg/ivm.hpp"

namespace icg {

/// Dense convex quadratic program
///     minimize   1/2 z'Qz + c'z
///     subject to Az <= b
/// with Q symmetric positive semidefinite. A may have zero rows.
struct QPInstance {
    Matrix Q;
    Vector c;
    Matrix A;
    Vector b;

    int dim() const { return static_cast<int>(Q.rows()); }
    int constraints() const { return static_cast<int>(A.rows()); }

    /// Throws on inconsistent dimensions, asymmetry beyond 1e-12, or
    /// non-finite entries (NumericalBreakdown).
    void validate() const;
};

enum class QPStatus { Solved, MaxIter, Infeasible };

struct QPSolution {
    Vector z;
    double objective = 0.0;
    Vector duals;  // one per constraint row, >= 0 up to tolerance
    QPStatus status = QPStatus::MaxIter;
    int iterations = 0;
    // KKT residuals of the returned point.
    double stationarity = 0.0;   // ||Qz + c + A'duals||_inf
    double feasibility = 0.0;    // max(Az - b, 0) in the inf norm
    double complementarity = 0.0;  // |duals'(Az - b)|
};

/// Operator-splitting solver for the instance family above.
///
/// The iteration alternates a regularized linear solve in z with a
/// projection of the constraint image onto {y <= b}, using over-relaxation
/// and a penalty parameter that is rescaled every `rescale_every` iterations
/// from the primal/dual residual ratio. Once the iterate is roughly
/// converged, an equality-constrained solve on the detected active set
/// polishes the point to high accuracy; the polished point is kept only when
/// it improves the KKT residuals.
///
/// Deterministic: a fixed schedule and no randomization, so equal instances
/// and options produce bitwise-equal results.
class QPSolver {
public:
    struct Options {
        double tol = 1e-9;
        int max_iter = 20000;
        double rho = 0.1;          // initial penalty parameter
        double over_relax = 1.6;
        int rescale_every = 25;
        double reg = 1e-10;        // diagonal regularization of the Q block
    };

    QPSolver() = default;
    explicit QPSolver(Options opts) : opts_(opts) {}

    const Options& options() const { return opts_; }

    /// All per-solve workspace is local, so one solver instance may be used
    /// from several threads as long as each call gets its own stack.
    QPSolution solve(const QPInstance& inst) const;

    /// Plain-text dump of (Q, c, A, b) for offline cross-checking.
    static void dump(const QPInstance& inst, std::ostream& os);

private:
    Options opts_;
};

}  // namespace icg

#endif
