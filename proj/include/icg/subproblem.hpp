#ifndef ICG_SUBPROBLEM_HPP
#define ICG_SUBPROBLEM_HPP

#include "icg/ivm.hpp"
#include "icg/qp.hpp"

namespace icg {

/// Per-point linearization of the objective map: for each objective i the
/// componentwise sum and width of its interval gradient at x. Row i of
/// `sum` is the sum of the two interval-gradient endpoints, row i of
/// `width` their difference, so widths are nonnegative by construction.
struct LinearizationData {
    Matrix sum;    // m x n
    Matrix width;  // m x n, entrywise >= 0

    int objectives() const { return static_cast<int>(sum.rows()); }
    int dim() const { return static_cast<int>(sum.cols()); }

    static LinearizationData at(const MultiObjective& mo, const Vector& x);
};

/// Upper endpoint of the linearized objective i in direction v:
///     1/2 sum_i'v + 1/2 width_i'|v|.
double g_upper(const LinearizationData& data, int i, const Vector& v);

/// Lower endpoint, the mirror with a minus on the width term. Not used by
/// the solver path; kept for completeness and exercised in tests.
double g_lower(const LinearizationData& data, int i, const Vector& v);

/// Scalarized descent measure: max over objectives of g_upper. Negative
/// values certify that v is a descent direction at the linearization point.
double psi_phi(const LinearizationData& data, const Vector& v);

/// Solution of the direction-finding problem
///     min_v psi_phi(v) + 1/2 ||v||^2.
struct DirectionResult {
    Vector v;            // unique minimizer
    double xi = 0.0;     // optimal value, <= 0 up to solver accuracy
    double psi_at_v = 0.0;  // psi_phi at v, equals xi - 1/2 ||v||^2
    Vector multipliers;  // simplex weights on the objectives, diagnostic only
    bool multipliers_degenerate = false;
};

/// Solve the direction problem through its quadratic reformulation in the
/// variables (v, u, tau): minimize tau + 1/2||v||^2 subject to
/// sum_i'v + width_i'u <= 2 tau for each objective and -u <= v <= u.
/// After the solve, u and tau are recovered as |v| and psi_phi(v).
///
/// Throws QPInfeasible (a solver defect for this instance family) or
/// QPNotConverged.
DirectionResult solve_direction(const LinearizationData& data, const QPSolver& qp);
DirectionResult solve_direction(const MultiObjective& mo, const Vector& x, const QPSolver& qp);

/// Expose the quadratic program built by solve_direction, for debugging and
/// offline cross-checks.
QPInstance direction_qp(const LinearizationData& data);

/// Independent check of solve_direction that never touches the QP solver.
///
/// For fixed simplex weights over the objectives, the inner minimizer of the
/// weighted linearization plus 1/2||v||^2 is a componentwise soft-threshold;
/// the resulting concave dual value is maximized over a dense simplex grid,
/// followed by grid refinement around the incumbent. `dual_unique`, when
/// given, reports whether the base grid's near-optimal weights all map to the
/// same minimizer (ties make v ill-determined even though the value is not).
DirectionResult oracle_direction(const LinearizationData& data, int grid_density,
                                 bool* dual_unique = nullptr);

/// Stopping test: true iff res.xi > -eps.
bool is_pareto_critical(const DirectionResult& res, double eps);

}  // namespace icg

#endif
