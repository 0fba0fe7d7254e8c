#ifndef ICG_LINESEARCH_HPP
#define ICG_LINESEARCH_HPP

#include <vector>

#include "icg/subproblem.hpp"

namespace icg {

enum class WolfeMode { Standard, Strong };

struct WolfeParams {
    double rho = 1e-3;   // sufficient-decrease coefficient
    double sigma = 0.1;  // curvature coefficient, rho < sigma < 1
    WolfeMode mode = WolfeMode::Strong;
    double t_init = 1.0;
    double t_max = 1e6;
    int max_brackets = 60;
    int max_zoom = 60;
    int max_evals = 5000;

    void validate() const;  // throws std::invalid_argument
};

enum class WolfeStatus { Both, DecreaseOnly, Failed };

struct LineSearchOutcome {
    double t = 0.0;
    int evals = 0;  // trial points examined
    WolfeStatus satisfied = WolfeStatus::Failed;
    double psi_at_t = 0.0;  // descent measure of d at x + t d
};

/// One row per trial step, for optional debugging output.
struct LineSearchTrace {
    struct Entry {
        double t;
        double decrease_gap;  // positive means sufficient decrease fails
        double psi;
    };
    std::vector<Entry> entries;
};

/// Sufficient decrease at step t: every objective's endpoints drop by at
/// least rho * t * psi0, where psi0 = psi_phi at the base point (negative).
bool sufficient_decrease_holds(const MultiObjective& mo, const Vector& x, const Vector& d,
                               double t, double rho, double psi0);

/// Curvature at step t. Standard mode requires the descent measure to rise
/// to at least sigma * psi0; Strong mode requires its magnitude to shrink to
/// at most sigma * |psi0|.
bool curvature_holds(const MultiObjective& mo, const Vector& x, const Vector& d, double t,
                     double sigma, double psi0, WolfeMode mode);

/// Bracket-and-zoom search for a step satisfying both Wolfe conditions.
/// Bracketing doubles the trial step until the decrease test fails, the
/// descent measure turns nonnegative, or the merit stops improving; the zoom
/// phase bisects. When the budgets run out, the last step with sufficient
/// decrease is returned as DecreaseOnly so the caller can fall back.
///
/// Throws NotDescentDirection when psi_phi(x, d) >= 0.
LineSearchOutcome search(const MultiObjective& mo, const Vector& x, const Vector& d,
                         const WolfeParams& params, LineSearchTrace* trace = nullptr);

}  // namespace icg

#endif
