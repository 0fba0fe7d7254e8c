#ifndef ICG_CG_HPP
#define ICG_CG_HPP

#include <string>
#include <vector>

#include "icg/linesearch.hpp"
#include "icg/qp.hpp"
#include "icg/subproblem.hpp"

namespace icg {

enum class BetaKind { SD, FR, CD, DY, mDY };

/// Choice of the conjugate parameter. `scale` is the fraction multiplying
/// the raw FR/CD/DY formula (must stay within [0,1] for the descent
/// guarantees); mDY and SD ignore it. `zeta` (> 1) only applies to mDY.
struct BetaVariant {
    BetaKind kind = BetaKind::SD;
    double scale = 1.0;
    double zeta = 1.03;

    std::string name() const;

    /// Parse "sd", "fr", "cd", "dy", "mdy"; unknown names throw
    /// std::invalid_argument. The scaled variants default to the benchmark
    /// fractions 0.98 / 0.89 / 0.81.
    static BetaVariant parse(const std::string& text);

    static BetaVariant sd() { return {BetaKind::SD, 1.0, 1.03}; }
    static BetaVariant fr(double scale = 0.98) { return {BetaKind::FR, scale, 1.03}; }
    static BetaVariant cd(double scale = 0.89) { return {BetaKind::CD, scale, 1.03}; }
    static BetaVariant dy(double scale = 0.81) { return {BetaKind::DY, scale, 1.03}; }
    static BetaVariant mdy(double zeta = 1.03) { return {BetaKind::mDY, 1.0, zeta}; }
};

/// Scalars feeding the conjugate-parameter formulas at iteration k >= 1:
/// the descent measures of the two most recent steepest directions at their
/// own points, and of the previous conjugate direction at the current and
/// previous points.
struct BetaState {
    double psi_v_cur;
    double psi_v_prev;
    double psi_d_prev_cur;
    double psi_d_prev_prev;
};

/// Raw conjugate parameter for the variant (scaled where applicable).
/// Throws DegenerateDenominator when |denominator| <= 1e-14; the caller is
/// expected to restart with beta = 0.
double beta(const BetaVariant& variant, const BetaState& state);

/// Clamp the parameter into the interval that preserves sufficient descent:
/// any nonnegative value when psi_d_prev <= 0, otherwise
/// [0, -mu * psi_v / psi_d_prev].
double safeguard_clamp(double beta_raw, double mu, double psi_v, double psi_d_prev);

/// d_k = v_k for k = 0, v_k + beta_k * d_prev for k >= 1.
Vector direction_update(const Vector& v_k, double beta_k, const Vector& d_prev, int k);

enum class Safeguard { None, DescentClamp };

struct SolverConfig {
    double rho = 1e-3;
    double sigma = 0.1;
    double eps = 1e-6;  // criticality tolerance
    int max_iter = 10000;
    BetaVariant variant{};
    WolfeMode wolfe_mode = WolfeMode::Strong;
    Safeguard safeguard = Safeguard::None;
    double safeguard_mu = 0.5;
    bool restart_on_nondescent = true;
    double t_init = 1.0;
    double t_max = 1e6;
    int max_brackets = 60;
    int max_zoom = 60;
    int max_evals = 5000;
    QPSolver::Options qp{};

    void validate() const;
    WolfeParams wolfe() const;
};

enum class RunStatus { Critical, MaxIter, LineSearchFail };

std::string to_string(RunStatus status);

/// Full trace of one solver run.
struct RunRecord {
    std::vector<Vector> iterates;  // x_0 through the final point

    std::vector<double> xi_trace;
    std::vector<double> psi_v_trace;
    std::vector<double> norm_v_trace;
    std::vector<double> psi_d_trace;
    std::vector<double> beta_trace;
    std::vector<double> step_trace;
    std::vector<double> descent_ratio_trace;  // psi(d_k) / psi(v_k)
    std::vector<double> zoutendijk_increments;  // psi(d_k)^2 / ||d_k||^2
    std::vector<char> wolfe_both;  // per accepted step

    RunStatus status = RunStatus::MaxIter;
    WolfeMode wolfe_mode = WolfeMode::Strong;  // mode the run used
    int iterations = 0;  // accepted steps
    double final_xi = 0.0;
    double wall_time = 0.0;  // seconds, the solve call only
    long func_evals = 0;
    long grad_evals = 0;
    int restarts = 0;  // direction resets of any kind
    int denominator_violations = 0;  // positivity failures under strong Wolfe
    double inv_dir_norm_sum = 0.0;   // running sum of 1 / ||d_k||^2, logged only

    /// JSON document with the scalar summary and per-iteration traces.
    std::string json() const;
};

/// Conjugate-gradient iteration: direction problem, conjugate update with
/// restarts, Wolfe step, criticality stopping test.
RunRecord run(const MultiObjective& mo, const Vector& x0, const SolverConfig& cfg);

}  // namespace icg

#endif
