#include "icg/cg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <json.hpp>
#include <stdexcept>

#include "icg/errors.hpp"

namespace icg {

std::string BetaVariant::name() const {
    switch (kind) {
        case BetaKind::SD: return "sd";
        case BetaKind::FR: return "fr";
        case BetaKind::CD: return "cd";
        case BetaKind::DY: return "dy";
        case BetaKind::mDY: return "mdy";
    }
    return "?";
}

BetaVariant BetaVariant::parse(const std::string& text) {
    if (text == "sd") return sd();
    if (text == "fr") return fr();
    if (text == "cd") return cd();
    if (text == "dy") return dy();
    if (text == "mdy") return mdy();
    throw std::invalid_argument("unknown variant '" + text + "' (expected sd|fr|cd|dy|mdy)");
}

double beta(const BetaVariant& variant, const BetaState& state) {
    auto guarded = [](double num, double den) {
        if (std::abs(den) <= 1e-14) {
            throw DegenerateDenominator("conjugate parameter denominator " +
                                        std::to_string(den));
        }
        return num / den;
    };
    switch (variant.kind) {
        case BetaKind::SD:
            return 0.0;
        case BetaKind::FR:
            return variant.scale * guarded(state.psi_v_cur, state.psi_v_prev);
        case BetaKind::CD:
            return variant.scale * guarded(state.psi_v_cur, state.psi_d_prev_prev);
        case BetaKind::DY:
            return variant.scale *
                   guarded(-state.psi_v_cur, state.psi_d_prev_cur - state.psi_d_prev_prev);
        case BetaKind::mDY:
            return guarded(-state.psi_v_cur,
                           state.psi_d_prev_cur - variant.zeta * state.psi_d_prev_prev);
    }
    return 0.0;
}

double safeguard_clamp(double beta_raw, double mu, double psi_v, double psi_d_prev) {
    if (psi_d_prev <= 0) return std::max(beta_raw, 0.0);
    const double upper = -mu * psi_v / psi_d_prev;
    return std::clamp(beta_raw, 0.0, upper);
}

Vector direction_update(const Vector& v_k, double beta_k, const Vector& d_prev, int k) {
    if (k == 0) return v_k;
    if (v_k.size() != d_prev.size()) {
        throw DimensionMismatch("direction_update: dimension disagreement");
    }
    return v_k + beta_k * d_prev;
}

void SolverConfig::validate() const {
    if (!(0 < rho && rho < sigma && sigma < 1)) {
        throw std::invalid_argument("solver config requires 0 < rho < sigma < 1");
    }
    if (!(eps > 0)) throw std::invalid_argument("solver config requires eps > 0");
    if (max_iter < 0) throw std::invalid_argument("solver config requires max_iter >= 0");
    if (variant.kind != BetaKind::mDY && variant.kind != BetaKind::SD &&
        !(variant.scale >= 0 && variant.scale <= 1)) {
        throw std::invalid_argument("variant scale must lie in [0,1]");
    }
    if (variant.kind == BetaKind::mDY && !(variant.zeta > 1)) {
        throw std::invalid_argument("mdy requires zeta > 1");
    }
    if (!(safeguard_mu >= 0 && safeguard_mu < 1)) {
        throw std::invalid_argument("safeguard mu must lie in [0,1)");
    }
}

WolfeParams SolverConfig::wolfe() const {
    WolfeParams w;
    w.rho = rho;
    w.sigma = sigma;
    w.mode = wolfe_mode;
    w.t_init = t_init;
    w.t_max = t_max;
    w.max_brackets = max_brackets;
    w.max_zoom = max_zoom;
    w.max_evals = max_evals;
    return w;
}

std::string to_string(RunStatus status) {
    switch (status) {
        case RunStatus::Critical: return "critical";
        case RunStatus::MaxIter: return "max_iter";
        case RunStatus::LineSearchFail: return "linesearch_fail";
    }
    return "?";
}

RunRecord run(const MultiObjective& mo, const Vector& x0, const SolverConfig& cfg) {
    cfg.validate();
    const auto started = std::chrono::steady_clock::now();
    const int m = mo.size();
    const QPSolver qp(cfg.qp);
    const WolfeParams wolfe = cfg.wolfe();

    RunRecord rec;
    rec.wolfe_mode = cfg.wolfe_mode;
    rec.iterates.push_back(x0);

    Vector x = x0;
    Vector d_prev;
    double psi_v_prev = 0.0;
    double psi_d_prev_prev = 0.0;  // measure of d_prev at its own point
    double psi_d_prev_cur = 0.0;   // measure of d_prev at the current point
    bool prev_step_strong = false;
    bool have_prev = false;

    while (true) {
        const LinearizationData lin = LinearizationData::at(mo, x);
        rec.grad_evals += m;
        const DirectionResult dir = solve_direction(lin, qp);
        rec.xi_trace.push_back(dir.xi);
        rec.psi_v_trace.push_back(dir.psi_at_v);
        rec.norm_v_trace.push_back(dir.v.norm());
        rec.final_xi = dir.xi;

        if (dir.xi > -cfg.eps) {
            rec.status = RunStatus::Critical;
            break;
        }
        if (rec.iterations >= cfg.max_iter) {
            rec.status = RunStatus::MaxIter;
            break;
        }

        double beta_k = 0.0;
        Vector d = dir.v;
        double psi_d = dir.psi_at_v;
        if (have_prev) {
            const BetaState state{dir.psi_at_v, psi_v_prev, psi_d_prev_cur, psi_d_prev_prev};
            const bool dy_like =
                cfg.variant.kind == BetaKind::DY || cfg.variant.kind == BetaKind::mDY;
            if (dy_like && psi_d_prev_prev < 0 && prev_step_strong &&
                cfg.wolfe_mode == WolfeMode::Strong) {
                const double zeta = cfg.variant.kind == BetaKind::mDY ? cfg.variant.zeta : 1.0;
                if (state.psi_d_prev_cur - zeta * state.psi_d_prev_prev <= 0) {
                    ++rec.denominator_violations;
                }
            }
            double beta_raw = 0.0;
            try {
                beta_raw = beta(cfg.variant, state);
            } catch (const DegenerateDenominator&) {
                beta_raw = 0.0;
                ++rec.restarts;
            }
            beta_k = cfg.safeguard == Safeguard::DescentClamp
                         ? safeguard_clamp(beta_raw, cfg.safeguard_mu, dir.psi_at_v,
                                           state.psi_d_prev_cur)
                         : beta_raw;
            if (beta_k != 0.0) {
                d = direction_update(dir.v, beta_k, d_prev, rec.iterations);
                psi_d = psi_phi(lin, d);
            }
        }

        // Rounding can hand the conjugate update a non-descent direction
        // even though the theory forbids it; fall back to the steepest one.
        if (psi_d >= 0 && beta_k != 0.0 && cfg.restart_on_nondescent) {
            d = dir.v;
            beta_k = 0.0;
            psi_d = dir.psi_at_v;
            ++rec.restarts;
        }
        if (psi_d >= 0) {
            throw NotDescentDirection(
                "steepest direction is not a descent direction while xi < -eps");
        }

        LineSearchOutcome step = search(mo, x, d, wolfe);
        rec.func_evals += static_cast<long>(m) * (step.evals + 1);
        rec.grad_evals += static_cast<long>(m) * step.evals;
        if (step.satisfied == WolfeStatus::Failed && beta_k != 0.0) {
            d = dir.v;
            beta_k = 0.0;
            psi_d = dir.psi_at_v;
            ++rec.restarts;
            step = search(mo, x, d, wolfe);
            rec.func_evals += static_cast<long>(m) * (step.evals + 1);
            rec.grad_evals += static_cast<long>(m) * step.evals;
        }
        if (step.satisfied == WolfeStatus::Failed) {
            rec.status = RunStatus::LineSearchFail;
            break;
        }

        rec.beta_trace.push_back(beta_k);
        rec.psi_d_trace.push_back(psi_d);
        rec.descent_ratio_trace.push_back(psi_d / dir.psi_at_v);
        rec.zoutendijk_increments.push_back(psi_d * psi_d / d.squaredNorm());
        rec.inv_dir_norm_sum += 1.0 / d.squaredNorm();
        rec.step_trace.push_back(step.t);
        rec.wolfe_both.push_back(step.satisfied == WolfeStatus::Both ? 1 : 0);

        x += step.t * d;
        rec.iterates.push_back(x);
        ++rec.iterations;

        psi_v_prev = dir.psi_at_v;
        d_prev = d;
        psi_d_prev_prev = psi_d;
        psi_d_prev_cur = step.psi_at_t;
        prev_step_strong = step.satisfied == WolfeStatus::Both;
        have_prev = true;
    }

    rec.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

std::string RunRecord::json() const {
    nlohmann::json doc;
    doc["status"] = to_string(status);
    doc["iterations"] = iterations;
    doc["final_xi"] = final_xi;
    doc["wall_time_s"] = wall_time;
    doc["func_evals"] = func_evals;
    doc["grad_evals"] = grad_evals;
    doc["restarts"] = restarts;
    doc["denominator_violations"] = denominator_violations;
    doc["inv_dir_norm_sum"] = inv_dir_norm_sum;
    doc["wolfe_mode"] = wolfe_mode == WolfeMode::Strong ? "strong" : "standard";
    if (wolfe_mode == WolfeMode::Strong) {
        // The curvature test bounds |psi| from above along the step.
        doc["strong_wolfe_orientation"] = "magnitude_shrinks";
    }

    nlohmann::json trace = nlohmann::json::array();
    for (std::size_t k = 0; k < xi_trace.size(); ++k) {
        trace.push_back({{"k", k},
                         {"xi", xi_trace[k]},
                         {"psi_at_v", psi_v_trace[k]},
                         {"norm_v", norm_v_trace[k]}});
    }
    doc["trace"] = trace;
    doc["beta"] = beta_trace;
    doc["step"] = step_trace;
    doc["psi_d"] = psi_d_trace;
    doc["descent_ratio"] = descent_ratio_trace;
    doc["zoutendijk"] = zoutendijk_increments;

    if (!iterates.empty()) {
        doc["x0"] = std::vector<double>(iterates.front().data(),
                                        iterates.front().data() + iterates.front().size());
        doc["x_final"] = std::vector<double>(iterates.back().data(),
                                             iterates.back().data() + iterates.back().size());
    }
    return doc.dump(2);
}

}  // namespace icg
