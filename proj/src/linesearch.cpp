#include "icg/linesearch.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "icg/errors.hpp"

namespace icg {

void WolfeParams::validate() const {
    if (!(0 < rho && rho < sigma && sigma < 1)) {
        throw std::invalid_argument("wolfe parameters must satisfy 0 < rho < sigma < 1");
    }
    if (!(t_init > 0) || !(t_max >= t_init)) {
        throw std::invalid_argument("wolfe step bounds must satisfy 0 < t_init <= t_max");
    }
}

namespace {

struct Probe {
    double decrease_gap;  // A(t); <= 0 iff sufficient decrease holds
    double psi;           // descent measure of d at x + t d
};

// Evaluates both Wolfe quantities at one trial step. The 2m endpoint
// inequalities of the decrease test collapse into one scalar gap without
// changing their meaning.
class RayEvaluator {
public:
    RayEvaluator(const MultiObjective& mo, const Vector& x, const Vector& d, double rho,
                 double psi0, LineSearchTrace* trace)
        : mo_(mo), x_(x), d_(d), rho_(rho), psi0_(psi0), trace_(trace) {
        base_.reserve(mo.size());
        for (const auto& f : mo_.objectives) base_.push_back(eval(f, x));
    }

    Probe at(double t) {
        const Vector xt = x_ + t * d_;
        double gap = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < mo_.size(); ++i) {
            const Interval gi = eval(mo_.objectives[i], xt);
            const double allowance = rho_ * t * psi0_;
            gap = std::max(gap, gi.lo() - base_[i].lo() - allowance);
            gap = std::max(gap, gi.hi() - base_[i].hi() - allowance);
        }
        const double psi = psi_phi(LinearizationData::at(mo_, xt), d_);
        if (trace_ != nullptr) trace_->entries.push_back({t, gap, psi});
        return {gap, psi};
    }

private:
    const MultiObjective& mo_;
    const Vector& x_;
    const Vector& d_;
    double rho_;
    double psi0_;
    LineSearchTrace* trace_;
    std::vector<Interval> base_;
};

bool curvature_ok(double psi_t, double psi0, double sigma, WolfeMode mode) {
    if (mode == WolfeMode::Standard) return psi_t >= sigma * psi0;
    return std::abs(psi_t) <= sigma * std::abs(psi0);
}

// In Strong mode the descent measure overshot past the acceptance band; the
// step is beyond every acceptable point.
bool overshoots(double psi_t, double psi0, double sigma, WolfeMode mode) {
    return mode == WolfeMode::Strong && psi_t > sigma * std::abs(psi0);
}

}  // namespace

bool sufficient_decrease_holds(const MultiObjective& mo, const Vector& x, const Vector& d,
                               double t, double rho, double psi0) {
    const Vector xt = x + t * d;
    for (const auto& f : mo.objectives) {
        const Interval before = eval(f, x);
        const Interval after = eval(f, xt);
        const double allowance = rho * t * psi0;
        if (!(after.lo() <= before.lo() + allowance)) return false;
        if (!(after.hi() <= before.hi() + allowance)) return false;
    }
    return true;
}

bool curvature_holds(const MultiObjective& mo, const Vector& x, const Vector& d, double t,
                     double sigma, double psi0, WolfeMode mode) {
    const double psi_t = psi_phi(LinearizationData::at(mo, x + t * d), d);
    return curvature_ok(psi_t, psi0, sigma, mode);
}

LineSearchOutcome search(const MultiObjective& mo, const Vector& x, const Vector& d,
                         const WolfeParams& params, LineSearchTrace* trace) {
    params.validate();
    const double psi0 = psi_phi(LinearizationData::at(mo, x), d);
    if (psi0 >= 0) {
        throw NotDescentDirection("line search needs a descent direction, got psi0=" +
                                  std::to_string(psi0));
    }

    RayEvaluator ray(mo, x, d, params.rho, psi0, trace);
    int evals = 0;

    // Best decrease-only fallback seen so far.
    double fallback_t = 0.0;
    double fallback_psi = 0.0;
    bool have_fallback = false;
    auto note_fallback = [&](double t, const Probe& p) {
        if (p.decrease_gap <= 0) {
            fallback_t = t;
            fallback_psi = p.psi;
            have_fallback = true;
        }
    };

    auto finish = [&](double t, WolfeStatus status, double psi_t) {
        return LineSearchOutcome{t, evals, status, psi_t};
    };
    auto fail = [&]() {
        if (have_fallback) return finish(fallback_t, WolfeStatus::DecreaseOnly, fallback_psi);
        return finish(0.0, WolfeStatus::Failed, psi0);
    };

    // Zoom: bisect a bracket whose lo end keeps sufficient decrease with the
    // descent measure still below sigma * psi0, and whose interior is known
    // to contain an acceptance band. While the measure stays below
    // sigma * psi0 the decrease gap strictly falls, so a rise of the gap, a
    // decrease failure, or an overshoot each pin a band crossing inside.
    auto zoom = [&](double lo, double hi, double gap_lo) -> LineSearchOutcome {
        for (int i = 0; i < params.max_zoom && evals < params.max_evals; ++i) {
            const double t = 0.5 * (lo + hi);
            const Probe p = ray.at(t);
            ++evals;
            note_fallback(t, p);
            if (p.decrease_gap <= 0 && curvature_ok(p.psi, psi0, params.sigma, params.mode)) {
                return finish(t, WolfeStatus::Both, p.psi);
            }
            if (p.decrease_gap > 0 || overshoots(p.psi, psi0, params.sigma, params.mode) ||
                p.decrease_gap >= gap_lo) {
                hi = t;
            } else {
                lo = t;
                gap_lo = p.decrease_gap;
            }
            if (std::abs(hi - lo) <= 1e-16 * std::max(1.0, std::abs(lo))) break;
        }
        return fail();
    };

    double t_prev = 0.0;
    double gap_prev = 0.0;
    double t = std::min(params.t_init, params.t_max);
    for (int j = 0; j < params.max_brackets && evals < params.max_evals; ++j) {
        const Probe p = ray.at(t);
        ++evals;
        note_fallback(t, p);
        if (p.decrease_gap <= 0 && curvature_ok(p.psi, psi0, params.sigma, params.mode)) {
            return finish(t, WolfeStatus::Both, p.psi);
        }
        if (p.decrease_gap > 0 || overshoots(p.psi, psi0, params.sigma, params.mode) ||
            p.decrease_gap >= gap_prev) {
            return zoom(t_prev, t, gap_prev);
        }
        if (t >= params.t_max) break;
        t_prev = t;
        gap_prev = p.decrease_gap;
        t = std::min(2 * t, params.t_max);
    }
    return fail();
}

}  // namespace icg
