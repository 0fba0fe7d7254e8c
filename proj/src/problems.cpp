#include "icg/problems.hpp"

#include <cmath>
#include <memory>

#include "icg/errors.hpp"
#include "icg/rng.hpp"

namespace icg {

namespace {

IntervalFunction quadratic_center_width(Vector shift, double q_scale, double w0,
                                        double w_quad, int n) {
    // center q(x) = q_scale * ||x - shift||^2, width w(x) = w0 + w_quad * ||x||^2
    auto center = [shift, q_scale](const Vector& x) {
        return q_scale * (x - shift).squaredNorm();
    };
    auto center_grad = [shift = std::move(shift), q_scale](const Vector& x) {
        return (2.0 * q_scale * (x - shift)).eval();
    };
    auto width = [w0, w_quad](const Vector& x) { return w0 + w_quad * x.squaredNorm(); };
    auto width_grad = [w_quad](const Vector& x) { return (2.0 * w_quad * x).eval(); };
    return IntervalFunction::from_center_width(center, center_grad, width, width_grad, n);
}

ProblemSpec make_iq_convex_2() {
    ProblemSpec p;
    p.name = "iq-convex-2";
    p.convex = true;
    const int n = 2;
    Vector e1(n);
    e1 << 1, 0;
    p.mo.name = p.name;
    p.mo.objectives.push_back(quadratic_center_width(e1, 1.0, 0.1, 0.1, n));
    p.mo.objectives.push_back(quadratic_center_width(-e1, 1.0, 0.1, 0.1, n));
    p.box_lo = Vector::Constant(n, -5.0);
    p.box_hi = Vector::Constant(n, 5.0);
    return p;
}

ProblemSpec make_iq_shared_min() {
    ProblemSpec p;
    p.name = "iq-shared-min";
    p.convex = true;
    const int n = 2;
    const Vector origin = Vector::Zero(n);
    p.mo.name = p.name;
    p.mo.objectives.push_back(quadratic_center_width(origin, 1.0, 0.05, 0.05, n));
    p.mo.objectives.push_back(quadratic_center_width(origin, 2.0, 0.05, 0.05, n));
    p.box_lo = Vector::Constant(n, -5.0);
    p.box_hi = Vector::Constant(n, 5.0);
    p.known_critical.push_back(origin);
    return p;
}

ProblemSpec make_bk1_analogue() {
    ProblemSpec p;
    p.name = "bk1-analogue";
    p.convex = true;
    const int n = 2;
    Vector five(n);
    five << 5, 5;
    auto f1 = [](const Vector& x) { return x.squaredNorm(); };
    auto g1 = [](const Vector& x) { return (2.0 * x).eval(); };
    auto f2 = [five](const Vector& x) { return (x - five).squaredNorm(); };
    auto g2 = [five](const Vector& x) { return (2.0 * (x - five)).eval(); };
    auto width = [f1, f2](const Vector& x) { return 0.01 * (1.0 + f1(x) + f2(x)); };
    auto width_grad = [g1, g2](const Vector& x) { return (0.01 * (g1(x) + g2(x))).eval(); };
    p.mo.name = p.name;
    p.mo.objectives.push_back(IntervalFunction::from_center_width(f1, g1, width, width_grad, n));
    p.mo.objectives.push_back(IntervalFunction::from_center_width(f2, g2, width, width_grad, n));
    p.box_lo = Vector::Constant(n, -5.0);
    p.box_hi = Vector::Constant(n, 10.0);
    // At the two individual minimizers the interval gradient of the active
    // objective brackets zero, which already certifies criticality.
    p.known_critical.push_back(Vector::Zero(n));
    p.known_critical.push_back(five);
    return p;
}

ProblemSpec make_fon_analogue() {
    ProblemSpec p;
    p.name = "fon-analogue";
    p.convex = false;
    const int n = 3;
    const double a = 1.0 / std::sqrt(3.0);
    auto make_obj = [n](double center) {
        auto f = [center](const Vector& x) {
            return 1.0 - std::exp(-(x.array() - center).square().sum());
        };
        auto g = [center](const Vector& x) {
            const double e = std::exp(-(x.array() - center).square().sum());
            return (2.0 * e * (x.array() - center)).matrix().eval();
        };
        auto w = [](const Vector&) { return 0.05; };
        auto wg = [n](const Vector&) { return Vector::Zero(n).eval(); };
        return IntervalFunction::from_center_width(f, g, w, wg, n);
    };
    p.mo.name = p.name;
    p.mo.objectives.push_back(make_obj(a));
    p.mo.objectives.push_back(make_obj(-a));
    p.box_lo = Vector::Constant(n, -4.0);
    p.box_hi = Vector::Constant(n, 4.0);
    return p;
}

ProblemSpec make_deg_real_sd() {
    ProblemSpec p;
    p.name = "deg-real-sd";
    p.convex = true;
    const int n = 10;
    Vector diag(n);
    for (int j = 0; j < n; ++j) diag[j] = j + 1;
    IntervalFunction f;
    f.dim = n;
    f.lower_fn = [diag](const Vector& x) { return 0.5 * x.dot(diag.cwiseProduct(x)); };
    f.upper_fn = f.lower_fn;
    f.lower_grad = [diag](const Vector& x) { return diag.cwiseProduct(x).eval(); };
    f.upper_grad = f.lower_grad;
    p.mo.name = p.name;
    p.mo.objectives.push_back(std::move(f));
    p.box_lo = Vector::Constant(n, -5.0);
    p.box_hi = Vector::Constant(n, 5.0);
    p.known_critical.push_back(Vector::Zero(n));
    return p;
}

ProblemSpec make_iq_illcond_2() {
    // Anisotropic centers with thin widths; the near-critical region is
    // small, so runs are long enough to watch the descent diagnostics decay.
    ProblemSpec p;
    p.name = "iq-illcond-2";
    p.convex = true;
    const int n = 2;
    auto make_obj = [n](double shift) {
        auto center = [shift](const Vector& x) {
            return (x[0] - shift) * (x[0] - shift) + 25.0 * x[1] * x[1];
        };
        auto center_grad = [shift](const Vector& x) {
            Vector g(2);
            g << 2.0 * (x[0] - shift), 50.0 * x[1];
            return g;
        };
        auto width = [](const Vector& x) { return 0.001 * (1.0 + x.squaredNorm()); };
        auto width_grad = [](const Vector& x) { return (0.002 * x).eval(); };
        return IntervalFunction::from_center_width(center, center_grad, width, width_grad, n);
    };
    p.mo.name = p.name;
    p.mo.objectives.push_back(make_obj(1.0));
    p.mo.objectives.push_back(make_obj(-1.0));
    p.box_lo = Vector::Constant(n, -5.0);
    p.box_hi = Vector::Constant(n, 5.0);
    return p;
}

ProblemSpec make_nonconvex_hill() {
    ProblemSpec p;
    p.name = "nonconvex-hill";
    p.convex = false;
    const int n = 2;
    auto c1 = [](const Vector& x) {
        return std::sin(x[0]) * std::cos(x[1]) + 0.05 * x.squaredNorm();
    };
    auto g1 = [](const Vector& x) {
        Vector g(2);
        g[0] = std::cos(x[0]) * std::cos(x[1]) + 0.1 * x[0];
        g[1] = -std::sin(x[0]) * std::sin(x[1]) + 0.1 * x[1];
        return g;
    };
    auto c2 = [](const Vector& x) {
        return std::cos(x[0] + x[1]) + 0.05 * x.squaredNorm();
    };
    auto g2 = [](const Vector& x) {
        Vector g(2);
        const double s = -std::sin(x[0] + x[1]);
        g[0] = s + 0.1 * x[0];
        g[1] = s + 0.1 * x[1];
        return g;
    };
    auto w = [](const Vector&) { return 0.1; };
    auto wg = [n](const Vector&) { return Vector::Zero(n).eval(); };
    p.mo.name = p.name;
    p.mo.objectives.push_back(IntervalFunction::from_center_width(c1, g1, w, wg, n));
    p.mo.objectives.push_back(IntervalFunction::from_center_width(c2, g2, w, wg, n));
    p.box_lo = Vector::Constant(n, -5.0);
    p.box_hi = Vector::Constant(n, 5.0);
    return p;
}

}  // namespace

const std::vector<ProblemSpec>& registry() {
    static const std::vector<ProblemSpec> problems = [] {
        std::vector<ProblemSpec> out;
        out.push_back(make_iq_convex_2());
        out.push_back(make_iq_shared_min());
        out.push_back(make_bk1_analogue());
        out.push_back(make_fon_analogue());
        out.push_back(make_deg_real_sd());
        out.push_back(make_iq_illcond_2());
        out.push_back(make_nonconvex_hill());
        return out;
    }();
    return problems;
}

const ProblemSpec& lookup(const std::string& name) {
    for (const auto& p : registry()) {
        if (p.name == name) return p;
    }
    throw UnknownProblem("no problem named '" + name + "'");
}

Vector sample_start(const ProblemSpec& spec, std::uint64_t seed) {
    std::uint64_t state = seed ^ fnv1a(spec.name);
    SplitRng rng(splitmix64(state));
    Vector x(spec.dim());
    for (int j = 0; j < spec.dim(); ++j) {
        x[j] = rng.uniform(spec.box_lo[j], spec.box_hi[j]);
    }
    return x;
}

}  // namespace icg
