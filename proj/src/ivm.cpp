#include "icg/ivm.hpp"

#include <cmath>
#include <utility>

#include "icg/errors.hpp"

namespace icg {

namespace {

void check_dim(const char* who, int expected, const Vector& x) {
    if (static_cast<int>(x.size()) != expected) {
        throw DimensionMismatch(std::string(who) + ": point has dimension " +
                                std::to_string(x.size()) + ", objective expects " +
                                std::to_string(expected));
    }
}

}  // namespace

IntervalFunction IntervalFunction::from_center_width(
    std::function<double(const Vector&)> center_fn,
    std::function<Vector(const Vector&)> center_grad,
    std::function<double(const Vector&)> width_fn,
    std::function<Vector(const Vector&)> width_grad, int dim) {
    auto checked_width = [width_fn = std::move(width_fn)](const Vector& x) {
        double w = width_fn(x);
        if (w < 0) {
            throw EndpointOrderViolation("negative interval width " + std::to_string(w));
        }
        return w;
    };
    IntervalFunction f;
    f.dim = dim;
    f.lower_fn = [center_fn, checked_width](const Vector& x) {
        return center_fn(x) - checked_width(x);
    };
    f.upper_fn = [center_fn = std::move(center_fn), checked_width](const Vector& x) {
        return center_fn(x) + checked_width(x);
    };
    f.lower_grad = [center_grad, width_grad](const Vector& x) {
        return (center_grad(x) - width_grad(x)).eval();
    };
    f.upper_grad = [center_grad = std::move(center_grad),
                    width_grad = std::move(width_grad)](const Vector& x) {
        return (center_grad(x) + width_grad(x)).eval();
    };
    return f;
}

Interval eval(const IntervalFunction& f, const Vector& x) {
    check_dim("eval", f.dim, x);
    const double lo = f.lower_fn(x);
    const double hi = f.upper_fn(x);
    if (!(lo <= hi)) {
        throw EndpointOrderViolation("objective endpoints inverted at evaluation: lower=" +
                                     std::to_string(lo) + " upper=" + std::to_string(hi));
    }
    return Interval(lo, hi);
}

GHGradient gh_gradient(const IntervalFunction& f, const Vector& x) {
    check_dim("gh_gradient", f.dim, x);
    const Vector gl = f.lower_grad(x);
    const Vector gu = f.upper_grad(x);
    if (gl.size() != x.size() || gu.size() != x.size()) {
        throw DimensionMismatch("gh_gradient: endpoint gradient has wrong dimension");
    }
    GHGradient g;
    g.lo = gl.cwiseMin(gu);
    g.hi = gl.cwiseMax(gu);
    return g;
}

double finite_diff_check(const IntervalFunction& f, const Vector& x, double h) {
    check_dim("finite_diff_check", f.dim, x);
    const Vector gl = f.lower_grad(x);
    const Vector gu = f.upper_grad(x);
    double worst = 0.0;
    Vector xp = x, xm = x;
    for (int j = 0; j < f.dim; ++j) {
        xp[j] = x[j] + h;
        xm[j] = x[j] - h;
        const double dlo = (f.lower_fn(xp) - f.lower_fn(xm)) / (2 * h);
        const double dhi = (f.upper_fn(xp) - f.upper_fn(xm)) / (2 * h);
        worst = std::max(worst, std::abs(dlo - gl[j]));
        worst = std::max(worst, std::abs(dhi - gu[j]));
        xp[j] = x[j];
        xm[j] = x[j];
    }
    return worst;
}

}  // namespace icg
