#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "icg/errors.hpp"
#include "icg/ivm.hpp"
#include "test_support.hpp"

using namespace icg;

namespace {

// f = [x^2, x^2 + 1] on the line.
IntervalFunction square_plus_band() {
    IntervalFunction f;
    f.dim = 1;
    f.lower_fn = [](const Vector& x) { return x[0] * x[0]; };
    f.upper_fn = [](const Vector& x) { return x[0] * x[0] + 1; };
    f.lower_grad = [](const Vector& x) { return Vector::Constant(1, 2 * x[0]).eval(); };
    f.upper_grad = [](const Vector& x) { return Vector::Constant(1, 2 * x[0]).eval(); };
    return f;
}

}  // namespace

TEST_CASE("eval substitutes the endpoint functions") {
    Vector x(1);
    x << 2;
    CHECK(eval(square_plus_band(), x) == Interval(4, 5));

    IntervalFunction degenerate;
    degenerate.dim = 1;
    degenerate.lower_fn = [](const Vector& v) { return v[0] * v[0]; };
    degenerate.upper_fn = degenerate.lower_fn;
    degenerate.lower_grad = [](const Vector& v) { return Vector::Constant(1, 2 * v[0]).eval(); };
    degenerate.upper_grad = degenerate.lower_grad;
    x << 3;
    CHECK(eval(degenerate, x) == Interval(9, 9));

    IntervalFunction two;
    two.dim = 2;
    two.lower_fn = [](const Vector& v) { return v[0] + v[1]; };
    two.upper_fn = [](const Vector& v) { return v[0] + v[1] + std::exp(v[0]); };
    two.lower_grad = [](const Vector&) { return Vector::Constant(2, 1.0).eval(); };
    two.upper_grad = [](const Vector& v) {
        Vector g(2);
        g << 1 + std::exp(v[0]), 1;
        return g;
    };
    Vector p(2);
    p << 0, 1;
    CHECK(eval(two, p) == Interval(1, 2));
}

TEST_CASE("eval rejects bad input") {
    IntervalFunction inverted;
    inverted.dim = 1;
    inverted.lower_fn = [](const Vector&) { return 1.0; };
    inverted.upper_fn = [](const Vector&) { return 0.0; };
    inverted.lower_grad = [](const Vector&) { return Vector::Zero(1).eval(); };
    inverted.upper_grad = inverted.lower_grad;
    CHECK_THROWS_AS(eval(inverted, Vector::Zero(1)), EndpointOrderViolation);
    CHECK_THROWS_AS(eval(square_plus_band(), Vector::Zero(3)), DimensionMismatch);
}

TEST_CASE("gh gradient takes componentwise min and max of the partials") {
    Vector x(1);
    x << 2;
    const GHGradient g = gh_gradient(square_plus_band(), x);
    CHECK(g.component(0) == Interval(4, 4));

    // f = [-x, x] near x = 1: partials -1 and 1.
    IntervalFunction band;
    band.dim = 1;
    band.lower_fn = [](const Vector& v) { return -v[0]; };
    band.upper_fn = [](const Vector& v) { return v[0]; };
    band.lower_grad = [](const Vector&) { return Vector::Constant(1, -1.0).eval(); };
    band.upper_grad = [](const Vector&) { return Vector::Constant(1, 1.0).eval(); };
    x << 1;
    CHECK(gh_gradient(band, x).component(0) == Interval(-1, 1));

    // f = [x1^2 + x2^2, x1^2 + x2^2 + x1] at (1,1): partials (2,2) and (3,2).
    IntervalFunction shifted;
    shifted.dim = 2;
    shifted.lower_fn = [](const Vector& v) { return v.squaredNorm(); };
    shifted.upper_fn = [](const Vector& v) { return v.squaredNorm() + v[0]; };
    shifted.lower_grad = [](const Vector& v) { return (2 * v).eval(); };
    shifted.upper_grad = [](const Vector& v) {
        Vector g = 2 * v;
        g[0] += 1;
        return g;
    };
    Vector p(2);
    p << 1, 1;
    const GHGradient gg = gh_gradient(shifted, p);
    CHECK(gg.component(0) == Interval(2, 3));
    CHECK(gg.component(1) == Interval(2, 2));
}

TEST_CASE("finite difference check bounds the gradient error") {
    Vector x(1);
    x << 2;
    CHECK(finite_diff_check(square_plus_band(), x, 1e-5) <= 1e-8);

    IntervalFunction flat;
    flat.dim = 2;
    flat.lower_fn = [](const Vector&) { return 1.0; };
    flat.upper_fn = [](const Vector&) { return 2.0; };
    flat.lower_grad = [](const Vector&) { return Vector::Zero(2).eval(); };
    flat.upper_grad = flat.lower_grad;
    CHECK(finite_diff_check(flat, Vector::Constant(2, 3.0), 1e-3) <= 1e-10);

    // Quadratic at coarser h still lands well under the advertised bound.
    CHECK(finite_diff_check(square_plus_band(), x, 1e-4) <= 1e-6);
}

TEST_CASE("center-width constructor enforces nonnegative width") {
    auto center = [](const Vector& x) { return x.squaredNorm(); };
    auto center_grad = [](const Vector& x) { return (2 * x).eval(); };
    auto width = [](const Vector& x) { return x[0]; };  // negative for x0 < 0
    auto width_grad = [](const Vector& x) {
        Vector g = Vector::Zero(x.size());
        g[0] = 1;
        return g;
    };
    const IntervalFunction f =
        IntervalFunction::from_center_width(center, center_grad, width, width_grad, 2);

    Vector ok(2);
    ok << 2, 1;
    CHECK(eval(f, ok) == Interval(5 - 2, 5 + 2));
    Vector bad(2);
    bad << -1, 0;
    CHECK_THROWS_AS(eval(f, bad), EndpointOrderViolation);
}

TEST_CASE("property: gh gradients are ordered and eval is deterministic") {
    SplitRng rng(5);
    auto center = [](const Vector& x) { return std::sin(x[0]) + x.squaredNorm(); };
    auto center_grad = [](const Vector& x) {
        Vector g = 2 * x;
        g[0] += std::cos(x[0]);
        return g;
    };
    auto width = [](const Vector& x) { return 0.1 * (1 + x.squaredNorm()); };
    auto width_grad = [](const Vector& x) { return (0.2 * x).eval(); };
    const IntervalFunction f =
        IntervalFunction::from_center_width(center, center_grad, width, width_grad, 3);

    for (int i = 0; i < 200; ++i) {
        const Vector x = test::random_vector(rng, 3, -4, 4);
        const GHGradient g = gh_gradient(f, x);
        for (int j = 0; j < 3; ++j) CHECK(g.lo[j] <= g.hi[j]);
        const Interval a = eval(f, x);
        const Interval b = eval(f, x);
        CHECK(a == b);  // bitwise repeatable
        CHECK(finite_diff_check(f, x, 1e-6) < 1e-7);
    }
}
