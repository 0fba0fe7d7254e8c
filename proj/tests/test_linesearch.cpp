#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "icg/errors.hpp"
#include "icg/linesearch.hpp"
#include "icg/problems.hpp"
#include "test_support.hpp"

using namespace icg;

namespace {

// The 1-D hand example: f(x) = x^2 at x = 1 along d = -2, psi0 = -4.
struct HandExample {
    MultiObjective mo = test::scalar_square();
    Vector x = Vector::Constant(1, 1.0);
    Vector d = Vector::Constant(1, -2.0);
    double psi0 = -4.0;
};

}  // namespace

TEST_CASE("sufficient decrease on the hand example") {
    HandExample ex;
    CHECK(psi_phi(LinearizationData::at(ex.mo, ex.x), ex.d) == doctest::Approx(ex.psi0));

    // Small steps always pass.
    CHECK(sufficient_decrease_holds(ex.mo, ex.x, ex.d, 1e-6, 0.001, ex.psi0));
    // f(0) = 0 <= 1 + 0.001 * 0.5 * (-4)
    CHECK(sufficient_decrease_holds(ex.mo, ex.x, ex.d, 0.5, 0.001, ex.psi0));
    // Quadratic growth kills huge steps.
    CHECK_FALSE(sufficient_decrease_holds(ex.mo, ex.x, ex.d, 50.0, 0.001, ex.psi0));
}

TEST_CASE("curvature on the hand example") {
    HandExample ex;
    // Standard fails at t near 0 and holds from t = 0.45 on.
    CHECK_FALSE(curvature_holds(ex.mo, ex.x, ex.d, 1e-9, 0.1, ex.psi0, WolfeMode::Standard));
    CHECK_FALSE(curvature_holds(ex.mo, ex.x, ex.d, 0.44, 0.1, ex.psi0, WolfeMode::Standard));
    CHECK(curvature_holds(ex.mo, ex.x, ex.d, 0.45, 0.1, ex.psi0, WolfeMode::Standard));
    CHECK(curvature_holds(ex.mo, ex.x, ex.d, 10.0, 0.1, ex.psi0, WolfeMode::Standard));

    // Strong additionally caps the magnitude: only [0.45, 0.55], probed just
    // inside and outside the endpoints.
    CHECK_FALSE(curvature_holds(ex.mo, ex.x, ex.d, 0.449999999, 0.1, ex.psi0, WolfeMode::Strong));
    CHECK(curvature_holds(ex.mo, ex.x, ex.d, 0.450000001, 0.1, ex.psi0, WolfeMode::Strong));
    CHECK(curvature_holds(ex.mo, ex.x, ex.d, 0.5, 0.1, ex.psi0, WolfeMode::Strong));
    CHECK(curvature_holds(ex.mo, ex.x, ex.d, 0.549999999, 0.1, ex.psi0, WolfeMode::Strong));
    CHECK_FALSE(curvature_holds(ex.mo, ex.x, ex.d, 0.550000001, 0.1, ex.psi0, WolfeMode::Strong));
}

TEST_CASE("search lands inside the strong band") {
    HandExample ex;
    WolfeParams params;
    params.rho = 0.001;
    params.sigma = 0.1;
    params.mode = WolfeMode::Strong;
    const LineSearchOutcome out = search(ex.mo, ex.x, ex.d, params);
    CHECK(out.satisfied == WolfeStatus::Both);
    CHECK(out.t >= 0.45 - 1e-9);
    CHECK(out.t <= 0.55 + 1e-9);
    CHECK(sufficient_decrease_holds(ex.mo, ex.x, ex.d, out.t, params.rho, ex.psi0));
    CHECK(curvature_holds(ex.mo, ex.x, ex.d, out.t, params.sigma, ex.psi0, params.mode));
    CHECK(out.evals > 0);
}

TEST_CASE("non-descent directions are rejected") {
    HandExample ex;
    WolfeParams params;
    // d = +2 gives psi0 = +4.
    CHECK_THROWS_AS(search(ex.mo, ex.x, Vector::Constant(1, 2.0), params), NotDescentDirection);
}

TEST_CASE("parameter validation") {
    WolfeParams params;
    params.rho = 0.5;
    params.sigma = 0.1;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params.rho = 0.001;
    params.sigma = 0.1;
    CHECK_NOTHROW(params.validate());
    params.t_init = 0;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
}

TEST_CASE("accepted steps self-verify and dominate on registry problems") {
    const QPSolver qp;
    WolfeParams params;
    int verified = 0;
    for (const auto& spec : registry()) {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const Vector x = sample_start(spec, seed);
            const DirectionResult dir = solve_direction(spec.mo, x, qp);
            if (dir.xi >= -1e-6) continue;
            for (const WolfeMode mode : {WolfeMode::Standard, WolfeMode::Strong}) {
                params.mode = mode;
                const LineSearchOutcome out = search(spec.mo, x, dir.v, params);
                REQUIRE(out.satisfied == WolfeStatus::Both);
                CHECK(sufficient_decrease_holds(spec.mo, x, dir.v, out.t, params.rho,
                                                dir.psi_at_v));
                CHECK(curvature_holds(spec.mo, x, dir.v, out.t, params.sigma, dir.psi_at_v,
                                      mode));
                // Every objective interval moves down in the dominance order.
                const Vector xt = x + out.t * dir.v;
                for (const auto& f : spec.mo.objectives) {
                    CHECK(dominates(eval(f, xt), eval(f, x)));
                }
                ++verified;
            }
        }
    }
    CHECK(verified >= 60);
}

TEST_CASE("trace records the trial steps") {
    HandExample ex;
    WolfeParams params;
    LineSearchTrace trace;
    const LineSearchOutcome out = search(ex.mo, ex.x, ex.d, params, &trace);
    CHECK(int(trace.entries.size()) == out.evals);
    for (const auto& e : trace.entries) CHECK(e.t > 0);
}
