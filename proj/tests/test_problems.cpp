#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "icg/errors.hpp"
#include "icg/problems.hpp"
#include "icg/subproblem.hpp"
#include "test_support.hpp"

using namespace icg;

TEST_CASE("registry holds the constructed suite") {
    const auto& problems = registry();
    CHECK(problems.size() == 7);
    CHECK_NOTHROW(lookup("iq-convex-2"));
    CHECK_NOTHROW(lookup("iq-shared-min"));
    CHECK_NOTHROW(lookup("bk1-analogue"));
    CHECK_NOTHROW(lookup("fon-analogue"));
    CHECK_NOTHROW(lookup("deg-real-sd"));
    CHECK_NOTHROW(lookup("iq-illcond-2"));
    CHECK_NOTHROW(lookup("nonconvex-hill"));
    CHECK_THROWS_AS(lookup("nope"), UnknownProblem);

    for (const auto& p : problems) {
        CHECK(p.dim() >= 1);
        CHECK(p.objectives() >= 1);
        CHECK(p.box_lo.size() == p.dim());
        CHECK((p.box_hi - p.box_lo).minCoeff() > 0);
    }
}

TEST_CASE("shared-minimum problem is critical exactly at the origin") {
    const ProblemSpec& spec = lookup("iq-shared-min");
    REQUIRE(spec.known_critical.size() == 1);
    CHECK(spec.known_critical.front().norm() == 0.0);
    const DirectionResult res = solve_direction(spec.mo, spec.known_critical.front(), QPSolver());
    CHECK(std::abs(res.xi) <= 1e-8);
    CHECK(res.v.norm() <= 1e-6);
}

TEST_CASE("degenerate real problem reduces to the classical gradient") {
    const ProblemSpec& spec = lookup("deg-real-sd");
    SplitRng rng(1);
    Vector diag(10);
    for (int j = 0; j < 10; ++j) diag[j] = j + 1;
    for (int trial = 0; trial < 10; ++trial) {
        const Vector x = test::random_vector(rng, 10, -5, 5);
        const DirectionResult res = solve_direction(spec.mo, x, QPSolver());
        CHECK((res.v + diag.cwiseProduct(x)).norm() <= 1e-7);
    }
}

TEST_CASE("start sampling is deterministic, in-box, and spread out") {
    const ProblemSpec& spec = lookup("iq-convex-2");
    CHECK((sample_start(spec, 7) - sample_start(spec, 7)).norm() == 0.0);

    std::set<std::pair<double, double>> seen;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Vector x = sample_start(spec, seed);
        for (int j = 0; j < spec.dim(); ++j) {
            CHECK(x[j] >= spec.box_lo[j]);
            CHECK(x[j] <= spec.box_hi[j]);
        }
        seen.insert({x[0], x[1]});
    }
    CHECK(seen.size() == 100);

    // Different problems draw from different streams.
    const ProblemSpec& other = lookup("iq-shared-min");
    CHECK((sample_start(spec, 3) - sample_start(other, 3)).norm() > 0);
}

TEST_CASE("gradients of every registered problem pass the finite-difference check") {
    SplitRng rng(77);
    for (const auto& spec : registry()) {
        for (int trial = 0; trial < 20; ++trial) {
            Vector x(spec.dim());
            for (int j = 0; j < spec.dim(); ++j) {
                x[j] = rng.uniform(spec.box_lo[j], spec.box_hi[j]);
            }
            for (const auto& f : spec.mo.objectives) {
                CHECK(finite_diff_check(f, x, 1e-6) < 5e-7);
            }
        }
    }
}

TEST_CASE("known critical points certify") {
    const QPSolver qp;
    for (const auto& spec : registry()) {
        for (const auto& xstar : spec.known_critical) {
            const DirectionResult res = solve_direction(spec.mo, xstar, qp);
            CHECK(res.xi >= -1e-8);
            CHECK(res.v.norm() <= 1e-4);
        }
    }
}

TEST_CASE("interval widths are positive where declared and zero when degenerate") {
    SplitRng rng(31);
    for (const auto& spec : registry()) {
        const bool degenerate = spec.name == "deg-real-sd";
        for (int trial = 0; trial < 10; ++trial) {
            Vector x(spec.dim());
            for (int j = 0; j < spec.dim(); ++j) {
                x[j] = rng.uniform(spec.box_lo[j], spec.box_hi[j]);
            }
            for (const auto& f : spec.mo.objectives) {
                const Interval g = eval(f, x);
                if (degenerate) {
                    CHECK(g.width() == 0.0);
                } else {
                    CHECK(g.width() > 0.0);
                }
            }
        }
    }
}
