#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "icg/bench.hpp"
#include "test_support.hpp"

using namespace icg;

namespace {

BenchMatrix small_matrix() {
    BenchMatrix m;
    m.problems = {"iq-convex-2", "iq-shared-min"};
    m.variants = {BetaVariant::sd(), BetaVariant::dy()};
    m.seeds = {0, 1, 2};
    return m;
}

}  // namespace

TEST_CASE("matrix cardinality and validation") {
    BenchMatrix m;
    m.problems = {"iq-convex-2"};
    m.variants = {BetaVariant::sd()};
    m.seeds = {0, 1, 2};
    CHECK(run_matrix(m, 1).size() == 3);

    m.seeds.clear();
    CHECK_THROWS_AS(run_matrix(m, 1), std::invalid_argument);
    m.seeds = {0};
    m.problems.clear();
    CHECK_THROWS_AS(run_matrix(m, 1), std::invalid_argument);
}

TEST_CASE("parallel execution reproduces the serial rows") {
    const BenchMatrix m = small_matrix();
    const auto serial = to_rows(run_matrix(m, 1));
    const auto parallel = to_rows(run_matrix(m, 4));
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].problem == parallel[i].problem);
        CHECK(serial[i].variant == parallel[i].variant);
        CHECK(serial[i].seed == parallel[i].seed);
        CHECK(serial[i].status == parallel[i].status);
        CHECK(serial[i].iters == parallel[i].iters);
        CHECK(serial[i].final_xi == parallel[i].final_xi);  // bitwise
        CHECK(serial[i].restarts == parallel[i].restarts);
    }
}

TEST_CASE("aggregate computes min/mean/max and failure counts") {
    std::vector<RunRow> rows;
    auto add = [&rows](int iters, RunStatus status) {
        RunRow r;
        r.problem = "p";
        r.variant = "v";
        r.iters = iters;
        r.wall_time = iters * 0.5;
        r.status = status;
        rows.push_back(r);
    };
    add(0, RunStatus::Critical);
    add(3, RunStatus::Critical);
    add(6, RunStatus::Critical);
    auto summary = aggregate(rows);
    REQUIRE(summary.size() == 1);
    CHECK(summary[0].iters_min == 0);
    CHECK(summary[0].iters_mean == doctest::Approx(3));
    CHECK(summary[0].iters_max == 6);
    CHECK(summary[0].failures == 0);

    rows.clear();
    add(4, RunStatus::Critical);
    summary = aggregate(rows);
    CHECK(summary[0].iters_min == 4);
    CHECK(summary[0].iters_mean == 4);
    CHECK(summary[0].iters_max == 4);

    rows.clear();
    add(2, RunStatus::Critical);
    add(100, RunStatus::MaxIter);
    add(4, RunStatus::Critical);
    summary = aggregate(rows);
    CHECK(summary[0].failures == 1);
    CHECK(summary[0].iters_mean == doctest::Approx(3));  // mean over successes

    CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
}

TEST_CASE("aggregate ordering holds on real runs") {
    const auto summary = aggregate(to_rows(run_matrix(small_matrix(), 2)));
    for (const auto& s : summary) {
        if (s.failures == s.runs) continue;
        CHECK(s.iters_min <= s.iters_mean);
        CHECK(s.iters_mean <= s.iters_max);
        CHECK(s.time_min <= s.time_mean);
        CHECK(s.time_mean <= s.time_max);
    }
}

TEST_CASE("invalid base config fails on the calling thread") {
    BenchMatrix m = small_matrix();
    m.base.rho = 0.5;
    m.base.sigma = 0.1;
    CHECK_THROWS_AS(run_matrix(m, 2), std::invalid_argument);
}

TEST_CASE("profile on the two-by-two hand example") {
    std::vector<SummaryRow> summary(4);
    summary[0] = {"p1", "s1", 1, 0, 10, 10, 10, 1, 1, 1};
    summary[1] = {"p1", "s2", 1, 0, 20, 20, 20, 1, 1, 1};
    summary[2] = {"p2", "s1", 1, 0, 30, 30, 30, 1, 1, 1};
    summary[3] = {"p2", "s2", 1, 0, 15, 15, 15, 1, 1, 1};
    const ProfileData prof = performance_profile(summary, ProfileMetric::Iterations);
    REQUIRE(prof.problems.size() == 2);
    REQUIRE(prof.solvers.size() == 2);
    CHECK(prof.ratios(0, 0) == 1.0);
    CHECK(prof.ratios(0, 1) == 2.0);
    CHECK(prof.ratios(1, 0) == 2.0);
    CHECK(prof.ratios(1, 1) == 1.0);
    REQUIRE(prof.breakpoints.size() == 2);
    CHECK(prof.breakpoints[0] == 1.0);
    CHECK(prof.breakpoints[1] == 2.0);
    for (int s = 0; s < 2; ++s) {
        CHECK(prof.curve(s, 0) == 0.5);  // F(1)
        CHECK(prof.curve(s, 1) == 1.0);  // F(2)
    }
}

TEST_CASE("single solver profiles to all ones") {
    std::vector<SummaryRow> summary(2);
    summary[0] = {"p1", "only", 1, 0, 5, 5, 5, 1, 1, 1};
    summary[1] = {"p2", "only", 1, 0, 9, 9, 9, 1, 1, 1};
    const ProfileData prof = performance_profile(summary, ProfileMetric::Iterations);
    REQUIRE(prof.breakpoints.size() == 1);
    CHECK(prof.breakpoints[0] == 1.0);
    CHECK(prof.curve(0, 0) == 1.0);
}

TEST_CASE("unsolved cells keep the curve below one") {
    std::vector<SummaryRow> summary(4);
    const double inf = std::numeric_limits<double>::infinity();
    summary[0] = {"p1", "s1", 1, 0, 10, 10, 10, 1, 1, 1};
    summary[1] = {"p1", "s2", 1, 1, 0, inf, 0, 0, inf, 0};  // all runs failed
    summary[2] = {"p2", "s1", 1, 0, 30, 30, 30, 1, 1, 1};
    summary[3] = {"p2", "s2", 1, 0, 15, 15, 15, 1, 1, 1};
    const ProfileData prof = performance_profile(summary, ProfileMetric::Iterations);
    CHECK(std::isinf(prof.ratios(0, 1)));
    const int last = int(prof.breakpoints.size()) - 1;
    CHECK(prof.curve(1, last) < 1.0);
    CHECK(prof.curve(0, last) == 1.0);
    // Curves are nondecreasing and capped at one.
    for (int s = 0; s < 2; ++s) {
        for (int z = 0; z + 1 <= last; ++z) {
            CHECK(prof.curve(s, z) <= prof.curve(s, z + 1) + 1e-15);
            CHECK(prof.curve(s, z) <= 1.0);
        }
    }
}

TEST_CASE("runs csv round-trips") {
    const BenchMatrix m = small_matrix();
    const auto rows = to_rows(run_matrix(m, 2));
    std::ostringstream os;
    write_runs_csv(os, rows);
    std::istringstream is(os.str());
    const auto back = read_runs_csv(is);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].problem == rows[i].problem);
        CHECK(back[i].variant == rows[i].variant);
        CHECK(back[i].seed == rows[i].seed);
        CHECK(back[i].status == rows[i].status);
        CHECK(back[i].iters == rows[i].iters);
        CHECK(back[i].wall_time == rows[i].wall_time);  // 17 digits round-trip
        CHECK(back[i].final_xi == rows[i].final_xi);
    }

    std::istringstream bad("not,a,header\n");
    CHECK_THROWS_AS(read_runs_csv(bad), std::invalid_argument);
}

TEST_CASE("summary and profile writers emit headers") {
    const BenchMatrix m = small_matrix();
    const auto rows = to_rows(run_matrix(m, 2));
    const auto summary = aggregate(rows);
    std::ostringstream os;
    write_summary_csv(os, summary);
    CHECK(os.str().rfind("problem,variant,runs,failures", 0) == 0);

    const ProfileData prof = performance_profile(summary, ProfileMetric::CpuTime);
    std::ostringstream pcsv;
    write_profile_csv(pcsv, prof);
    CHECK(pcsv.str().rfind("z,F_sd,F_dy", 0) == 0);
    std::ostringstream pjson;
    write_profile_json(pjson, prof);
    CHECK(pjson.str().find("\"metric\": \"cpu_time\"") != std::string::npos);
}
