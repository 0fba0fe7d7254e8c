#ifndef ICG_BENCH_HPP
#define ICG_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "icg/cg.hpp"

namespace icg {

/// A problems x variants x seeds execution grid.
struct BenchMatrix {
    std::vector<std::string> problems;
    std::vector<BetaVariant> variants;
    std::vector<std::uint64_t> seeds;
    SolverConfig base;  // variant field is overridden per cell

    void validate() const;  // throws std::invalid_argument on empty lists
};

/// One completed cell of the grid.
struct BenchRun {
    std::string problem;
    std::string variant;
    std::uint64_t seed = 0;
    RunRecord record;
};

/// The per-run scalars that land in runs.csv; everything aggregation and
/// profiling need.
struct RunRow {
    std::string problem;
    std::string variant;
    std::uint64_t seed = 0;
    RunStatus status = RunStatus::MaxIter;
    int iters = 0;
    double wall_time = 0.0;
    double final_xi = 0.0;
    int restarts = 0;
};

/// Execute the grid on `parallelism` workers. Results are ordered by
/// (problem, variant, seed) position in the matrix and each cell is a pure
/// function of its coordinates, so the output does not depend on the worker
/// count. Per-run failures are captured in the run's status; they never
/// abort the matrix.
std::vector<BenchRun> run_matrix(const BenchMatrix& matrix, int parallelism);

std::vector<RunRow> to_rows(const std::vector<BenchRun>& runs);

/// Per (problem, variant) summary. Means are over successful runs only;
/// failures are counted separately.
struct SummaryRow {
    std::string problem;
    std::string variant;
    int runs = 0;
    int failures = 0;
    double iters_min = 0, iters_mean = 0, iters_max = 0;
    double time_min = 0, time_mean = 0, time_max = 0;
};

std::vector<SummaryRow> aggregate(const std::vector<RunRow>& rows);

enum class ProfileMetric { Iterations, CpuTime };

std::string to_string(ProfileMetric metric);

/// Performance ratios against the per-problem best and the induced
/// cumulative step curves. A solver with no successful run on a problem gets
/// an infinite ratio and its curve never reaches 1.
struct ProfileData {
    ProfileMetric metric = ProfileMetric::Iterations;
    std::vector<std::string> problems;   // N_p
    std::vector<std::string> solvers;    // N_s
    Matrix ratios;                       // N_p x N_s, +inf convention for unsolved
    std::vector<double> breakpoints;     // sorted distinct finite ratios
    Matrix curve;                        // N_s x breakpoints, F(z) per solver
};

ProfileData performance_profile(const std::vector<SummaryRow>& summary, ProfileMetric metric);

// Flat-file interfaces. All CSV output carries a header row, uses LF line
// endings, and prints doubles with full round-trip precision.
void write_runs_csv(std::ostream& os, const std::vector<RunRow>& rows);
std::vector<RunRow> read_runs_csv(std::istream& is);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);
void write_profile_csv(std::ostream& os, const ProfileData& profile);
void write_profile_json(std::ostream& os, const ProfileData& profile);

}  // namespace icg

#endif
