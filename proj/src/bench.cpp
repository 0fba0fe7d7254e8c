#include "icg/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <json.hpp>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "icg/errors.hpp"
#include "icg/problems.hpp"

namespace icg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

RunStatus parse_status(const std::string& text) {
    if (text == "critical") return RunStatus::Critical;
    if (text == "max_iter") return RunStatus::MaxIter;
    if (text == "linesearch_fail") return RunStatus::LineSearchFail;
    throw std::invalid_argument("unknown run status '" + text + "'");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

}  // namespace

void BenchMatrix::validate() const {
    if (problems.empty()) throw std::invalid_argument("bench matrix has no problems");
    if (variants.empty()) throw std::invalid_argument("bench matrix has no variants");
    if (seeds.empty()) throw std::invalid_argument("bench matrix has no seeds");
}

std::vector<BenchRun> run_matrix(const BenchMatrix& matrix, int parallelism) {
    matrix.validate();
    if (parallelism < 1) parallelism = 1;

    struct Cell {
        int problem, variant, seed;
    };
    std::vector<Cell> cells;
    cells.reserve(matrix.problems.size() * matrix.variants.size() * matrix.seeds.size());
    for (std::size_t p = 0; p < matrix.problems.size(); ++p) {
        for (std::size_t v = 0; v < matrix.variants.size(); ++v) {
            for (std::size_t s = 0; s < matrix.seeds.size(); ++s) {
                cells.push_back({int(p), int(v), int(s)});
            }
        }
    }

    // Resolve names and validate configs up front so bad input fails on the
    // calling thread, not inside a worker.
    std::vector<const ProblemSpec*> specs;
    for (const auto& name : matrix.problems) specs.push_back(&lookup(name));
    for (const auto& variant : matrix.variants) {
        SolverConfig cfg = matrix.base;
        cfg.variant = variant;
        cfg.validate();
    }

    std::vector<BenchRun> results(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell cell = cells[i];
            const ProblemSpec& spec = *specs[cell.problem];
            SolverConfig cfg = matrix.base;
            cfg.variant = matrix.variants[cell.variant];
            const std::uint64_t seed = matrix.seeds[cell.seed];

            BenchRun out;
            out.problem = spec.name;
            out.variant = cfg.variant.name();
            out.seed = seed;
            try {
                out.record = run(spec.mo, sample_start(spec, seed), cfg);
            } catch (const std::exception&) {
                // Solver-level failures are recorded in the run's status;
                // the matrix keeps going.
                out.record = RunRecord{};
                out.record.status = RunStatus::LineSearchFail;
            }
            results[i] = std::move(out);
        }
    };

    if (parallelism == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(parallelism);
        for (int t = 0; t < parallelism; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return results;
}

std::vector<RunRow> to_rows(const std::vector<BenchRun>& runs) {
    std::vector<RunRow> rows;
    rows.reserve(runs.size());
    for (const auto& r : runs) {
        rows.push_back({r.problem, r.variant, r.seed, r.record.status, r.record.iterations,
                        r.record.wall_time, r.record.final_xi, r.record.restarts});
    }
    return rows;
}

std::vector<SummaryRow> aggregate(const std::vector<RunRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("aggregate: no rows");
    // Preserve first-appearance order of (problem, variant) pairs.
    std::vector<SummaryRow> out;
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    struct Acc {
        double it_sum = 0, t_sum = 0;
        int ok = 0;
    };
    std::vector<Acc> acc;

    for (const auto& row : rows) {
        const auto key = std::make_pair(row.problem, row.variant);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, out.size()).first;
            SummaryRow s;
            s.problem = row.problem;
            s.variant = row.variant;
            s.iters_min = kInf;
            s.time_min = kInf;
            s.iters_max = -kInf;
            s.time_max = -kInf;
            out.push_back(s);
            acc.push_back({});
        }
        SummaryRow& s = out[it->second];
        Acc& a = acc[it->second];
        ++s.runs;
        if (row.status != RunStatus::Critical) {
            ++s.failures;
            continue;
        }
        ++a.ok;
        a.it_sum += row.iters;
        a.t_sum += row.wall_time;
        s.iters_min = std::min(s.iters_min, double(row.iters));
        s.iters_max = std::max(s.iters_max, double(row.iters));
        s.time_min = std::min(s.time_min, row.wall_time);
        s.time_max = std::max(s.time_max, row.wall_time);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (acc[i].ok > 0) {
            out[i].iters_mean = acc[i].it_sum / acc[i].ok;
            out[i].time_mean = acc[i].t_sum / acc[i].ok;
        } else {
            out[i].iters_min = out[i].iters_max = 0;
            out[i].time_min = out[i].time_max = 0;
            out[i].iters_mean = out[i].time_mean = kInf;  // unsolved marker
        }
    }
    return out;
}

std::string to_string(ProfileMetric metric) {
    return metric == ProfileMetric::Iterations ? "iterations" : "cpu_time";
}

ProfileData performance_profile(const std::vector<SummaryRow>& summary, ProfileMetric metric) {
    ProfileData prof;
    prof.metric = metric;
    for (const auto& s : summary) {
        if (std::find(prof.problems.begin(), prof.problems.end(), s.problem) ==
            prof.problems.end()) {
            prof.problems.push_back(s.problem);
        }
        if (std::find(prof.solvers.begin(), prof.solvers.end(), s.variant) ==
            prof.solvers.end()) {
            prof.solvers.push_back(s.variant);
        }
    }
    const int np = static_cast<int>(prof.problems.size());
    const int ns = static_cast<int>(prof.solvers.size());

    Matrix metric_value = Matrix::Constant(np, ns, kInf);
    for (const auto& s : summary) {
        const int p = int(std::find(prof.problems.begin(), prof.problems.end(), s.problem) -
                          prof.problems.begin());
        const int v = int(std::find(prof.solvers.begin(), prof.solvers.end(), s.variant) -
                          prof.solvers.begin());
        metric_value(p, v) = metric == ProfileMetric::Iterations ? s.iters_mean : s.time_mean;
    }

    prof.ratios.resize(np, ns);
    for (int p = 0; p < np; ++p) {
        double best = kInf;
        for (int v = 0; v < ns; ++v) best = std::min(best, metric_value(p, v));
        for (int v = 0; v < ns; ++v) {
            const double m = metric_value(p, v);
            if (std::isinf(m)) {
                prof.ratios(p, v) = kInf;
            } else if (best == 0.0) {
                prof.ratios(p, v) = m == 0.0 ? 1.0 : kInf;
            } else {
                prof.ratios(p, v) = m / best;
            }
        }
    }

    std::set<double> points;
    for (int p = 0; p < np; ++p) {
        for (int v = 0; v < ns; ++v) {
            if (std::isfinite(prof.ratios(p, v))) points.insert(prof.ratios(p, v));
        }
    }
    prof.breakpoints.assign(points.begin(), points.end());

    prof.curve.resize(ns, static_cast<int>(prof.breakpoints.size()));
    for (int v = 0; v < ns; ++v) {
        for (std::size_t z = 0; z < prof.breakpoints.size(); ++z) {
            int covered = 0;
            for (int p = 0; p < np; ++p) {
                if (prof.ratios(p, v) <= prof.breakpoints[z]) ++covered;
            }
            prof.curve(v, static_cast<int>(z)) = double(covered) / np;
        }
    }
    return prof;
}

void write_runs_csv(std::ostream& os, const std::vector<RunRow>& rows) {
    os << "problem,variant,seed,status,iters,wall_time_s,final_xi,restarts\n";
    for (const auto& r : rows) {
        os << r.problem << ',' << r.variant << ',' << r.seed << ',' << to_string(r.status)
           << ',' << r.iters << ',' << fmt_double(r.wall_time) << ','
           << fmt_double(r.final_xi) << ',' << r.restarts << '\n';
    }
}

std::vector<RunRow> read_runs_csv(std::istream& is) {
    std::vector<RunRow> rows;
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("runs csv: empty input");
    if (line.rfind("problem,variant,seed,status", 0) != 0) {
        throw std::invalid_argument("runs csv: unexpected header '" + line + "'");
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 8) throw std::invalid_argument("runs csv: malformed row '" + line + "'");
        RunRow r;
        r.problem = f[0];
        r.variant = f[1];
        r.seed = std::stoull(f[2]);
        r.status = parse_status(f[3]);
        r.iters = std::stoi(f[4]);
        r.wall_time = std::stod(f[5]);
        r.final_xi = std::stod(f[6]);
        r.restarts = std::stoi(f[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
    os << "problem,variant,runs,failures,iters_min,iters_mean,iters_max,"
          "time_min_s,time_mean_s,time_max_s\n";
    for (const auto& s : rows) {
        os << s.problem << ',' << s.variant << ',' << s.runs << ',' << s.failures << ','
           << fmt_double(s.iters_min) << ',' << fmt_double(s.iters_mean) << ','
           << fmt_double(s.iters_max) << ',' << fmt_double(s.time_min) << ','
           << fmt_double(s.time_mean) << ',' << fmt_double(s.time_max) << '\n';
    }
}

void write_profile_csv(std::ostream& os, const ProfileData& profile) {
    os << "z";
    for (const auto& s : profile.solvers) os << ",F_" << s;
    os << '\n';
    for (std::size_t z = 0; z < profile.breakpoints.size(); ++z) {
        os << fmt_double(profile.breakpoints[z]);
        for (int v = 0; v < profile.curve.rows(); ++v) {
            os << ',' << fmt_double(profile.curve(v, static_cast<int>(z)));
        }
        os << '\n';
    }
}

void write_profile_json(std::ostream& os, const ProfileData& profile) {
    nlohmann::json doc;
    doc["metric"] = to_string(profile.metric);
    doc["problems"] = profile.problems;
    doc["solvers"] = profile.solvers;
    nlohmann::json ratios = nlohmann::json::object();
    for (std::size_t v = 0; v < profile.solvers.size(); ++v) {
        nlohmann::json per = nlohmann::json::object();
        for (std::size_t p = 0; p < profile.problems.size(); ++p) {
            const double r = profile.ratios(static_cast<int>(p), static_cast<int>(v));
            if (std::isfinite(r)) {
                per[profile.problems[p]] = r;
            } else {
                per[profile.problems[p]] = "unsolved";
            }
        }
        ratios[profile.solvers[v]] = per;
    }
    doc["ratios"] = ratios;
    doc["z"] = profile.breakpoints;
    nlohmann::json curves = nlohmann::json::object();
    for (std::size_t v = 0; v < profile.solvers.size(); ++v) {
        std::vector<double> row(profile.breakpoints.size());
        for (std::size_t z = 0; z < row.size(); ++z) {
            row[z] = profile.curve(static_cast<int>(v), static_cast<int>(z));
        }
        curves[profile.solvers[v]] = row;
    }
    doc["F"] = curves;
    os << doc.dump(2) << '\n';
}

}  // namespace icg
