// Command-line front end: single solves, benchmark matrices, performance
// profiles, and problem listing.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "icg/bench.hpp"
#include "icg/cg.hpp"
#include "icg/errors.hpp"
#include "icg/problems.hpp"

namespace fs = std::filesystem;
using namespace icg;

namespace {

struct CliConfig {
    std::string problem;
    std::string problems = "all";
    std::string variant = "dy";
    std::string variants = "sd,fr,cd,dy,mdy";
    double rho = 0.001;
    double sigma = 0.1;
    double eps = 1e-6;
    int max_iter = 10000;
    double scale = -1.0;  // <0 means variant default
    double zeta = 1.03;
    std::string wolfe = "strong";
    std::uint64_t seed = 0;
    std::string seeds = "0..99";
    int parallelism = 8;
    std::string out_dir = "out";
    std::string runs_path;
    std::string metric = "both";
    std::string config_file;
    bool print_config = false;
    bool no_stamp = false;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    for (const auto& part : split_list(text)) {
        const auto dots = part.find("..");
        if (dots != std::string::npos) {
            const std::uint64_t lo = std::stoull(part.substr(0, dots));
            const std::uint64_t hi = std::stoull(part.substr(dots + 2));
            if (hi < lo) throw std::invalid_argument("seed range '" + part + "' is reversed");
            for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        } else {
            seeds.push_back(std::stoull(part));
        }
    }
    if (seeds.empty()) throw std::invalid_argument("empty seed list");
    return seeds;
}

BetaVariant make_variant(const std::string& name, double scale, double zeta) {
    BetaVariant v = BetaVariant::parse(name);
    if (scale >= 0 &&
        (v.kind == BetaKind::FR || v.kind == BetaKind::CD || v.kind == BetaKind::DY)) {
        v.scale = scale;
    }
    if (v.kind == BetaKind::mDY) v.zeta = zeta;
    return v;
}

SolverConfig make_solver_config(const CliConfig& cli) {
    SolverConfig cfg;
    cfg.rho = cli.rho;
    cfg.sigma = cli.sigma;
    cfg.eps = cli.eps;
    cfg.max_iter = cli.max_iter;
    if (cli.wolfe == "strong") {
        cfg.wolfe_mode = WolfeMode::Strong;
    } else if (cli.wolfe == "standard") {
        cfg.wolfe_mode = WolfeMode::Standard;
    } else {
        throw std::invalid_argument("--wolfe must be 'standard' or 'strong'");
    }
    cfg.variant = make_variant(cli.variant, cli.scale, cli.zeta);
    cfg.validate();
    return cfg;
}

fs::path prepare_out_dir(const CliConfig& cli) {
    fs::path base(cli.out_dir);
    if (cli.no_stamp) {
        fs::create_directories(base);
        return base;
    }
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y%m%d-%H%M%S", std::localtime(&tt));
    fs::path dir = base / stamp;
    for (int k = 1; fs::exists(dir); ++k) dir = base / (std::string(stamp) + "-" + std::to_string(k));
    fs::create_directories(dir);
    return dir;
}

void dump_config(const CliConfig& cli, const std::string& subcommand) {
    std::cout << "# resolved configuration (" << subcommand << ")\n";
    std::cout << "problem = " << cli.problem << "\n";
    std::cout << "problems = " << cli.problems << "\n";
    std::cout << "variant = " << cli.variant << "\n";
    std::cout << "variants = " << cli.variants << "\n";
    std::cout << "rho = " << cli.rho << "\n";
    std::cout << "sigma = " << cli.sigma << "\n";
    std::cout << "eps = " << cli.eps << "\n";
    std::cout << "max-iter = " << cli.max_iter << "\n";
    std::cout << "scale = " << (cli.scale < 0 ? std::string("variant-default")
                                              : std::to_string(cli.scale)) << "\n";
    std::cout << "zeta = " << cli.zeta << "\n";
    std::cout << "wolfe = " << cli.wolfe << "\n";
    std::cout << "seed = " << cli.seed << "\n";
    std::cout << "seeds = " << cli.seeds << "\n";
    std::cout << "parallelism = " << cli.parallelism << "\n";
    std::cout << "out-dir = " << cli.out_dir << "\n";
}

int cmd_list_problems() {
    for (const auto& p : registry()) {
        std::printf("%-16s n=%-3d m=%-2d convex=%-5s box=[", p.name.c_str(), p.dim(),
                    p.objectives(), p.convex ? "true" : "false");
        for (int j = 0; j < p.dim(); ++j) {
            std::printf("%s%g:%g", j ? " " : "", p.box_lo[j], p.box_hi[j]);
        }
        std::printf("]\n");
    }
    return 0;
}

int cmd_solve(const CliConfig& cli) {
    const SolverConfig cfg = make_solver_config(cli);
    const ProblemSpec& spec = lookup(cli.problem);
    const Vector x0 = sample_start(spec, cli.seed);
    const RunRecord rec = run(spec.mo, x0, cfg);

    std::printf("problem %s  variant %s  seed %llu\n", spec.name.c_str(),
                cfg.variant.name().c_str(), static_cast<unsigned long long>(cli.seed));
    std::printf("%6s %14s %14s %12s %12s %10s\n", "k", "xi", "psi(v)", "||v||", "beta", "t");
    const std::size_t rows = rec.xi_trace.size();
    const std::size_t stride = rows > 60 ? (rows + 49) / 50 : 1;
    for (std::size_t k = 0; k < rows; ++k) {
        if (k % stride != 0 && k + 1 != rows) continue;
        const bool stepped = k < rec.step_trace.size();
        std::printf("%6zu %14.6e %14.6e %12.4e %12.4e %10.4g\n", k, rec.xi_trace[k],
                    rec.psi_v_trace[k], rec.norm_v_trace[k],
                    stepped ? rec.beta_trace[k] : 0.0, stepped ? rec.step_trace[k] : 0.0);
    }
    std::printf("status %s after %d iterations, final xi %.3e, %.3f s, restarts %d\n",
                to_string(rec.status).c_str(), rec.iterations, rec.final_xi, rec.wall_time,
                rec.restarts);

    const fs::path dir = prepare_out_dir(cli);
    std::ofstream out(dir / "run.json");
    out << rec.json() << '\n';
    std::cout << "wrote " << (dir / "run.json").string() << "\n";
    return 0;
}

int cmd_bench(const CliConfig& cli) {
    BenchMatrix matrix;
    matrix.base = make_solver_config(cli);
    if (cli.problems == "all") {
        for (const auto& p : registry()) matrix.problems.push_back(p.name);
    } else {
        matrix.problems = split_list(cli.problems);
    }
    for (const auto& name : split_list(cli.variants)) {
        matrix.variants.push_back(make_variant(name, cli.scale, cli.zeta));
    }
    matrix.seeds = parse_seeds(cli.seeds);
    matrix.validate();

    const auto runs = run_matrix(matrix, cli.parallelism);
    const auto rows = to_rows(runs);
    const fs::path dir = prepare_out_dir(cli);
    {
        std::ofstream os(dir / "runs.csv");
        write_runs_csv(os, rows);
    }
    {
        std::ofstream os(dir / "summary.csv");
        write_summary_csv(os, aggregate(rows));
    }
    fs::create_directories(dir / "runs");
    for (const auto& r : runs) {
        const std::string name =
            r.problem + "_" + r.variant + "_" + std::to_string(r.seed) + ".json";
        std::ofstream os(dir / "runs" / name);
        os << r.record.json() << '\n';
    }
    std::cout << "wrote " << rows.size() << " runs under " << dir.string() << "\n";
    return 0;
}

int cmd_profile(const CliConfig& cli) {
    std::ifstream is(cli.runs_path);
    if (!is.good()) {
        throw std::invalid_argument("cannot open runs csv '" + cli.runs_path + "'");
    }
    const auto rows = read_runs_csv(is);
    const auto summary = aggregate(rows);
    const fs::path dir = prepare_out_dir(cli);

    std::vector<ProfileMetric> metrics;
    if (cli.metric == "iterations" || cli.metric == "both") {
        metrics.push_back(ProfileMetric::Iterations);
    }
    if (cli.metric == "cpu_time" || cli.metric == "both") {
        metrics.push_back(ProfileMetric::CpuTime);
    }
    if (metrics.empty()) {
        throw std::invalid_argument("--metric must be iterations, cpu_time, or both");
    }
    for (const auto metric : metrics) {
        const ProfileData prof = performance_profile(summary, metric);
        const std::string base = "profile_" + to_string(metric);
        {
            std::ofstream os(dir / (base + ".csv"));
            write_profile_csv(os, prof);
        }
        {
            std::ofstream os(dir / (base + ".json"));
            write_profile_json(os, prof);
        }
        std::cout << "wrote " << (dir / base).string() << ".{csv,json}\n";
    }
    return 0;
}

// key = value lines; '#' starts a comment. Flags given on the command line
// win over file entries.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is.good()) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

}  // namespace

int main(int argc, char** argv) {
    CliConfig cli;
    if (const char* env_seed = std::getenv("ICG_SEED")) {
        try {
            cli.seed = std::stoull(env_seed);
        } catch (const std::exception&) {
            std::cerr << "ERROR:usage ICG_SEED is not an integer\n";
            return 1;
        }
    }

    CLI::App app{"conjugate-gradient solver for interval-valued multiobjective problems"};
    app.require_subcommand(1);

    std::map<std::string, CLI::Option*> opts;
    auto add_common = [&](CLI::App* sub) {
        opts["rho:" + sub->get_name()] = sub->add_option("--rho", cli.rho);
        opts["sigma:" + sub->get_name()] = sub->add_option("--sigma", cli.sigma);
        opts["eps:" + sub->get_name()] = sub->add_option("--eps", cli.eps);
        opts["max-iter:" + sub->get_name()] = sub->add_option("--max-iter", cli.max_iter);
        opts["scale:" + sub->get_name()] = sub->add_option("--scale", cli.scale);
        opts["zeta:" + sub->get_name()] = sub->add_option("--zeta", cli.zeta);
        opts["wolfe:" + sub->get_name()] = sub->add_option("--wolfe", cli.wolfe);
        opts["out-dir:" + sub->get_name()] = sub->add_option("--out-dir", cli.out_dir);
        sub->add_flag("--no-stamp", cli.no_stamp,
                      "write into --out-dir directly, without a timestamp subdirectory");
        sub->add_flag("--print-config", cli.print_config);
        sub->add_option("--config-file", cli.config_file);
    };

    CLI::App* solve = app.add_subcommand("solve", "run one solve and print the trace");
    opts["problem:solve"] = solve->add_option("--problem", cli.problem)->required();
    opts["variant:solve"] = solve->add_option("--variant", cli.variant);
    opts["seed:solve"] = solve->add_option("--seed", cli.seed);
    add_common(solve);

    CLI::App* bench = app.add_subcommand("bench", "run a problems x variants x seeds matrix");
    opts["problems:bench"] = bench->add_option("--problems", cli.problems);
    opts["variants:bench"] = bench->add_option("--variants", cli.variants);
    opts["seeds:bench"] = bench->add_option("--seeds", cli.seeds);
    opts["parallelism:bench"] = bench->add_option("--parallelism", cli.parallelism);
    add_common(bench);

    CLI::App* profile = app.add_subcommand("profile", "build performance profiles from runs.csv");
    opts["runs:profile"] = profile->add_option("--runs", cli.runs_path)->required();
    opts["metric:profile"] = profile->add_option("--metric", cli.metric);
    add_common(profile);

    CLI::App* list = app.add_subcommand("list-problems", "list the registered problems");
    (void)list;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "ERROR:usage " << e.what() << "\n";
        return 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        // Config file entries fill in whatever the command line left unset.
        if (!cli.config_file.empty()) {
            const auto kv = read_config_file(cli.config_file);
            for (const auto& [key, value] : kv) {
                const auto it = opts.find(key + ":" + sub->get_name());
                if (it == opts.end() || it->second->count() > 0) continue;
                it->second->add_result(value);
                it->second->run_callback();
            }
        }
        if (cli.print_config) dump_config(cli, sub->get_name());

        if (sub == solve) return cmd_solve(cli);
        if (sub == bench) return cmd_bench(cli);
        if (sub == profile) return cmd_profile(cli);
        return cmd_list_problems();
    } catch (const std::invalid_argument& e) {
        std::cerr << "ERROR:usage " << e.what() << "\n";
        return 1;
    } catch (const UnknownProblem& e) {
        std::cerr << "ERROR:problem " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "ERROR:solver " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ERROR:solver " << e.what() << "\n";
        return 2;
    }
}
