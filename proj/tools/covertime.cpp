// covertime: partial cover time experiments from the command line.
//
//   covertime compare --gen ba:n=5000,k=2,seed=7 --strategies srw,ep,md --out results/
//   covertime budget  --graph pages.csv --budgets 1,2,5,10 --baseline old/budget.csv
//   covertime stats   --graph pages.csv
//   covertime oracle  --gen complete:n=4 --strategies srw --tau 1
//   covertime stopping --weight exp --theta 5 --n 200

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "covertime/experiment.hpp"

namespace {

using namespace covertime;

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_statistical = 3;

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError(fmt::format("cannot write '{}'", path.string()));
    out << body;
    if (!out)
        throw ConfigError(fmt::format("write to '{}' failed", path.string()));
}

std::filesystem::path out_path(const ExperimentConfig& cfg, const char* name) {
    std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw ConfigError(fmt::format("cannot create '{}': {}", cfg.out_dir, ec.message()));
    return dir / name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(fmt::format("cannot open '{}'", path));
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// --config must be applied before the flags are parsed so that flags win.
std::string find_config_arg(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        std::string_view a = argv[i];
        if (a == "--config" && i + 1 < argc)
            return argv[i + 1];
        if (a.starts_with("--config="))
            return std::string(a.substr(9));
    }
    return {};
}

void add_graph_flags(CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--graph", cfg.graph_path, "edge list file (whitespace or comma separated)");
    cmd->add_option("--gen", cfg.generator, "generator, e.g. complete:n=8, ba:n=5000,k=2,seed=1");
}

void add_common_flags(CLI::App* cmd, ExperimentConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "key=value file; flags override it");
    cmd->add_option("--seed", cfg.seed, "master seed (fallback: COVERTIME_SEED)");
    cmd->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out", cfg.out_dir, "output directory (default: CSV to stdout)");
}

int run_compare_cmd(const ExperimentConfig& cfg) {
    const auto lg = load_graph(cfg, std::cerr);
    const auto res = run_compare(cfg, lg, std::cerr);
    if (cfg.out_dir.empty()) {
        std::cout << res.curve_csv;
    } else {
        write_file(out_path(cfg, "curve.csv"), res.curve_csv);
        write_file(out_path(cfg, "pct_max.csv"), res.pct_max_csv);
        write_file(out_path(cfg, "curve.svg"), res.svg);
    }
    return exit_ok;
}

int run_budget_cmd(const ExperimentConfig& cfg) {
    const auto lg = load_graph(cfg, std::cerr);
    const auto res = run_budget(cfg, lg);
    if (cfg.out_dir.empty()) {
        std::cout << res.csv;
    } else {
        write_file(out_path(cfg, "budget.csv"), res.csv);
        write_file(out_path(cfg, "budget.svg"), res.svg);
    }
    for (const auto& p : res.probe.points)
        std::cerr << fmt::format("B={}: p={:.4f} over {} decisions\n", p.budget, p.p, p.decision_points);
    if (!cfg.baseline.empty()) {
        const auto gap = budget_baseline_gap(res.csv, read_file(cfg.baseline));
        if (!gap) {
            std::cerr << "baseline shares no (graph, B) row with this run\n";
            return exit_statistical;
        }
        std::cerr << fmt::format("max |p - baseline| = {:.4f}\n", *gap);
        if (*gap > 0.02)
            return exit_statistical;
    }
    return exit_ok;
}

int run_stats_cmd(const ExperimentConfig& cfg) {
    const auto lg = load_graph(cfg, std::cerr);
    const auto res = run_stats(lg);
    if (cfg.out_dir.empty()) {
        std::cout << res.stats_csv;
    } else {
        write_file(out_path(cfg, "stats.csv"), res.stats_csv);
        write_file(out_path(cfg, "degree_histogram.csv"), res.histogram_csv);
    }
    return exit_ok;
}

int run_oracle_cmd(const ExperimentConfig& cfg) {
    const auto lg = load_graph(cfg, std::cerr);
    const auto res = run_oracle(cfg, lg);
    if (cfg.out_dir.empty())
        std::cout << res.csv;
    else
        write_file(out_path(cfg, "oracle.csv"), res.csv);
    if (!res.all_agree) {
        std::cerr << "Monte-Carlo mean differs from the exact value by more than 3 standard errors\n";
        return exit_statistical;
    }
    return exit_ok;
}

int run_stopping_cmd(const ExperimentConfig& cfg) {
    const auto res = run_stopping(cfg);
    if (cfg.out_dir.empty())
        std::cout << res.csv;
    else
        write_file(out_path(cfg, "stopping.csv"), res.csv);
    std::cerr << fmt::format("r* = {} (E(R) = {:.10g}, continuous {:.4f}), closed form vs direct sum {:.3g}\n",
                             res.cutoff.r, res.cutoff.reward, res.cutoff.continuous_r, res.max_relative_gap);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    ExperimentConfig cfg;
    std::string config_path;
    std::vector<std::string> strategies;
    std::vector<std::uint32_t> budgets;
    long long start = -1;

    if (const char* env = std::getenv("COVERTIME_SEED")) {
        try {
            cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << fmt::format("error: COVERTIME_SEED='{}' is not an unsigned integer\n", env);
            return exit_input;
        }
    }
    try {
        if (auto path = find_config_arg(argc, argv); !path.empty())
            apply_config_file(path, cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }

    CLI::App app{"Partial cover time of random-walk exploration strategies"};
    app.require_subcommand(1);

    auto* compare = app.add_subcommand("compare", "C(tau) curves for several strategies");
    add_graph_flags(compare, cfg);
    add_common_flags(compare, cfg, config_path);
    compare->add_option("--strategies", strategies, "srw,ep,ad,mdw,rwc[:d=N],md[:B=N],sec:c=X,sec:theta=X")
        ->delimiter(',');
    compare->add_option("--tau-min", cfg.tau_min);
    compare->add_option("--tau-max", cfg.tau_max);
    compare->add_option("--tau-step", cfg.tau_step);
    compare->add_option("--trials", cfg.trials, "trials per start")->check(CLI::PositiveNumber);
    compare->add_option("--budget", cfg.budget, "B for bare 'md'")->check(CLI::PositiveNumber);
    compare->add_option("--rwc-d", cfg.rwc_d, "d for bare 'rwc'")->check(CLI::PositiveNumber);
    compare->add_option("--starts", cfg.starts, "sampled start nodes (all nodes when n <= 256)");
    compare->add_option("--start", start, "fixed start node");

    auto* budget = app.add_subcommand("budget", "probability that MD(B) picks a minimum-degree neighbor");
    add_graph_flags(budget, cfg);
    add_common_flags(budget, cfg, config_path);
    budget->add_option("--budgets", budgets, "budget grid")->delimiter(',');
    budget->add_option("--walks", cfg.walks, "walks per budget")->check(CLI::PositiveNumber);
    budget->add_option("--tau-max", cfg.tau_max, "coverage at which each walk stops");
    budget->add_option("--baseline", cfg.baseline, "earlier budget.csv to compare against (tolerance 0.02)");

    auto* stats_cmd = app.add_subcommand("stats", "n, m, clustering, diameter and degree histogram");
    add_graph_flags(stats_cmd, cfg);
    add_common_flags(stats_cmd, cfg, config_path);

    auto* oracle = app.add_subcommand("oracle", "exact partial cover time next to a Monte-Carlo estimate");
    add_graph_flags(oracle, cfg);
    add_common_flags(oracle, cfg, config_path);
    oracle->add_option("--strategies", strategies, "first entry is used: srw, ad or mdw")->delimiter(',');
    oracle->add_option("--tau", cfg.tau);
    oracle->add_option("--start", start, "fixed start node (default: every node)");
    oracle->add_option("--oracle-trials", cfg.oracle_trials, "Monte-Carlo trials per start");

    auto* stopping = app.add_subcommand("stopping", "expected reward of the cutoff rule and its optimal cutoff");
    add_common_flags(stopping, cfg, config_path);
    stopping->add_option("--weight", cfg.weight, "constant or exp");
    stopping->add_option("--theta", cfg.theta, "decay of the exponential weight");
    stopping->add_option("--c", cfg.c, "constant weight");
    stopping->add_option("--n", cfg.n, "number of candidates N");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    if (!strategies.empty())
        cfg.strategies = strategies;
    if (!budgets.empty())
        cfg.budgets = budgets;
    if (start >= 0)
        cfg.start = static_cast<NodeId>(start);

    try {
        if (compare->parsed())
            return run_compare_cmd(cfg);
        if (budget->parsed())
            return run_budget_cmd(cfg);
        if (stats_cmd->parsed())
            return run_stats_cmd(cfg);
        if (oracle->parsed())
            return run_oracle_cmd(cfg);
        return run_stopping_cmd(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const EstimateError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_statistical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
}
