#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "covertime/budget.hpp"
#include "covertime/estimator.hpp"
#include "covertime/graph.hpp"
#include "covertime/stopping.hpp"
#include "covertime/strategy.hpp"

// Experiment drivers behind the command-line tool. Each run_* function is
// deterministic for a fixed configuration and returns its CSV/SVG payloads.

namespace covertime {

/// Bad user input; the tool maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string graph_path;
    std::string generator;
    /// "md" and "rwc" without parameters pick up budget and rwc_d.
    std::vector<std::string> strategies = {"srw", "ep", "ad", "rwc", "md"};
    double tau_min = 0.01;
    double tau_max = 0.30;
    double tau_step = 0.01;
    std::size_t trials = 10;
    std::uint32_t budget = 5;
    std::uint32_t rwc_d = 3;
    std::optional<NodeId> start;
    std::size_t starts = 32;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    std::string out_dir;

    // budget
    std::vector<std::uint32_t> budgets = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 16, 18, 20};
    std::size_t walks = 100;
    std::string baseline;

    // oracle
    double tau = 1.0;
    std::size_t oracle_trials = 10000;

    // stopping
    std::string weight = "constant";
    double theta = 5.0;
    double c = 1.0;
    std::size_t n = 100;
};

/// Reads "key = value" lines ('#' comments, blank lines allowed). Keys match
/// the long flag names without dashes, e.g. "tau-min = 0.05",
/// "strategies = srw,md:B=5". Throws ConfigError on unknown keys or bad values.
void apply_config_file(const std::string& path, ExperimentConfig& config);
void apply_config_text(const std::string& text, ExperimentConfig& config);

/// Resolves the strategy names, filling defaults for bare "md" and "rwc".
std::vector<StrategySpec> resolve_strategies(const ExperimentConfig& config);

struct LoadedGraph {
    Graph graph;
    std::string label;
};

/// Loads --graph or builds --gen (exactly one must be set). Warnings about
/// dropped components go to `log`. Throws ConfigError.
LoadedGraph load_graph(const ExperimentConfig& config, std::ostream& log);

struct CompareResult {
    std::vector<CoverCurve> curves;
    std::string curve_csv;
    /// "strategy,tau,pct_max,starts": max over starts of the per-start mean.
    std::string pct_max_csv;
    std::string svg;
};

/// Throws EstimateError when a strategy has only truncated trials.
CompareResult run_compare(const ExperimentConfig& config, const LoadedGraph& graph, std::ostream& log);

struct BudgetResult {
    BudgetProbe probe;
    std::string csv;
    std::string svg;
};

BudgetResult run_budget(const ExperimentConfig& config, const LoadedGraph& graph);

/// Largest |p - baseline p| over rows present in both (graph, B) CSVs;
/// nullopt when they share no row.
std::optional<double> budget_baseline_gap(const std::string& current_csv, const std::string& baseline_csv);

struct StatsResult {
    GraphStats stats;
    std::string stats_csv;
    /// "degree,count"
    std::string histogram_csv;
};

/// Exact diameter for n <= 10000, double-sweep bound above.
StatsResult run_stats(const LoadedGraph& graph);

struct OracleRow {
    NodeId start = 0;
    double exact = 0.0;
    double mc_mean = 0.0;
    double mc_stderr = 0.0;
    bool agrees = true; // within 3 standard errors
};

struct OracleResult {
    std::vector<OracleRow> rows;
    /// "start,exact,mc_mean,mc_stderr,z,within_3se"
    std::string csv;
    bool all_agree = true;
};

/// Exact partial cover time per start (fixed start or every node) next to a
/// Monte-Carlo mean over oracle_trials walks. Uses the first strategy.
OracleResult run_oracle(const ExperimentConfig& config, const LoadedGraph& graph);

struct StoppingResult {
    CutoffResult cutoff;
    /// "r,expected_reward"
    std::string csv;
    /// max relative |closed form - direct sum| over r.
    double max_relative_gap = 0.0;
};

StoppingResult run_stopping(const ExperimentConfig& config);

} // namespace covertime
