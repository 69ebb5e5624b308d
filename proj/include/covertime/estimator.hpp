#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "covertime/graph.hpp"
#include "covertime/rng.hpp"
#include "covertime/strategy.hpp"

namespace covertime {

class EstimateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Number of distinct nodes a walk must visit for fraction tau of n nodes:
/// floor(tau * n), guarded so that e.g. 0.29 * 100 yields 29.
std::size_t coverage_threshold(double tau, std::size_t n);

/// tau_min, tau_min + step, ... up to tau_max (inclusive within 1e-9).
/// Throws std::invalid_argument unless 0 < tau_min <= tau_max <= 1, step > 0.
std::vector<double> make_tau_grid(double tau_min, double tau_max, double step);

/// Throws std::invalid_argument unless the grid is non-empty, ascending and in (0, 1].
void check_tau_grid(std::span<const double> taus);

/// Default step cap per trial: 64 m n (32x the expected-cover-time bound 2mn).
std::uint64_t default_step_cap(const Graph& g);

struct TrialResult {
    NodeId start = 0;
    /// Moves made when the visited set first reached coverage_threshold(tau).
    /// The start node costs no move; thresholds 0 and 1 give 0.
    std::vector<std::uint64_t> steps_at_tau;
    std::uint64_t inspections = 0;
    bool truncated = false;
};

/// One walk from start that records every coverage threshold in a single
/// pass and stops at the largest. step_cap == 0 selects default_step_cap().
TrialResult run_trial(const Graph& g, const StrategySpec& spec, NodeId start, std::span<const double> taus, Rng& rng,
                      std::uint64_t step_cap = 0);

struct CurvePoint {
    double tau = 0.0;
    double rho = 0.0;    // mean moves over completed trials
    double c_tau = 0.0;  // rho / n
    double stddev = 0.0; // sample standard deviation (0 for a single trial)
    std::size_t trials = 0;
};

struct CoverCurve {
    StrategySpec spec;
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<CurvePoint> points;
    std::size_t truncated = 0;
    double mean_inspections = 0.0;
};

struct EstimateOptions {
    std::size_t trials = 10;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    std::uint64_t step_cap = 0;
};

/// Per-start means next to the pooled curve.
struct MultiStartEstimate {
    CoverCurve pooled;
    std::vector<NodeId> starts;
    /// per_start_rho[s][t]: mean over the trials of starts[s] at taus[t].
    std::vector<std::vector<double>> per_start_rho;
};

/// T independent trials per start. Trial l of start v draws from the stream
/// derive_seed(seed, v, l), and results are aggregated in (start, trial)
/// order, so the outcome does not depend on the thread count. Trials that
/// hit the step cap are excluded; throws EstimateError if none completes.
MultiStartEstimate estimate_multi_start(const Graph& g, const StrategySpec& spec, std::span<const NodeId> starts,
                                        std::span<const double> taus, const EstimateOptions& options);

CoverCurve estimate_curve(const Graph& g, const StrategySpec& spec, NodeId start, std::span<const double> taus,
                          const EstimateOptions& options);

/// max over starts of the per-start mean at tau.
double estimate_pct_max(const Graph& g, const StrategySpec& spec, double tau, std::span<const NodeId> starts,
                        const EstimateOptions& options);

/// All nodes when n <= 256 or count >= n; otherwise `count` distinct nodes
/// drawn uniformly, returned in ascending order.
std::vector<NodeId> sample_starts(const Graph& g, std::size_t count, std::uint64_t seed);

enum class BoundVerdict { pass, investigate, inconclusive };

const char* to_string(BoundVerdict v);

struct BoundsReport {
    double estimate = 0.0;
    double upper_bound = 0.0;  // 2 m n
    double lower_marker = 0.0; // 0.9 n ln n
    BoundVerdict upper = BoundVerdict::pass;
    BoundVerdict lower = BoundVerdict::pass;
    /// Estimate within 10% above n ln n, where complete graphs sit.
    bool near_lower = false;
};

/// Sanity report of a cover time estimate against 2mn and ~n ln n. Violations
/// are "investigate", never errors; truncated inputs are "inconclusive".
BoundsReport check_bounds(const Graph& g, double cover_time_estimate, bool truncated = false);

/// "strategy,tau,rho,c_tau,stddev,trials,n,m,truncated"
std::string curve_csv_header();
std::string curve_csv_rows(const CoverCurve& curve);

} // namespace covertime
