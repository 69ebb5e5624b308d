#include "covertime/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "parallel.hpp"

namespace covertime {

std::size_t coverage_threshold(double tau, std::size_t n) {
    return static_cast<std::size_t>(std::floor(tau * static_cast<double>(n) + 1e-9));
}

void check_tau_grid(std::span<const double> taus) {
    if (taus.empty())
        throw std::invalid_argument("tau grid is empty");
    for (std::size_t k = 0; k < taus.size(); ++k) {
        if (!(taus[k] > 0.0 && taus[k] <= 1.0))
            throw std::invalid_argument(fmt::format("tau {} is outside (0, 1]", taus[k]));
        if (k > 0 && !(taus[k] > taus[k - 1]))
            throw std::invalid_argument("tau grid must be strictly ascending");
    }
}

std::vector<double> make_tau_grid(double tau_min, double tau_max, double step) {
    if (!(tau_min > 0.0 && tau_min <= tau_max && tau_max <= 1.0 && step > 0.0))
        throw std::invalid_argument(
            fmt::format("bad tau grid: min={} max={} step={} (need 0 < min <= max <= 1, step > 0)", tau_min, tau_max,
                        step));
    std::vector<double> grid;
    for (std::size_t k = 0;; ++k) {
        // Multiply instead of accumulating so 0.01 steps do not drift.
        const double tau = tau_min + static_cast<double>(k) * step;
        if (tau > tau_max + 1e-9)
            break;
        grid.push_back(std::min(tau, 1.0));
    }
    return grid;
}

std::uint64_t default_step_cap(const Graph& g) {
    return 64 * static_cast<std::uint64_t>(g.size()) * static_cast<std::uint64_t>(g.order());
}

TrialResult run_trial(const Graph& g, const StrategySpec& spec, NodeId start, std::span<const double> taus, Rng& rng,
                      std::uint64_t step_cap) {
    check_tau_grid(taus);
    const std::size_t n = g.order();
    if (step_cap == 0)
        step_cap = default_step_cap(g);

    TrialResult result;
    result.start = start;
    result.steps_at_tau.assign(taus.size(), 0);

    WalkState state(g, start, needs_edge_marks(spec));
    std::size_t next = 0;
    auto record = [&] {
        while (next < taus.size() && state.visited_count() >= coverage_threshold(taus[next], n))
            result.steps_at_tau[next++] = state.steps();
    };
    record();
    while (next < taus.size()) {
        if (state.steps() >= step_cap) {
            result.truncated = true;
            break;
        }
        step(g, state, spec, rng);
        record();
    }
    result.inspections = state.inspections();
    return result;
}

namespace {

__extension__ using u128 = unsigned __int128;

/// Exact integer moments of a set of step counts.
struct Moments {
    std::uint64_t count = 0;
    std::uint64_t sum = 0;
    u128 sum_sq = 0;

    void add(std::uint64_t x) {
        ++count;
        sum += x;
        sum_sq += static_cast<u128>(x) * x;
    }
    double mean() const { return static_cast<double>(sum) / static_cast<double>(count); }
    double stddev() const {
        if (count < 2)
            return 0.0;
        // (T sum_sq - sum^2) / (T (T - 1)), numerator exact.
        const auto num = static_cast<u128>(count) * sum_sq - static_cast<u128>(sum) * sum;
        const double var = static_cast<double>(num) / (static_cast<double>(count) * static_cast<double>(count - 1));
        return std::sqrt(var);
    }
};

} // namespace

MultiStartEstimate estimate_multi_start(const Graph& g, const StrategySpec& spec, std::span<const NodeId> starts,
                                        std::span<const double> taus, const EstimateOptions& options) {
    check_tau_grid(taus);
    if (options.trials < 1)
        throw std::invalid_argument("trial count must be at least 1");
    if (starts.empty())
        throw std::invalid_argument("start set is empty");
    for (NodeId s : starts)
        if (s >= g.order())
            throw std::invalid_argument(fmt::format("start node {} is out of range", s));

    const std::size_t trials = options.trials;
    std::vector<TrialResult> results(starts.size() * trials);
    detail::parallel_for(results.size(), options.threads, [&](std::size_t job) {
        const NodeId start = starts[job / trials];
        Rng rng(derive_seed(options.seed, start, job % trials));
        results[job] = run_trial(g, spec, start, taus, rng, options.step_cap);
    });

    MultiStartEstimate out;
    out.starts.assign(starts.begin(), starts.end());
    CoverCurve& curve = out.pooled;
    curve.spec = spec;
    curve.n = g.order();
    curve.m = g.size();

    std::vector<Moments> pooled(taus.size());
    std::uint64_t inspections = 0;
    for (std::size_t s = 0; s < starts.size(); ++s) {
        std::vector<Moments> local(taus.size());
        for (std::size_t l = 0; l < trials; ++l) {
            const auto& r = results[s * trials + l];
            if (r.truncated) {
                ++curve.truncated;
                continue;
            }
            inspections += r.inspections;
            for (std::size_t t = 0; t < taus.size(); ++t) {
                local[t].add(r.steps_at_tau[t]);
                pooled[t].add(r.steps_at_tau[t]);
            }
        }
        std::vector<double> rho(taus.size(), std::nan(""));
        for (std::size_t t = 0; t < taus.size(); ++t)
            if (local[t].count > 0)
                rho[t] = local[t].mean();
        out.per_start_rho.push_back(std::move(rho));
    }
    if (pooled.front().count == 0)
        throw EstimateError(fmt::format("all {} trials of {} hit the step cap", results.size(), to_string(spec)));

    const auto completed = pooled.front().count;
    curve.mean_inspections = static_cast<double>(inspections) / static_cast<double>(completed);
    for (std::size_t t = 0; t < taus.size(); ++t) {
        CurvePoint p;
        p.tau = taus[t];
        p.rho = pooled[t].mean();
        p.c_tau = p.rho / static_cast<double>(curve.n);
        p.stddev = pooled[t].stddev();
        p.trials = static_cast<std::size_t>(pooled[t].count);
        curve.points.push_back(p);
    }
    return out;
}

CoverCurve estimate_curve(const Graph& g, const StrategySpec& spec, NodeId start, std::span<const double> taus,
                          const EstimateOptions& options) {
    const NodeId starts[] = {start};
    return estimate_multi_start(g, spec, starts, taus, options).pooled;
}

double estimate_pct_max(const Graph& g, const StrategySpec& spec, double tau, std::span<const NodeId> starts,
                        const EstimateOptions& options) {
    const double taus[] = {tau};
    const auto est = estimate_multi_start(g, spec, starts, taus, options);
    double best = -1.0;
    for (const auto& row : est.per_start_rho)
        if (!std::isnan(row[0]))
            best = std::max(best, row[0]);
    return best;
}

std::vector<NodeId> sample_starts(const Graph& g, std::size_t count, std::uint64_t seed) {
    const std::size_t n = g.order();
    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), NodeId{0});
    if (n <= 256 || count >= n)
        return all;
    Rng rng(derive_seed(seed, 0x5747415254ULL)); // separate stream from trial seeds
    for (std::size_t k = 0; k < count; ++k)
        std::swap(all[k], all[k + uniform_index(rng, n - k)]);
    all.resize(count);
    std::sort(all.begin(), all.end());
    return all;
}

const char* to_string(BoundVerdict v) {
    switch (v) {
    case BoundVerdict::pass:
        return "pass";
    case BoundVerdict::investigate:
        return "investigate";
    case BoundVerdict::inconclusive:
        return "inconclusive";
    }
    return "?";
}

BoundsReport check_bounds(const Graph& g, double estimate, bool truncated) {
    BoundsReport rep;
    const auto n = static_cast<double>(g.order());
    rep.estimate = estimate;
    rep.upper_bound = 2.0 * static_cast<double>(g.size()) * n;
    rep.lower_marker = 0.9 * n * std::log(n);
    if (truncated) {
        rep.upper = rep.lower = BoundVerdict::inconclusive;
        return rep;
    }
    rep.upper = estimate < rep.upper_bound ? BoundVerdict::pass : BoundVerdict::investigate;
    rep.lower = estimate > rep.lower_marker ? BoundVerdict::pass : BoundVerdict::investigate;
    rep.near_lower = estimate <= 1.1 * n * std::log(n);
    return rep;
}

std::string curve_csv_header() { return "strategy,tau,rho,c_tau,stddev,trials,n,m,truncated\n"; }

std::string curve_csv_rows(const CoverCurve& curve) {
    std::string out;
    const auto name = to_string(curve.spec);
    for (const auto& p : curve.points)
        out += fmt::format("{},{:.4f},{:.6f},{:.8f},{:.6f},{},{},{},{}\n", name, p.tau, p.rho, p.c_tau, p.stddev,
                           p.trials, curve.n, curve.m, curve.truncated);
    return out;
}

} // namespace covertime
