#include "covertime/budget.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

#include "covertime/estimator.hpp"
#include "covertime/rng.hpp"
#include "covertime/strategy.hpp"
#include "parallel.hpp"

namespace covertime {

double closed_form_p(std::size_t l_size, std::size_t budget, std::size_t multiplicity) {
    if (budget < 1 || multiplicity < 1 || multiplicity > l_size)
        throw std::invalid_argument(fmt::format("closed_form_p needs B >= 1 and 1 <= multiplicity <= |L|; got "
                                                "|L|={} B={} multiplicity={}",
                                                l_size, budget, multiplicity));
    if (budget >= l_size || budget > l_size - multiplicity)
        return 1.0;
    // C(l-m, B) / C(l, B) = prod_{i<B} (l-m-i) / (l-i)
    long double miss = 1.0L;
    for (std::size_t i = 0; i < budget; ++i)
        miss *= static_cast<long double>(l_size - multiplicity - i) / static_cast<long double>(l_size - i);
    return static_cast<double>(1.0L - miss);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + '"';
}

using StrataMap = std::map<std::pair<std::size_t, std::size_t>, Stratum>;

struct WalkTally {
    std::size_t decisions = 0;
    std::size_t hits = 0;
    std::size_t forced = 0;
    StrataMap strata;
};

WalkTally run_probe_walk(const Graph& g, std::uint32_t budget, NodeId start, std::size_t target, std::uint64_t seed,
                         bool keep_strata) {
    WalkTally tally;
    Rng rng(seed);
    WalkState state(g, start);
    const std::uint64_t cap = default_step_cap(g);
    while (state.visited_count() < target && state.steps() < cap) {
        MdDecision d;
        const Move move = md_step(g, state, budget, rng, &d);
        if (d.had_unvisited) {
            ++tally.decisions;
            tally.hits += d.hit_minimum ? 1 : 0;
            tally.forced += d.unvisited <= budget ? 1 : 0;
            if (keep_strata) {
                auto& s = tally.strata[{d.unvisited, d.multiplicity}];
                s.l_size = d.unvisited;
                s.multiplicity = d.multiplicity;
                ++s.samples;
                s.hits += d.hit_minimum ? 1 : 0;
            }
        }
        state.advance(g, move);
    }
    return tally;
}

std::vector<WalkTally> run_probe(const Graph& g, std::uint32_t budget, const ProbeOptions& options, bool keep_strata) {
    if (options.walks < 1)
        throw std::invalid_argument("probe needs at least one walk");
    if (budget < 1)
        throw std::invalid_argument("budget must be at least 1");
    const std::size_t target = std::max<std::size_t>(1, coverage_threshold(options.tau, g.order()));
    std::vector<WalkTally> tallies(options.walks);
    // Same starts for every budget; the walk stream depends on (seed, budget, walk).
    Rng start_rng(derive_seed(options.seed, 0x5354415254ULL));
    std::vector<NodeId> starts(options.walks);
    for (auto& s : starts)
        s = static_cast<NodeId>(uniform_index(start_rng, g.order()));
    detail::parallel_for(options.walks, options.threads, [&](std::size_t w) {
        tallies[w] = run_probe_walk(g, budget, starts[w], target, derive_seed(options.seed, budget, w), keep_strata);
    });
    return tallies;
}

} // namespace

BudgetProbe probe_graph(const Graph& g, const std::string& label, std::span<const std::uint32_t> budgets,
                        const ProbeOptions& options) {
    BudgetProbe probe;
    probe.graph = label;
    for (auto b : budgets) {
        BudgetPoint point;
        point.budget = b;
        std::size_t hits = 0;
        for (const auto& t : run_probe(g, b, options, false)) {
            point.decision_points += t.decisions;
            point.forced += t.forced;
            hits += t.hits;
        }
        point.p = point.decision_points ? static_cast<double>(hits) / static_cast<double>(point.decision_points) : 1.0;
        probe.points.push_back(point);
    }
    return probe;
}

std::vector<Stratum> probe_strata(const Graph& g, std::uint32_t budget, const ProbeOptions& options) {
    StrataMap merged;
    for (const auto& t : run_probe(g, budget, options, true)) {
        for (const auto& [key, s] : t.strata) {
            auto& m = merged[key];
            m.l_size = s.l_size;
            m.multiplicity = s.multiplicity;
            m.samples += s.samples;
            m.hits += s.hits;
        }
    }
    std::vector<Stratum> out;
    for (const auto& [key, s] : merged)
        out.push_back(s);
    return out;
}

StratumGap empirical_vs_closed_form(std::span<const Stratum> strata, std::uint32_t budget, std::size_t min_samples) {
    StratumGap gap;
    for (const auto& s : strata) {
        if (s.samples < min_samples)
            continue;
        ++gap.strata_checked;
        const double d = std::abs(s.empirical() - closed_form_p(s.l_size, budget, s.multiplicity));
        if (d >= gap.max_gap) {
            gap.max_gap = d;
            gap.worst = s;
        }
    }
    return gap;
}

std::string budget_csv_header() { return "graph,B,p,decision_points\n"; }

std::string budget_csv_rows(const BudgetProbe& probe) {
    std::string out;
    const auto label = csv_field(probe.graph);
    for (const auto& p : probe.points)
        out += fmt::format("{},{},{:.6f},{}\n", label, p.budget, p.p, p.decision_points);
    return out;
}

} // namespace covertime
