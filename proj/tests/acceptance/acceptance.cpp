// Acceptance checks, one PASS/FAIL line per criterion. Seeds and tolerances
// are fixed below; the process exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "covertime/budget.hpp"
#include "covertime/estimator.hpp"
#include "covertime/experiment.hpp"
#include "covertime/generators.hpp"
#include "covertime/oracle.hpp"
#include "covertime/stopping.hpp"
#include "covertime/strategy.hpp"
#include "support/independent.hpp"
#include "support/walk_helpers.hpp"

using namespace covertime;

namespace {

constexpr std::uint64_t master_seed = 20240501;

// 1: oracle equivalence
constexpr std::size_t c1_trials = 10000;
constexpr double c1_sigmas = 3.0;
// 2: exact values
constexpr double c2_tol = 1e-9;
// 3: reduction identities
constexpr std::size_t c3_samples = 100000;
constexpr double c3_alpha = 0.001;
// 4: budget closed form
constexpr double c4_gap = 0.02;
constexpr std::size_t c4_min_samples = 1000;
constexpr std::size_t c4_walks = 200000;
// 5 and 9: desk-scale ranking
constexpr std::size_t c5_nodes = 5000;
constexpr std::size_t c5_attach = 2;
constexpr std::uint64_t c5_graph_seed = 1;
constexpr std::size_t c5_trials = 10;
constexpr std::size_t c5_starts = 32;
constexpr double c5_tau = 0.2;
constexpr std::size_t c5_seeds = 10;
constexpr std::size_t c5_required = 9;
constexpr double c9_spread = 0.10;
// 6: 2mn sanity
constexpr std::size_t c6_trials = 400;
constexpr double c6_sigmas = 3.0;
// 7: stopping rule
constexpr double c7_rel_tol = 1e-12;
constexpr std::size_t c7_fuzz = 1000;

struct Outcome {
    bool pass = true;
    std::string detail;
    bool warn_only = false;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct NamedGraph {
    std::string name;
    Graph graph;
};

std::vector<NamedGraph> oracle_graphs() {
    std::vector<NamedGraph> out;
    for (const auto& spec : {GeneratorSpec{gen::Complete{4}}, GeneratorSpec{gen::Complete{5}},
                             GeneratorSpec{gen::Complete{6}}, GeneratorSpec{gen::Star{5}}, GeneratorSpec{gen::Path{5}},
                             GeneratorSpec{gen::Hypercube{3}}, GeneratorSpec{gen::Lollipop{4, 3}}})
        out.push_back({to_string(spec), generate(spec)});
    return out;
}

Outcome criterion_1() {
    const auto t0 = Clock::now();
    const StrategySpec specs[] = {strategy::Srw{}, strategy::AllDegrees{}, strategy::MinDegreeWeighting{}};
    const double taus[] = {0.5, 1.0};
    std::size_t checks = 0, failures = 0, random_checks = 0;
    double worst_z = 0.0, sum_z2 = 0.0;
    std::string worst;
    const auto graphs = oracle_graphs();
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const auto& g = graphs[gi].graph;
        for (std::size_t si = 0; si < std::size(specs); ++si) {
            EstimateOptions opt;
            opt.trials = c1_trials;
            opt.seed = derive_seed(master_seed, gi, si);
            for (NodeId s = 0; s < g.order(); ++s) {
                const auto curve = estimate_curve(g, specs[si], s, taus, opt);
                for (std::size_t t = 0; t < std::size(taus); ++t) {
                    const double exact = oracle_pct(g, specs[si], s, taus[t]);
                    const auto& p = curve.points[t];
                    const double se = p.stddev / std::sqrt(static_cast<double>(p.trials));
                    const double diff = std::abs(p.rho - exact);
                    const double z = se > 0.0 ? diff / se : (diff <= 1e-9 ? 0.0 : INFINITY);
                    ++checks;
                    if (se > 0.0) {
                        ++random_checks;
                        sum_z2 += z * z;
                    }
                    if (z > c1_sigmas)
                        ++failures;
                    if (z > worst_z) {
                        worst_z = z;
                        worst = fmt::format("{} {} start {} tau {}: mc {:.4f} exact {:.4f}", graphs[gi].name,
                                            to_string(specs[si]), s, taus[t], p.rho, exact);
                    }
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    Outcome o;
    o.pass = failures == 0 && secs < 120.0;
    // two-sided normal tail beyond c1_sigmas
    const double tail = std::erfc(c1_sigmas / std::sqrt(2.0));
    o.detail = fmt::format("{} checks, {} beyond {} SE (about {:.2f} expected by chance), mean z^2 {:.3f}, "
                           "max |z| {:.2f} ({}), {:.1f}s",
                           checks, failures, c1_sigmas, tail * random_checks,
                           random_checks ? sum_z2 / random_checks : 0.0, worst_z, worst, secs);
    return o;
}

Outcome criterion_2() {
    const auto k4 = generate(gen::Complete{4});
    const double pct = oracle_pct(k4, strategy::Srw{}, 0, 1.0);
    double worst_hit = 0.0;
    for (NodeId i = 0; i < 4; ++i)
        for (NodeId j = 0; j < 4; ++j)
            if (i != j)
                worst_hit = std::max(worst_hit, std::abs(oracle_hitting_time(k4, strategy::Srw{}, i, j) - 3.0));
    // Coupon collector: 3 (1 + 1/2 + 1/3).
    const double coupon = 3.0 * (1.0 + 1.0 / 2.0 + 1.0 / 3.0);
    Outcome o;
    o.pass = std::abs(pct - 5.5) <= c2_tol && std::abs(coupon - 5.5) <= c2_tol && worst_hit <= c2_tol;
    o.detail = fmt::format("oracle_pct = {:.12f}, max |hitting - 3| = {:.2e}", pct, worst_hit);
    return o;
}

/// Counts of the node reached after `steps` moves from `start`, next to the
/// exact distribution from powers of the reference SRW matrix.
struct EndpointCheck {
    std::vector<std::size_t> observed;
    std::vector<double> expected;
};

EndpointCheck endpoint_distribution(const Graph& g, const StrategySpec& spec, NodeId start, std::size_t steps,
                                    std::uint64_t seed) {
    const std::size_t n = g.order();
    EndpointCheck out;
    out.observed.assign(n, 0);
    Rng rng(seed);
    for (std::size_t i = 0; i < c3_samples; ++i) {
        WalkState s(g, start, needs_edge_marks(spec));
        for (std::size_t k = 0; k < steps; ++k)
            step(g, s, spec, rng);
        ++out.observed[s.current()];
    }
    std::vector<double> dist(n, 0.0);
    dist[start] = 1.0;
    for (std::size_t k = 0; k < steps; ++k) {
        std::vector<double> next(n, 0.0);
        for (NodeId v = 0; v < n; ++v) {
            const auto row = testing::reference_row(g, v, testing::Rule::srw);
            const auto nb = g.neighbors(v);
            for (std::size_t j = 0; j < nb.size(); ++j)
                next[nb[j]] += dist[v] * row[j];
        }
        dist = std::move(next);
    }
    out.expected = std::move(dist);
    return out;
}

std::vector<std::size_t> one_step_counts(const Graph& g, const WalkState& s, const StrategySpec& spec,
                                         std::uint64_t seed) {
    const auto nb = g.neighbors(s.current());
    std::vector<std::size_t> counts(nb.size(), 0);
    Rng rng(seed);
    for (std::size_t i = 0; i < c3_samples; ++i) {
        const auto m = choose(g, s, spec, rng);
        ++counts[m.slot];
    }
    return counts;
}

Outcome criterion_3() {
    std::vector<std::string> failed;
    std::size_t tests = 0;
    double min_p = 1.0;
    auto record = [&](const std::string& name, double p) {
        ++tests;
        min_p = std::min(min_p, p);
        if (p <= c3_alpha)
            failed.push_back(fmt::format("{} (p={:.2e})", name, p));
    };
    std::uint64_t stream = 0;

    // RWC(1) against SRW: one step from every node after a scripted history
    // that gives the nodes unequal visit counts, and 4-step endpoints.
    const auto lolli = generate(gen::Lollipop{3, 3});
    for (NodeId v = 0; v < lolli.order(); ++v) {
        WalkState s(lolli, 0);
        for (NodeId x : {1u, 2u, 3u, 2u, 0u, 2u, 3u, 4u, 5u, 4u, 3u})
            s.advance(lolli, testing::move_to(lolli, s, x));
        while (s.current() != v) {
            const auto path = bfs_distances(lolli, v);
            for (auto u : lolli.neighbors(s.current()))
                if (path[u] + 1 == path[s.current()]) {
                    s.advance(lolli, testing::move_to(lolli, s, u));
                    break;
                }
        }
        const auto counts = one_step_counts(lolli, s, strategy::WithChoice{1}, derive_seed(master_seed, 3, ++stream));
        record(fmt::format("rwc:d=1 step at node {}", v),
               testing::chi_square_p_value(counts, testing::reference_row(lolli, v, testing::Rule::srw)));
    }
    for (NodeId start : {0u, 5u}) {
        const auto e = endpoint_distribution(lolli, strategy::WithChoice{1}, start, 4,
                                             derive_seed(master_seed, 3, ++stream));
        record(fmt::format("rwc:d=1 4-step endpoint from {}", start), testing::chi_square_p_value(e.observed, e.expected));
    }

    // MD with B >= d_max: unique minimum-degree unvisited neighbor every time.
    // Degrees: 0:3, 1:1, 2:3, 3:4, 4:2, 5:1.
    std::vector<std::pair<NodeId, NodeId>> edges = {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {2, 4}, {3, 4}, {3, 5}};
    const Graph md_graph(6, edges);
    std::size_t md_draws = 0, md_hits = 0;
    for (auto [start, expected] : {std::pair<NodeId, NodeId>{0, 1}, std::pair<NodeId, NodeId>{3, 5},
                                   std::pair<NodeId, NodeId>{2, 4}}) {
        WalkState s(md_graph, start);
        for (std::uint32_t b : {md_graph.max_degree(), md_graph.max_degree() + 3}) {
            Rng rng(derive_seed(master_seed, 3, ++stream));
            for (std::size_t i = 0; i < c3_samples; ++i) {
                ++md_draws;
                md_hits += md_step(md_graph, s, b, rng).node == expected;
            }
        }
    }
    ++tests;
    if (md_hits != md_draws)
        failed.push_back(fmt::format("md B>=d_max picked the minimum {}/{} times", md_hits, md_draws));

    // Hypercube(3): AD and MDW against SRW.
    const auto q3 = generate(gen::Hypercube{3});
    for (const auto& [name, spec] : {std::pair<std::string, StrategySpec>{"ad", strategy::AllDegrees{}},
                                     std::pair<std::string, StrategySpec>{"mdw", strategy::MinDegreeWeighting{}}}) {
        for (NodeId v : {0u, 5u}) {
            WalkState s(q3, v);
            const auto counts = one_step_counts(q3, s, spec, derive_seed(master_seed, 3, ++stream));
            record(fmt::format("{} step at hypercube node {}", name, v),
                   testing::chi_square_p_value(counts, std::vector<double>(3, 1.0 / 3.0)));
        }
        const auto e = endpoint_distribution(q3, spec, 0, 3, derive_seed(master_seed, 3, ++stream));
        record(fmt::format("{} 3-step endpoint on hypercube", name), testing::chi_square_p_value(e.observed, e.expected));
    }

    Outcome o;
    o.pass = failed.empty();
    o.detail = fmt::format("{} tests at alpha {}, {} samples each, min p {:.4f}; md exact {}/{}", tests, c3_alpha,
                           c3_samples, min_p, md_hits, md_draws);
    for (const auto& f : failed)
        o.detail += "; FAILED " + f;
    return o;
}

Outcome criterion_4() {
    bool closed_ok = closed_form_p(4, 2, 1) == 0.5;
    for (std::size_t l = 1; l <= 60 && closed_ok; ++l)
        for (std::size_t b = l; b <= l + 5; ++b)
            for (std::size_t m = 1; m <= l; ++m)
                closed_ok = closed_ok && closed_form_p(l, b, m) == 1.0;

    // A lattice has few (|L|, multiplicity) strata, so with many walks every
    // non-trivial stratum above the sample floor is large.
    const auto g = generate(gen::Mesh3d{6, 6, 6});
    ProbeOptions opt;
    opt.walks = c4_walks;
    opt.seed = derive_seed(master_seed, 4);
    opt.tau = 0.5;
    std::size_t strata_checked = 0, forced_violations = 0, smallest = SIZE_MAX;
    double max_gap = 0.0;
    std::string worst;
    for (std::uint32_t b : {1u, 2u, 3u, 5u}) {
        const auto strata = probe_strata(g, b, opt);
        for (const auto& s : strata) {
            if (closed_form_p(s.l_size, b, s.multiplicity) == 1.0) {
                forced_violations += s.hits != s.samples;
                continue;
            }
            if (s.samples >= c4_min_samples)
                smallest = std::min(smallest, s.samples);
        }
        const auto gap = empirical_vs_closed_form(strata, b, c4_min_samples);
        strata_checked += gap.strata_checked;
        if (gap.max_gap >= max_gap) {
            max_gap = gap.max_gap;
            worst = fmt::format("B={} |L|={} mult={} n={}", b, gap.worst.l_size, gap.worst.multiplicity,
                                gap.worst.samples);
        }
    }
    Outcome o;
    o.pass = closed_ok && forced_violations == 0 && strata_checked > 0 && max_gap < c4_gap;
    o.detail = fmt::format("closed_form_p(4,2,1) exact and p=1 for B>=|L|: {}; {} strata with >= {} samples "
                           "(smallest with p < 1: {}), max gap {:.4f} at {}; strata with p = 1 but a miss: {}",
                           closed_ok ? "yes" : "no", strata_checked, c4_min_samples, smallest, max_gap, worst,
                           forced_violations);
    return o;
}

struct RankingRun {
    // srw, ep, ad, rwc3, md5
    std::array<double, 5> c{};
};

std::vector<RankingRun> ranking_runs(double* seconds) {
    const auto t0 = Clock::now();
    const auto g = generate(gen::BarabasiAlbert{c5_nodes, c5_attach, c5_graph_seed});
    const StrategySpec specs[] = {strategy::Srw{}, strategy::EdgeProcess{}, strategy::AllDegrees{},
                                  strategy::WithChoice{3}, strategy::MinDegree{5}};
    const double taus[] = {c5_tau};
    std::vector<RankingRun> runs;
    for (std::uint64_t k = 1; k <= c5_seeds; ++k) {
        const std::uint64_t seed = derive_seed(master_seed, 5, k);
        const auto starts = sample_starts(g, c5_starts, seed);
        EstimateOptions opt;
        opt.trials = c5_trials;
        opt.seed = seed;
        RankingRun run;
        for (std::size_t i = 0; i < std::size(specs); ++i)
            run.c[i] = estimate_multi_start(g, specs[i], starts, taus, opt).pooled.points[0].c_tau;
        runs.push_back(run);
    }
    *seconds = seconds_since(t0);
    return runs;
}

Outcome criterion_5(const std::vector<RankingRun>& runs, double secs) {
    std::size_t ordered = 0;
    std::string per_seed;
    for (const auto& r : runs) {
        const auto [srw, ep, ad, rwc, md] = r.c;
        const bool ok = md < ep && ep < srw && md < ad && md < rwc;
        ordered += ok;
        per_seed += ok ? '+' : '-';
    }
    double mean[5] = {};
    for (const auto& r : runs)
        for (int i = 0; i < 5; ++i)
            mean[i] += r.c[i] / static_cast<double>(runs.size());
    Outcome o;
    o.pass = ordered >= c5_required && secs < 300.0;
    o.detail = fmt::format("ordering held for {}/{} seeds [{}]; mean C(0.2): md {:.4f} ep {:.4f} srw {:.4f} ad {:.4f} "
                           "rwc3 {:.4f}; {:.1f}s",
                           ordered, runs.size(), per_seed, mean[4], mean[1], mean[0], mean[2], mean[3], secs);
    return o;
}

Outcome criterion_9(const std::vector<RankingRun>& runs) {
    const char* names[] = {"srw", "ep", "ad", "rwc3", "md"};
    double worst = 0.0;
    std::string parts;
    for (int i = 0; i < 5; ++i) {
        double lo = INFINITY, hi = 0.0, sum = 0.0;
        for (const auto& r : runs) {
            lo = std::min(lo, r.c[i]);
            hi = std::max(hi, r.c[i]);
            sum += r.c[i];
        }
        const double spread = (hi - lo) / (sum / static_cast<double>(runs.size()));
        worst = std::max(worst, spread);
        parts += fmt::format("{}{} {:.3f}", i ? ", " : "", names[i], spread);
    }
    Outcome o;
    o.warn_only = true;
    o.pass = worst < c9_spread;
    o.detail = fmt::format("relative spread (max-min)/mean of rho(0.2) over {} seeds with T={}: {}", runs.size(),
                           c5_trials, parts);
    if (!o.pass)
        o.detail += fmt::format("; above {:.0f}%, raise --trials", c9_spread * 100);
    return o;
}

Outcome criterion_6() {
    std::vector<NamedGraph> graphs = oracle_graphs();
    for (const auto& spec : {GeneratorSpec{gen::Mesh3d{3, 3, 3}}, GeneratorSpec{gen::Lollipop{8, 8}},
                             GeneratorSpec{gen::RandomGeometric{60, 0.2, 1}}, GeneratorSpec{gen::BarabasiAlbert{200, 2, 1}}})
        graphs.push_back({to_string(spec), generate(spec)});
    const StrategySpec specs[] = {strategy::Srw{},          strategy::EdgeProcess{},        strategy::AllDegrees{},
                                  strategy::MinDegreeWeighting{}, strategy::WithChoice{3}, strategy::MinDegree{5}};
    const double taus[] = {1.0};
    std::size_t total = 0, violations = 0, truncated = 0, flagged_runs = 0;
    std::string flagged;
    double worst_ratio = 0.0;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const auto& g = graphs[gi].graph;
        const double bound = 2.0 * static_cast<double>(g.size()) * static_cast<double>(g.order());
        const auto starts = sample_starts(g, 8, derive_seed(master_seed, 6, gi));
        for (std::size_t si = 0; si < std::size(specs); ++si) {
            std::size_t trials = 0, over = 0;
            double sum = 0.0;
            for (NodeId s : starts) {
                for (std::size_t t = 0; t < c6_trials / starts.size() + 1; ++t) {
                    Rng rng(derive_seed(derive_seed(master_seed, 6, gi * 16 + si), s, t));
                    const auto r = run_trial(g, specs[si], s, taus, rng);
                    if (r.truncated) {
                        ++truncated;
                        continue;
                    }
                    ++trials;
                    const double x = static_cast<double>(r.steps_at_tau[0]);
                    sum += x;
                    over += x >= bound;
                    worst_ratio = std::max(worst_ratio, x / bound);
                }
            }
            total += trials;
            violations += over;
            const double mean = sum / static_cast<double>(trials);
            // Markov: P(X >= 2mn) <= E[X] / 2mn.
            const double q = std::min(1.0, mean / bound);
            const double allowance =
                static_cast<double>(trials) * q + c6_sigmas * std::sqrt(static_cast<double>(trials) * q * (1 - q));
            if (mean >= bound || static_cast<double>(over) > allowance) {
                ++flagged_runs;
                flagged += fmt::format("; {} {}: {} of {} trials >= 2mn, mean/2mn {:.3f}", graphs[gi].name,
                                       to_string(specs[si]), over, trials, mean / bound);
            }
        }
    }
    Outcome o;
    o.pass = flagged_runs == 0;
    o.detail = fmt::format("{} completed tau=1 trials over {} graphs x {} strategies, {} at or above 2mn, "
                           "max steps/2mn {:.3f}, {} truncated{}",
                           total, graphs.size(), std::size(specs), violations, worst_ratio, truncated, flagged);
    return o;
}

Outcome criterion_7() {
    const auto c = optimal_cutoff(RewardModel(ConstantWeight{1.0}, 1000));
    const double ratio_gap = std::abs(static_cast<double>(c.r) / 1000.0 - 1.0 / std::numbers::e);
    const bool cutoff_ok = c.r >= 367 && c.r <= 370 && ratio_gap < 0.012;

    Rng rng(derive_seed(master_seed, 7));
    std::uniform_real_distribution<double> log_theta(std::log(0.1), std::log(100.0));
    double worst_rel = 0.0;
    for (std::size_t i = 0; i < c7_fuzz; ++i) {
        const double theta = std::exp(log_theta(rng));
        const std::size_t n = 3 + uniform_index(rng, 498);
        const std::size_t r = 2 + uniform_index(rng, n - 1);
        const RewardModel m(ExponentialWeight{theta}, n);
        const double a = expected_reward(m, r), b = expected_reward_direct(m, r);
        const double scale = std::max(std::abs(a), std::abs(b));
        if (scale > 0.0)
            worst_rel = std::max(worst_rel, std::abs(a - b) / scale);
        else if (a != b)
            worst_rel = INFINITY;
    }

    // All N! orders of distinct degrees, run through the library's rule on a
    // fan whose candidates have degrees 1..N.
    std::size_t orders = 0, mismatches = 0;
    for (std::size_t n = 2; n <= 8; ++n) {
        const auto g = testing::distinct_degree_fan(n);
        for (std::size_t r = 2; r <= n; ++r) {
            std::vector<NodeId> arrival(n);
            std::iota(arrival.begin(), arrival.end(), 1u);
            std::vector<std::uint64_t> stops(n + 1, 0);
            std::uint64_t wins = 0, count = 0;
            do {
                ++count;
                const auto pick = apply_cutoff_rule(g, arrival, r);
                if (pick.stopped_by_rule)
                    ++stops[pick.position];
                wins += pick.node == 1;
            } while (std::next_permutation(arrival.begin(), arrival.end()));
            orders += count;
            const auto brute = testing::brute_force_cutoff(n, r);
            // Rational checks: stops[k] / N! == (r-1) / (k(k-1)), and
            // wins / N! == (r-1)/N * sum_{k=r}^{N} 1/(k-1), scaled by lcm(1..7) = 420.
            std::uint64_t harmonic420 = 0;
            for (std::size_t k = r; k <= n; ++k) {
                const auto f = success_probability(r, k, n);
                mismatches += stops[k] * f.den != f.num * count;
                mismatches += stops[k] * k * (k - 1) != (r - 1) * count;
                mismatches += stops[k] != brute.stops[k];
                harmonic420 += 420 / (k - 1);
            }
            mismatches += wins * n * 420 != (r - 1) * count * harmonic420;
            mismatches += wins != brute.wins;
            mismatches += count != testing::factorial(n);
        }
    }
    Outcome o;
    o.pass = cutoff_ok && worst_rel <= c7_rel_tol && mismatches == 0;
    o.detail = fmt::format("r*(N=1000) = {}, |r*/N - 1/e| = {:.4f}; exponential closed vs direct over {} triples: "
                           "max rel {:.2e}; permutation oracle: {} orders, {} mismatches",
                           c.r, ratio_gap, c7_fuzz, worst_rel, orders, mismatches);
    return o;
}

Outcome criterion_8() {
    ExperimentConfig cfg;
    cfg.generator = "ba:n=2000,k=2,seed=5";
    cfg.seed = derive_seed(master_seed, 8);
    cfg.threads = 1;
    cfg.trials = 10;
    std::ostringstream log;
    const auto lg = load_graph(cfg, log);
    const auto a = run_compare(cfg, lg, log);
    const auto b = run_compare(cfg, lg, log);
    cfg.threads = 4;
    const auto c = run_compare(cfg, lg, log);
    Outcome o;
    o.pass = a.curve_csv == b.curve_csv && a.pct_max_csv == b.pct_max_csv && a.svg == b.svg;
    o.detail = fmt::format("two single-thread runs: {} CSV bytes {}; 4 threads {}", a.curve_csv.size(),
                           a.curve_csv == b.curve_csv ? "identical" : "DIFFER",
                           a.curve_csv == c.curve_csv ? "also identical" : "differs");
    return o;
}

} // namespace

int main() {
    bool all = true;
    auto report = [&](int id, const char* name, const Outcome& o) {
        const char* tag = o.pass ? "PASS" : (o.warn_only ? "WARN" : "FAIL");
        std::printf("[%s] criterion %d, %s: %s\n", tag, id, name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass && !o.warn_only)
            all = false;
    };
    auto guarded = [](const std::function<Outcome()>& f) {
        try {
            return f();
        } catch (const std::exception& e) {
            return Outcome{false, std::string("exception: ") + e.what()};
        }
    };

    report(1, "oracle equivalence", guarded(criterion_1));
    report(2, "exact values", guarded(criterion_2));
    report(3, "reduction identities", guarded(criterion_3));
    report(4, "budget closed form", guarded(criterion_4));
    double secs = 0.0;
    std::vector<RankingRun> runs;
    const auto c5 = guarded([&] {
        runs = ranking_runs(&secs);
        return criterion_5(runs, secs);
    });
    report(5, "desk-scale ranking", c5);
    report(6, "2mn sanity", guarded(criterion_6));
    report(7, "stopping rule", guarded(criterion_7));
    report(8, "determinism", guarded(criterion_8));
    report(9, "convergence at T=10", runs.empty() ? Outcome{false, "no ranking runs", true} : criterion_9(runs));
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
