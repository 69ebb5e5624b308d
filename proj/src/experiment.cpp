#include "covertime/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "covertime/generators.hpp"
#include "covertime/oracle.hpp"
#include "covertime/svg_plot.hpp"

namespace covertime {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
        if (auto t = trim(item); !t.empty())
            out.push_back(t);
    return out;
}

template <class T>
T parse_value(const std::string& key, const std::string& value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError(fmt::format("config key '{}': cannot parse '{}'", key, value));
    return out;
}

} // namespace

void apply_config_text(const std::string& text, ExperimentConfig& cfg) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = trim(line.substr(0, line.find('#')));
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(fmt::format("config line {}: expected key = value", lineno));
        const auto key = trim(std::string_view(body).substr(0, eq));
        const auto value = trim(std::string_view(body).substr(eq + 1));

        if (key == "graph")
            cfg.graph_path = value;
        else if (key == "gen")
            cfg.generator = value;
        else if (key == "strategies")
            cfg.strategies = split_list(value);
        else if (key == "tau-min")
            cfg.tau_min = parse_value<double>(key, value);
        else if (key == "tau-max")
            cfg.tau_max = parse_value<double>(key, value);
        else if (key == "tau-step")
            cfg.tau_step = parse_value<double>(key, value);
        else if (key == "trials")
            cfg.trials = parse_value<std::size_t>(key, value);
        else if (key == "budget")
            cfg.budget = parse_value<std::uint32_t>(key, value);
        else if (key == "rwc-d")
            cfg.rwc_d = parse_value<std::uint32_t>(key, value);
        else if (key == "start")
            cfg.start = parse_value<NodeId>(key, value);
        else if (key == "starts")
            cfg.starts = parse_value<std::size_t>(key, value);
        else if (key == "seed")
            cfg.seed = parse_value<std::uint64_t>(key, value);
        else if (key == "threads")
            cfg.threads = parse_value<std::size_t>(key, value);
        else if (key == "out")
            cfg.out_dir = value;
        else if (key == "budgets") {
            cfg.budgets.clear();
            for (const auto& b : split_list(value))
                cfg.budgets.push_back(parse_value<std::uint32_t>(key, b));
        } else if (key == "walks")
            cfg.walks = parse_value<std::size_t>(key, value);
        else if (key == "baseline")
            cfg.baseline = value;
        else if (key == "tau")
            cfg.tau = parse_value<double>(key, value);
        else if (key == "oracle-trials")
            cfg.oracle_trials = parse_value<std::size_t>(key, value);
        else if (key == "weight")
            cfg.weight = value;
        else if (key == "theta")
            cfg.theta = parse_value<double>(key, value);
        else if (key == "c")
            cfg.c = parse_value<double>(key, value);
        else if (key == "n")
            cfg.n = parse_value<std::size_t>(key, value);
        else
            throw ConfigError(fmt::format("config line {}: unknown key '{}'", lineno, key));
    }
}

void apply_config_file(const std::string& path, ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError(fmt::format("cannot open config file '{}'", path));
    std::stringstream buf;
    buf << in.rdbuf();
    apply_config_text(buf.str(), cfg);
}

std::vector<StrategySpec> resolve_strategies(const ExperimentConfig& cfg) {
    if (cfg.strategies.empty())
        throw ConfigError("no strategies given");
    std::vector<StrategySpec> out;
    for (const auto& name : cfg.strategies) {
        try {
            if (name == "md")
                out.emplace_back(parse_strategy(fmt::format("md:B={}", cfg.budget)));
            else if (name == "rwc")
                out.emplace_back(parse_strategy(fmt::format("rwc:d={}", cfg.rwc_d)));
            else
                out.push_back(parse_strategy(name));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    return out;
}

LoadedGraph load_graph(const ExperimentConfig& cfg, std::ostream& log) {
    if (cfg.graph_path.empty() == cfg.generator.empty())
        throw ConfigError("give exactly one of --graph or --gen");
    LoadedGraph out;
    try {
        if (!cfg.graph_path.empty()) {
            LoadReport rep;
            out.graph = load_edge_list_file(cfg.graph_path, &rep);
            out.label = cfg.graph_path.substr(cfg.graph_path.find_last_of('/') + 1);
            if (rep.reduction.dropped_nodes > 0)
                log << fmt::format("warning: kept largest component, dropped {} nodes and {} edges\n",
                                   rep.reduction.dropped_nodes, rep.reduction.dropped_edges);
            if (rep.self_loops + rep.duplicate_edges > 0)
                log << fmt::format("note: ignored {} self-loops and {} duplicate edges\n", rep.self_loops,
                                   rep.duplicate_edges);
        } else {
            const auto spec = parse_generator(cfg.generator);
            GenerateInfo info;
            out.graph = generate(spec, &info);
            out.label = to_string(spec);
            if (std::holds_alternative<gen::RandomGeometric>(spec))
                log << fmt::format("note: random geometric radius used {:.6f}\n", info.final_radius);
        }
    } catch (const GraphError& e) {
        throw ConfigError(e.what());
    }
    return out;
}

CompareResult run_compare(const ExperimentConfig& cfg, const LoadedGraph& lg, std::ostream& log) {
    const Graph& g = lg.graph;
    const auto specs = resolve_strategies(cfg);
    std::vector<double> taus;
    try {
        taus = make_tau_grid(cfg.tau_min, cfg.tau_max, cfg.tau_step);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (cfg.trials < 1)
        throw ConfigError("--trials must be at least 1");
    std::vector<NodeId> starts;
    if (cfg.start) {
        if (*cfg.start >= g.order())
            throw ConfigError(fmt::format("--start {} is out of range (n = {})", *cfg.start, g.order()));
        starts.push_back(*cfg.start);
    } else {
        starts = sample_starts(g, cfg.starts, cfg.seed);
    }

    EstimateOptions opts;
    opts.trials = cfg.trials;
    opts.seed = cfg.seed;
    opts.threads = cfg.threads;

    CompareResult out;
    out.curve_csv = curve_csv_header();
    out.pct_max_csv = "strategy,tau,pct_max,starts\n";
    std::vector<PlotSeries> series;
    for (const auto& spec : specs) {
        auto est = estimate_multi_start(g, spec, starts, taus, opts);
        const auto name = to_string(spec);
        log << fmt::format("{}: {} starts x {} trials, C({:.2f}) = {:.5f}, truncated {}\n", name, starts.size(),
                           cfg.trials, taus.back(), est.pooled.points.back().c_tau, est.pooled.truncated);
        out.curve_csv += curve_csv_rows(est.pooled);
        for (std::size_t t = 0; t < taus.size(); ++t) {
            double best = 0.0;
            for (const auto& row : est.per_start_rho)
                if (!std::isnan(row[t]))
                    best = std::max(best, row[t]);
            out.pct_max_csv += fmt::format("{},{:.4f},{:.6f},{}\n", name, taus[t], best, starts.size());
        }
        PlotSeries s{name, {}};
        for (const auto& p : est.pooled.points)
            s.points.emplace_back(p.tau, p.c_tau);
        series.push_back(std::move(s));
        out.curves.push_back(std::move(est.pooled));
    }
    out.svg = render_line_chart({fmt::format("Normalized partial cover time, {} (n={}, m={})", lg.label, g.order(),
                                             g.size()),
                                 "tau", "C(tau)"},
                                series);
    return out;
}

BudgetResult run_budget(const ExperimentConfig& cfg, const LoadedGraph& lg) {
    if (cfg.budgets.empty())
        throw ConfigError("budget grid is empty");
    if (std::any_of(cfg.budgets.begin(), cfg.budgets.end(), [](auto b) { return b < 1; }))
        throw ConfigError("budgets must be at least 1");
    if (cfg.walks < 1)
        throw ConfigError("--walks must be at least 1");
    ProbeOptions opts;
    opts.walks = cfg.walks;
    opts.seed = cfg.seed;
    opts.threads = cfg.threads;
    opts.tau = cfg.tau_max;

    BudgetResult out;
    out.probe = probe_graph(lg.graph, lg.label, cfg.budgets, opts);
    out.csv = budget_csv_header() + budget_csv_rows(out.probe);
    PlotSeries s{lg.label, {}};
    for (const auto& p : out.probe.points)
        s.points.emplace_back(p.budget, p.p);
    out.svg = render_line_chart({"Probability of selecting the smallest-degree unvisited neighbor", "budget B", "p"},
                                {s});
    return out;
}

namespace {

/// (graph, B) -> p from a "graph,B,p,decision_points" CSV.
std::map<std::pair<std::string, std::string>, double> parse_budget_csv(const std::string& csv) {
    std::map<std::pair<std::string, std::string>, double> rows;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        // The graph label may be quoted and contain commas; the last three
        // fields never do.
        const auto c3 = line.rfind(',');
        const auto c2 = line.rfind(',', c3 - 1);
        const auto c1 = line.rfind(',', c2 - 1);
        if (c1 == std::string::npos || c2 == std::string::npos || c3 == std::string::npos)
            throw ConfigError(fmt::format("malformed budget CSV row '{}'", line));
        auto label = line.substr(0, c1);
        if (label.size() >= 2 && label.front() == '"' && label.back() == '"') {
            std::string plain;
            for (std::size_t i = 1; i + 1 < label.size(); ++i) {
                plain += label[i];
                if (label[i] == '"')
                    ++i;
            }
            label = plain;
        }
        rows[{label, line.substr(c1 + 1, c2 - c1 - 1)}] =
            parse_value<double>("p", line.substr(c2 + 1, c3 - c2 - 1));
    }
    return rows;
}

} // namespace

std::optional<double> budget_baseline_gap(const std::string& current_csv, const std::string& baseline_csv) {
    const auto cur = parse_budget_csv(current_csv);
    const auto base = parse_budget_csv(baseline_csv);
    std::optional<double> gap;
    for (const auto& [key, p] : cur) {
        if (auto it = base.find(key); it != base.end())
            gap = std::max(gap.value_or(0.0), std::abs(p - it->second));
    }
    return gap;
}

StatsResult run_stats(const LoadedGraph& lg) {
    StatsResult out;
    out.stats = stats(lg.graph, lg.graph.order() <= 10000);
    out.stats_csv = stats_csv(out.stats);
    out.histogram_csv = "degree,count\n";
    for (auto [d, c] : degree_histogram(lg.graph))
        out.histogram_csv += fmt::format("{},{}\n", d, c);
    return out;
}

OracleResult run_oracle(const ExperimentConfig& cfg, const LoadedGraph& lg) {
    const Graph& g = lg.graph;
    const auto specs = resolve_strategies(cfg);
    const auto& spec = specs.front();
    if (!is_memoryless(spec))
        throw ConfigError(fmt::format("oracle needs a memoryless strategy (srw, ad, mdw), got {}", to_string(spec)));
    if (!(cfg.tau > 0.0 && cfg.tau <= 1.0))
        throw ConfigError("--tau must lie in (0, 1]");
    if (cfg.oracle_trials < 2)
        throw ConfigError("--oracle-trials must be at least 2");

    std::vector<NodeId> starts;
    if (cfg.start) {
        if (*cfg.start >= g.order())
            throw ConfigError(fmt::format("--start {} is out of range (n = {})", *cfg.start, g.order()));
        starts.push_back(*cfg.start);
    } else {
        for (NodeId v = 0; v < g.order(); ++v)
            starts.push_back(v);
    }

    EstimateOptions opts;
    opts.trials = cfg.oracle_trials;
    opts.seed = cfg.seed;
    opts.threads = cfg.threads;
    const double taus[] = {cfg.tau};

    OracleResult out;
    out.csv = "start,exact,mc_mean,mc_stderr,z,within_3se\n";
    for (NodeId s : starts) {
        OracleRow row;
        row.start = s;
        try {
            row.exact = oracle_pct(g, spec, s, cfg.tau);
        } catch (const OracleError& e) {
            throw ConfigError(e.what());
        }
        const auto curve = estimate_curve(g, spec, s, taus, opts);
        const auto& p = curve.points.front();
        row.mc_mean = p.rho;
        row.mc_stderr = p.stddev / std::sqrt(static_cast<double>(p.trials));
        const double diff = row.mc_mean - row.exact;
        const double z = row.mc_stderr > 0.0 ? diff / row.mc_stderr : (diff == 0.0 ? 0.0 : INFINITY);
        row.agrees = std::abs(z) <= 3.0;
        out.all_agree = out.all_agree && row.agrees;
        out.csv += fmt::format("{},{:.10f},{:.6f},{:.6f},{:.3f},{}\n", s, row.exact, row.mc_mean, row.mc_stderr, z,
                               row.agrees ? 1 : 0);
        out.rows.push_back(row);
    }
    return out;
}

StoppingResult run_stopping(const ExperimentConfig& cfg) {
    WeightFunction weight;
    if (cfg.weight == "constant")
        weight = ConstantWeight{cfg.c};
    else if (cfg.weight == "exp" || cfg.weight == "exponential")
        weight = ExponentialWeight{cfg.theta};
    else
        throw ConfigError(fmt::format("--weight must be constant or exp, got '{}'", cfg.weight));

    std::optional<RewardModel> model;
    try {
        model.emplace(weight, cfg.n);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    StoppingResult out;
    out.cutoff = optimal_cutoff(*model);
    out.csv = "r,expected_reward\n";
    for (std::size_t r = 2; r <= model->n(); ++r) {
        const double closed = expected_reward(*model, r);
        const double direct = expected_reward_direct(*model, r);
        const double scale = std::max(std::abs(closed), std::abs(direct));
        if (scale > 0.0)
            out.max_relative_gap = std::max(out.max_relative_gap, std::abs(closed - direct) / scale);
        out.csv += fmt::format("{},{:.17g}\n", r, closed);
    }
    return out;
}

} // namespace covertime
