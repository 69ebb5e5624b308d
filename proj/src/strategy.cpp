#include "covertime/strategy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

namespace covertime {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

Move uniform_neighbor(const Graph& g, NodeId v, Rng& rng, std::uint32_t inspections = 0) {
    auto nb = g.neighbors(v);
    const auto slot = static_cast<std::uint32_t>(uniform_index(rng, nb.size()));
    return {nb[slot], slot, inspections};
}

/// Samples a neighbor slot with probability proportional to weight(slot).
template <class Weight>
Move weighted_neighbor(const Graph& g, NodeId v, Rng& rng, Weight&& weight) {
    auto nb = g.neighbors(v);
    double total = 0.0;
    for (std::uint32_t k = 0; k < nb.size(); ++k)
        total += weight(nb[k]);
    const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
    double acc = 0.0;
    std::uint32_t slot = static_cast<std::uint32_t>(nb.size() - 1);
    for (std::uint32_t k = 0; k < nb.size(); ++k) {
        acc += weight(nb[k]);
        if (u < acc) {
            slot = k;
            break;
        }
    }
    return {nb[slot], slot, static_cast<std::uint32_t>(nb.size())};
}

template <class Weight>
std::vector<double> normalized_row(const Graph& g, NodeId i, Weight&& weight) {
    auto nb = g.neighbors(i);
    std::vector<double> row(nb.size());
    double total = 0.0;
    for (std::size_t k = 0; k < nb.size(); ++k) {
        row[k] = weight(nb[k]);
        total += row[k];
    }
    for (auto& p : row)
        p /= total;
    return row;
}

std::uint32_t parse_u32(std::string_view s, std::string_view what) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v < 1)
        throw std::invalid_argument(fmt::format("{} must be a positive integer, got '{}'", what, s));
    return v;
}

double parse_positive(std::string_view s, std::string_view what) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(fmt::format("{} must be a positive number, got '{}'", what, s));
    return v;
}

} // namespace

std::string to_string(const StrategySpec& spec) {
    return std::visit(overloaded{
                          [](const strategy::Srw&) { return std::string("srw"); },
                          [](const strategy::EdgeProcess&) { return std::string("ep"); },
                          [](const strategy::AllDegrees&) { return std::string("ad"); },
                          [](const strategy::MinDegreeWeighting&) { return std::string("mdw"); },
                          [](const strategy::WithChoice& s) { return fmt::format("rwc:d={}", s.d); },
                          [](const strategy::MinDegree& s) { return fmt::format("md:B={}", s.budget); },
                          [](const strategy::Secretary& s) {
                              if (auto* c = std::get_if<ConstantWeight>(&s.weight))
                                  return fmt::format("sec:c={}", c->c);
                              return fmt::format("sec:theta={}", std::get<ExponentialWeight>(s.weight).theta);
                          },
                      },
                      spec);
}

StrategySpec parse_strategy(std::string_view text) {
    if (text == "srw")
        return strategy::Srw{};
    if (text == "ep")
        return strategy::EdgeProcess{};
    if (text == "ad")
        return strategy::AllDegrees{};
    if (text == "mdw")
        return strategy::MinDegreeWeighting{};
    auto param = [&](std::string_view prefix) -> std::optional<std::string_view> {
        if (text.substr(0, prefix.size()) == prefix)
            return text.substr(prefix.size());
        return std::nullopt;
    };
    if (text == "rwc")
        return strategy::WithChoice{};
    if (text == "md")
        return strategy::MinDegree{};
    if (auto v = param("rwc:d="))
        return strategy::WithChoice{parse_u32(*v, "rwc choice count d")};
    if (auto v = param("md:B="))
        return strategy::MinDegree{parse_u32(*v, "md budget B")};
    if (auto v = param("sec:c="))
        return strategy::Secretary{ConstantWeight{parse_positive(*v, "constant weight c")}};
    if (auto v = param("sec:theta="))
        return strategy::Secretary{ExponentialWeight{parse_positive(*v, "exponential weight theta")}};
    throw std::invalid_argument(fmt::format("unknown strategy '{}'", text));
}

bool is_memoryless(const StrategySpec& spec) {
    return std::holds_alternative<strategy::Srw>(spec) || std::holds_alternative<strategy::AllDegrees>(spec) ||
           std::holds_alternative<strategy::MinDegreeWeighting>(spec);
}

bool needs_edge_marks(const StrategySpec& spec) { return std::holds_alternative<strategy::EdgeProcess>(spec); }

std::vector<double> srw_transition_row(const Graph& g, NodeId i) {
    return std::vector<double>(g.degree(i), 1.0 / g.degree(i));
}

std::vector<double> ad_transition_row(const Graph& g, NodeId i) {
    return normalized_row(g, i, [&](NodeId j) { return 1.0 / std::sqrt(static_cast<double>(g.degree(j))); });
}

std::vector<double> mdw_transition_row(const Graph& g, NodeId i) {
    const auto di = g.degree(i);
    return normalized_row(g, i, [&](NodeId j) { return 1.0 / std::min(di, g.degree(j)); });
}

std::vector<double> transition_row(const Graph& g, const StrategySpec& spec, NodeId i) {
    if (std::holds_alternative<strategy::Srw>(spec))
        return srw_transition_row(g, i);
    if (std::holds_alternative<strategy::AllDegrees>(spec))
        return ad_transition_row(g, i);
    if (std::holds_alternative<strategy::MinDegreeWeighting>(spec))
        return mdw_transition_row(g, i);
    throw std::invalid_argument("history-dependent walk has no node-level chain");
}

Move srw_step(const Graph& g, const WalkState& s, Rng& rng) { return uniform_neighbor(g, s.current(), rng); }

Move ad_step(const Graph& g, const WalkState& s, Rng& rng) {
    const NodeId i = s.current();
    if (g.degree(i) == 1)
        return {g.neighbors(i)[0], 0, 0};
    return weighted_neighbor(g, i, rng, [&](NodeId j) { return 1.0 / std::sqrt(static_cast<double>(g.degree(j))); });
}

Move mdw_step(const Graph& g, const WalkState& s, Rng& rng) {
    const NodeId i = s.current();
    if (g.degree(i) == 1)
        return {g.neighbors(i)[0], 0, 0};
    const auto di = g.degree(i);
    return weighted_neighbor(g, i, rng, [&](NodeId j) { return 1.0 / std::min(di, g.degree(j)); });
}

Move ep_step(const Graph& g, const WalkState& s, Rng& rng) {
    if (!s.tracks_edges())
        throw std::logic_error("edge process needs a walk state that tracks edges");
    const NodeId i = s.current();
    auto nb = g.neighbors(i);
    auto eids = g.incident_edges(i);
    std::size_t fresh = 0;
    for (EdgeId e : eids)
        fresh += s.edge_visited(e) ? 0 : 1;
    if (fresh == 0)
        return uniform_neighbor(g, i, rng);
    std::size_t pick = uniform_index(rng, fresh);
    for (std::uint32_t k = 0; k < nb.size(); ++k) {
        if (s.edge_visited(eids[k]))
            continue;
        if (pick-- == 0)
            return {nb[k], k, 0};
    }
    throw std::logic_error("unreachable: unvisited edge count changed during selection");
}

Move rwc_step(const Graph& g, const WalkState& s, std::uint32_t d, Rng& rng) {
    if (d < 1)
        throw std::invalid_argument("rwc choice count must be at least 1");
    const NodeId i = s.current();
    auto nb = g.neighbors(i);
    auto& best = s.scratch();
    best.clear();
    // score(j) = (c(j)+1)/d_j, compared exactly by cross-multiplication.
    auto less = [&](std::uint32_t a, std::uint32_t b) {
        return (std::uint64_t{s.visit_count(nb[a])} + 1) * g.degree(nb[b]) <
               (std::uint64_t{s.visit_count(nb[b])} + 1) * g.degree(nb[a]);
    };
    for (std::uint32_t draw = 0; draw < d; ++draw) {
        const auto slot = static_cast<std::uint32_t>(uniform_index(rng, nb.size()));
        if (best.empty() || less(slot, best.front())) {
            best.assign(1, slot);
        } else if (!less(best.front(), slot) && std::find(best.begin(), best.end(), slot) == best.end()) {
            best.push_back(slot);
        }
    }
    const auto slot = best.size() == 1 ? best.front() : best[uniform_index(rng, best.size())];
    return {nb[slot], slot, d};
}

Move md_step(const Graph& g, const WalkState& s, std::uint32_t budget, Rng& rng, MdDecision* decision) {
    if (budget < 1)
        throw std::invalid_argument("md budget must be at least 1");
    const NodeId i = s.current();
    auto nb = g.neighbors(i);
    auto& unvisited = s.scratch();
    unvisited.clear();
    for (std::uint32_t k = 0; k < nb.size(); ++k)
        if (!s.visited(nb[k]))
            unvisited.push_back(k);

    if (unvisited.empty()) {
        if (decision)
            *decision = {};
        return uniform_neighbor(g, i, rng);
    }

    std::size_t pool = unvisited.size();
    if (pool > budget) {
        // Partial Fisher-Yates: the first `budget` slots become the sample.
        for (std::size_t k = 0; k < budget; ++k)
            std::swap(unvisited[k], unvisited[k + uniform_index(rng, pool - k)]);
        pool = budget;
    }

    std::uint32_t chosen = unvisited[0];
    std::uint32_t best_degree = g.degree(nb[chosen]);
    std::size_t ties = 1;
    for (std::size_t k = 1; k < pool; ++k) {
        const auto slot = unvisited[k];
        const auto deg = g.degree(nb[slot]);
        if (deg < best_degree) {
            best_degree = deg;
            chosen = slot;
            ties = 1;
        } else if (deg == best_degree && uniform_index(rng, ++ties) == 0) {
            chosen = slot;
        }
    }

    if (decision) {
        std::uint32_t min_degree = best_degree;
        std::size_t multiplicity = 0;
        for (auto slot : unvisited)
            min_degree = std::min(min_degree, g.degree(nb[slot]));
        for (auto slot : unvisited)
            multiplicity += g.degree(nb[slot]) == min_degree ? 1 : 0;
        *decision = {true, unvisited.size(), multiplicity, best_degree == min_degree};
    }
    return {nb[chosen], chosen, static_cast<std::uint32_t>(pool)};
}

Move choose(const Graph& g, const WalkState& s, const StrategySpec& spec, Rng& rng) {
    return std::visit(overloaded{
                          [&](const strategy::Srw&) { return srw_step(g, s, rng); },
                          [&](const strategy::EdgeProcess&) { return ep_step(g, s, rng); },
                          [&](const strategy::AllDegrees&) { return ad_step(g, s, rng); },
                          [&](const strategy::MinDegreeWeighting&) { return mdw_step(g, s, rng); },
                          [&](const strategy::WithChoice& p) { return rwc_step(g, s, p.d, rng); },
                          [&](const strategy::MinDegree& p) { return md_step(g, s, p.budget, rng); },
                          [&](const strategy::Secretary& p) { return secretary_walk_step(g, s, p.weight, rng); },
                      },
                      spec);
}

Move step(const Graph& g, WalkState& s, const StrategySpec& spec, Rng& rng) {
    const Move move = choose(g, s, spec, rng);
    s.advance(g, move);
    return move;
}

} // namespace covertime
