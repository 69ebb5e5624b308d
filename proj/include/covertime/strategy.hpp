#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "covertime/graph.hpp"
#include "covertime/rng.hpp"
#include "covertime/stopping.hpp"
#include "covertime/walk_state.hpp"

namespace covertime {

namespace strategy {

/// Simple random walk.
struct Srw {};
/// Edge process: uniform over unvisited incident edges, else uniform neighbor.
struct EdgeProcess {};
/// p_ij proportional to d_j^(-1/2).
struct AllDegrees {};
/// p_ij proportional to 1 / min(d_i, d_j).
struct MinDegreeWeighting {};
/// Random walk with choice: d draws with replacement, argmin (c(j)+1)/d_j.
struct WithChoice {
    std::uint32_t d = 3;
};
/// Budgeted min-degree walk over unvisited neighbors.
struct MinDegree {
    std::uint32_t budget = 5;
};
/// Extension: stopping-rule selection over unvisited neighbors.
struct Secretary {
    WeightFunction weight = ConstantWeight{};
};

} // namespace strategy

using StrategySpec = std::variant<strategy::Srw, strategy::EdgeProcess, strategy::AllDegrees,
                                  strategy::MinDegreeWeighting, strategy::WithChoice, strategy::MinDegree,
                                  strategy::Secretary>;

/// Short form used on the command line and in CSV output:
/// srw, ep, ad, mdw, rwc:d=3, md:B=5, sec:c=1, sec:theta=5.
std::string to_string(const StrategySpec& spec);

/// Inverse of to_string. Throws std::invalid_argument on unknown names or
/// parameters out of range (d >= 1, B >= 1, c > 0, theta > 0).
StrategySpec parse_strategy(std::string_view text);

/// True when the next node depends only on the current node.
bool is_memoryless(const StrategySpec& spec);

bool needs_edge_marks(const StrategySpec& spec);

/// Transition probabilities over neighbors(i), in adjacency order.
std::vector<double> srw_transition_row(const Graph& g, NodeId i);
std::vector<double> ad_transition_row(const Graph& g, NodeId i);
std::vector<double> mdw_transition_row(const Graph& g, NodeId i);

/// Row for a memoryless spec; throws std::invalid_argument otherwise.
std::vector<double> transition_row(const Graph& g, const StrategySpec& spec, NodeId i);

Move srw_step(const Graph& g, const WalkState& s, Rng& rng);
Move ad_step(const Graph& g, const WalkState& s, Rng& rng);
Move mdw_step(const Graph& g, const WalkState& s, Rng& rng);
/// Requires s.tracks_edges().
Move ep_step(const Graph& g, const WalkState& s, Rng& rng);
Move rwc_step(const Graph& g, const WalkState& s, std::uint32_t d, Rng& rng);

/// What a single min-degree decision looked like, for budget probing.
struct MdDecision {
    bool had_unvisited = false;
    std::size_t unvisited = 0;    // |L|
    std::size_t multiplicity = 0; // nodes of L at L's minimum degree
    bool hit_minimum = false;     // chosen node has L's minimum degree
};

Move md_step(const Graph& g, const WalkState& s, std::uint32_t budget, Rng& rng, MdDecision* decision = nullptr);

/// Chooses per spec without touching the state.
Move choose(const Graph& g, const WalkState& s, const StrategySpec& spec, Rng& rng);

/// choose() followed by s.advance().
Move step(const Graph& g, WalkState& s, const StrategySpec& spec, Rng& rng);

} // namespace covertime
