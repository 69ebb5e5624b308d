#pragma once

#include <cstdint>
#include <vector>

#include "covertime/graph.hpp"

namespace covertime {

/// One strategy decision: the chosen neighbor, its slot in the current
/// node's adjacency list, and how many neighbor degrees were looked up.
struct Move {
    NodeId node = 0;
    std::uint32_t slot = 0;
    std::uint32_t inspections = 0;
};

/// Mutable cursor of a single walk.
///
/// The start node is visited with count 1 at construction and steps() == 0.
/// Edge marks are only kept when requested (the edge process needs them).
class WalkState {
public:
    WalkState(const Graph& g, NodeId start, bool track_edges = false);

    NodeId current() const noexcept { return current_; }
    std::uint64_t steps() const noexcept { return steps_; }
    std::size_t visited_count() const noexcept { return visited_count_; }
    bool visited(NodeId v) const noexcept { return counts_[v] > 0; }
    std::uint32_t visit_count(NodeId v) const noexcept { return counts_[v]; }
    bool tracks_edges() const noexcept { return tracks_edges_; }
    bool edge_visited(EdgeId e) const noexcept { return tracks_edges_ && edge_marks_[e] != 0; }
    /// Neighbor degree lookups spent so far (query cost).
    std::uint64_t inspections() const noexcept { return inspections_; }

    /// Applies a move chosen at current(): steps += 1, marks the node and the
    /// traversed edge, bumps the visit counter.
    void advance(const Graph& g, const Move& move);

    /// Reusable buffer for strategies; contents are unspecified between calls.
    std::vector<std::uint32_t>& scratch() const noexcept { return scratch_; }

private:
    std::vector<std::uint32_t> counts_;
    std::vector<std::uint8_t> edge_marks_;
    mutable std::vector<std::uint32_t> scratch_;
    std::uint64_t steps_ = 0;
    std::uint64_t inspections_ = 0;
    std::size_t visited_count_ = 1;
    NodeId current_;
    bool tracks_edges_;
};

} // namespace covertime
