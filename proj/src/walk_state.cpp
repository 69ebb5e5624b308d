#include "covertime/walk_state.hpp"

namespace covertime {

WalkState::WalkState(const Graph& g, NodeId start, bool track_edges)
    : counts_(g.order(), 0), current_(start), tracks_edges_(track_edges) {
    if (start >= g.order())
        throw GraphError("walk start node is out of range");
    if (track_edges)
        edge_marks_.assign(g.size(), 0);
    counts_[start] = 1;
}

void WalkState::advance(const Graph& g, const Move& move) {
    if (tracks_edges_)
        edge_marks_[g.incident_edges(current_)[move.slot]] = 1;
    if (counts_[move.node]++ == 0)
        ++visited_count_;
    current_ = move.node;
    ++steps_;
    inspections_ += move.inspections;
}

} // namespace covertime
