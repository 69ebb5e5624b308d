#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace covertime {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Neighbor lists are sorted ascending. Every adjacency slot also carries the
/// id of the undirected edge it belongs to, so both directions of an edge
/// share one id in [0, m).
class Graph {
public:
    Graph() = default;

    /// Builds from an edge list over nodes 0..n-1. Self-loops and duplicate
    /// edges are dropped. Connectivity is not enforced here; see
    /// largest_component().
    Graph(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges);

    std::size_t order() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t size() const noexcept { return edge_count_; }

    std::span<const NodeId> neighbors(NodeId v) const noexcept {
        return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }
    std::span<const EdgeId> incident_edges(NodeId v) const noexcept {
        return {edge_ids_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }
    std::uint32_t degree(NodeId v) const noexcept {
        return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    }
    std::uint32_t max_degree() const noexcept { return max_degree_; }

    bool has_edge(NodeId u, NodeId v) const noexcept;
    bool is_connected() const;

    /// Each edge once as (u, v) with u < v, sorted.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    /// Original ids of loaded nodes (empty for generated graphs).
    const std::vector<std::uint64_t>& original_ids() const noexcept { return original_ids_; }
    void set_original_ids(std::vector<std::uint64_t> ids) { original_ids_ = std::move(ids); }

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
    std::vector<EdgeId> edge_ids_;
    std::vector<std::uint64_t> original_ids_;
    std::size_t edge_count_ = 0;
    std::uint32_t max_degree_ = 0;
};

/// Nodes and edges removed when a graph was reduced to its largest component.
struct ComponentReduction {
    std::size_t dropped_nodes = 0;
    std::size_t dropped_edges = 0;
};

/// Restricts g to its largest connected component (ties: the one holding the
/// smallest node id), relabelling nodes densely in their original order.
Graph largest_component(const Graph& g, ComponentReduction* report = nullptr);

/// Throws GraphError if any structural invariant fails: symmetry, no loops,
/// no parallel edges, sorted lists, degree sum 2m, connectivity.
void validate(const Graph& g);

struct LoadReport {
    std::size_t lines = 0;
    std::size_t self_loops = 0;
    std::size_t duplicate_edges = 0;
    ComponentReduction reduction;
};

/// Parses "u v" pairs separated by whitespace or commas. A non-numeric header
/// line (e.g. "id_1,id_2") is skipped if it precedes all data. Lines starting
/// with '#' or '%' (after
/// optional whitespace) and blank lines are skipped; trailing columns beyond
/// the first two are ignored. Ids are remapped to 0..n-1 in ascending order
/// of original id, then the graph is reduced to its largest component.
/// Throws GraphError on a malformed line (with its line number) or when no
/// edge survives cleaning.
Graph load_edge_list(std::istream& in, LoadReport* report = nullptr);
Graph load_edge_list_file(const std::string& path, LoadReport* report = nullptr);

/// Canonical form: one "u v" per line, u < v, sorted.
void save_edge_list(const Graph& g, std::ostream& out);

struct GraphStats {
    std::size_t n = 0;
    std::size_t m = 0;
    /// Global transitivity: 3 * triangles / connected triples.
    double clustering = 0.0;
    std::uint32_t diameter = 0;
    /// False when diameter is a double-sweep lower bound.
    bool diameter_exact = false;
};

GraphStats stats(const Graph& g, bool exact_diameter);

/// "n,m,clustering,diameter,diameter_exact" header plus one row.
std::string stats_csv(const GraphStats& s);

/// (degree, count) pairs sorted by degree.
std::vector<std::pair<std::uint32_t, std::size_t>> degree_histogram(const Graph& g);

/// Hop distances from source; unreachable nodes get UINT32_MAX.
std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source);

} // namespace covertime
