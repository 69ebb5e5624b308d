#include "covertime/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <string_view>

#include <fmt/format.h>

namespace covertime {

namespace {

constexpr std::uint32_t unreached = std::numeric_limits<std::uint32_t>::max();

std::vector<std::pair<NodeId, NodeId>> canonical_edges(std::size_t n,
                                                       std::span<const std::pair<NodeId, NodeId>> edges) {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u >= n || v >= n)
            throw GraphError(fmt::format("edge ({}, {}) references a node outside 0..{}", u, v, n - 1));
        if (u == v)
            continue;
        out.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

Graph::Graph(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges) {
    if (n > std::numeric_limits<NodeId>::max())
        throw GraphError("node count exceeds 32-bit id range");
    const auto canon = canonical_edges(n, edges);
    edge_count_ = canon.size();

    std::vector<std::size_t> deg(n, 0);
    for (auto [u, v] : canon) {
        ++deg[u];
        ++deg[v];
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        offsets_[i + 1] = offsets_[i] + deg[i];

    targets_.resize(2 * edge_count_);
    edge_ids_.resize(2 * edge_count_);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // canon is sorted by (u, v), so every list comes out sorted: all smaller
    // neighbors of x arrive (as sources) before x starts emitting its own edges.
    for (EdgeId e = 0; e < canon.size(); ++e) {
        auto [u, v] = canon[e];
        targets_[cursor[u]] = v;
        edge_ids_[cursor[u]++] = e;
        targets_[cursor[v]] = u;
        edge_ids_[cursor[v]++] = e;
    }
    for (std::size_t i = 0; i < n; ++i)
        max_degree_ = std::max(max_degree_, static_cast<std::uint32_t>(deg[i]));
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
    if (u >= order() || v >= order())
        return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::is_connected() const {
    if (order() == 0)
        return false;
    auto dist = bfs_distances(*this, 0);
    return std::none_of(dist.begin(), dist.end(), [](auto d) { return d == unreached; });
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < order(); ++u)
        for (NodeId v : neighbors(u))
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
    std::vector<std::uint32_t> dist(g.order(), unreached);
    std::vector<NodeId> queue;
    queue.reserve(g.order());
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        NodeId u = queue[head];
        for (NodeId v : g.neighbors(u)) {
            if (dist[v] == unreached) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

Graph largest_component(const Graph& g, ComponentReduction* report) {
    const std::size_t n = g.order();
    std::vector<std::uint32_t> label(n, unreached);
    std::vector<std::size_t> comp_size;
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
        if (label[s] != unreached)
            continue;
        const auto id = static_cast<std::uint32_t>(comp_size.size());
        std::size_t count = 0;
        label[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            ++count;
            for (NodeId v : g.neighbors(u)) {
                if (label[v] == unreached) {
                    label[v] = id;
                    stack.push_back(v);
                }
            }
        }
        comp_size.push_back(count);
    }
    if (comp_size.size() <= 1) {
        if (report)
            *report = {};
        return g;
    }
    const auto best = static_cast<std::uint32_t>(
        std::max_element(comp_size.begin(), comp_size.end()) - comp_size.begin());

    std::vector<NodeId> remap(n, unreached);
    std::vector<std::uint64_t> ids;
    NodeId next = 0;
    for (NodeId v = 0; v < n; ++v) {
        if (label[v] == best) {
            remap[v] = next++;
            ids.push_back(g.original_ids().empty() ? v : g.original_ids()[v]);
        }
    }
    std::vector<std::pair<NodeId, NodeId>> kept;
    for (auto [u, v] : g.edges())
        if (label[u] == best)
            kept.emplace_back(remap[u], remap[v]);

    Graph out(next, kept);
    out.set_original_ids(std::move(ids));
    if (report) {
        report->dropped_nodes = n - next;
        report->dropped_edges = g.size() - kept.size();
    }
    return out;
}

void validate(const Graph& g) {
    const std::size_t n = g.order();
    if (n == 0)
        throw GraphError("graph has no nodes");
    std::size_t degree_sum = 0;
    for (NodeId u = 0; u < n; ++u) {
        auto nb = g.neighbors(u);
        degree_sum += nb.size();
        if (nb.size() != g.degree(u))
            throw GraphError(fmt::format("degree mismatch at node {}", u));
        for (std::size_t k = 0; k < nb.size(); ++k) {
            if (nb[k] >= n)
                throw GraphError(fmt::format("node {} has out-of-range neighbor {}", u, nb[k]));
            if (nb[k] == u)
                throw GraphError(fmt::format("self-loop at node {}", u));
            if (k > 0 && nb[k - 1] >= nb[k])
                throw GraphError(fmt::format("neighbor list of node {} is unsorted or has duplicates", u));
            if (!g.has_edge(nb[k], u))
                throw GraphError(fmt::format("asymmetric edge {} -> {}", u, nb[k]));
        }
    }
    if (degree_sum != 2 * g.size())
        throw GraphError(fmt::format("degree sum {} != 2m = {}", degree_sum, 2 * g.size()));
    if (!g.is_connected())
        throw GraphError("graph is not connected");
}

namespace {

bool parse_id(std::string_view tok, std::uint64_t& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::string_view next_token(std::string_view& line) {
    auto b = line.find_first_not_of(" \t\r,");
    if (b == std::string_view::npos) {
        line = {};
        return {};
    }
    line.remove_prefix(b);
    auto e = line.find_first_of(" \t\r,");
    auto tok = line.substr(0, e);
    line.remove_prefix(e == std::string_view::npos ? line.size() : e);
    return tok;
}

} // namespace

Graph load_edge_list(std::istream& in, LoadReport* report) {
    LoadReport rep;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view rest = line;
        auto first = next_token(rest);
        if (first.empty() || first.front() == '#' || first.front() == '%')
            continue;
        auto second = next_token(rest);
        std::uint64_t u = 0, v = 0;
        // A CSV header such as "id_1,id_2" is tolerated as the first data line.
        if (raw.empty() && rep.self_loops == 0 && !header_seen && !second.empty() && !parse_id(first, u) &&
            !parse_id(second, v)) {
            header_seen = true;
            continue;
        }
        if (second.empty() || !parse_id(first, u) || !parse_id(second, v))
            throw GraphError(fmt::format("line {}: expected two non-negative integer ids, got '{}'", lineno, line));
        if (u == v) {
            ++rep.self_loops;
            continue;
        }
        raw.emplace_back(std::min(u, v), std::max(u, v));
    }
    rep.lines = lineno;

    std::sort(raw.begin(), raw.end());
    const auto before = raw.size();
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    rep.duplicate_edges = before - raw.size();
    if (raw.empty())
        throw GraphError("edge list contains no usable edges");

    std::vector<std::uint64_t> ids;
    ids.reserve(2 * raw.size());
    for (auto [u, v] : raw) {
        ids.push_back(u);
        ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto dense = [&](std::uint64_t id) {
        return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(raw.size());
    for (auto [u, v] : raw)
        edges.emplace_back(dense(u), dense(v));

    Graph g(ids.size(), edges);
    g.set_original_ids(std::move(ids));
    Graph out = largest_component(g, &rep.reduction);
    if (report)
        *report = rep;
    return out;
}

Graph load_edge_list_file(const std::string& path, LoadReport* report) {
    std::ifstream in(path);
    if (!in)
        throw GraphError(fmt::format("cannot open edge list '{}'", path));
    return load_edge_list(in, report);
}

void save_edge_list(const Graph& g, std::ostream& out) {
    for (auto [u, v] : g.edges())
        out << u << ' ' << v << '\n';
}

GraphStats stats(const Graph& g, bool exact_diameter) {
    GraphStats s;
    s.n = g.order();
    s.m = g.size();

    // Triangles counted once per (u < v < w) via sorted-list intersection.
    std::uint64_t triangles = 0;
    std::uint64_t triples = 0;
    for (NodeId u = 0; u < s.n; ++u) {
        const std::uint64_t d = g.degree(u);
        triples += d * (d - (d > 0 ? 1 : 0)) / 2;
        auto nu = g.neighbors(u);
        for (NodeId v : nu) {
            if (v <= u)
                continue;
            auto nv = g.neighbors(v);
            auto a = std::upper_bound(nu.begin(), nu.end(), v);
            auto b = std::upper_bound(nv.begin(), nv.end(), v);
            while (a != nu.end() && b != nv.end()) {
                if (*a < *b)
                    ++a;
                else if (*b < *a)
                    ++b;
                else {
                    ++triangles;
                    ++a;
                    ++b;
                }
            }
        }
    }
    s.clustering = triples == 0 ? 0.0 : 3.0 * static_cast<double>(triangles) / static_cast<double>(triples);

    auto eccentricity = [&](NodeId src, NodeId* farthest) {
        auto dist = bfs_distances(g, src);
        std::uint32_t ecc = 0;
        for (NodeId v = 0; v < dist.size(); ++v) {
            if (dist[v] != unreached && dist[v] > ecc) {
                ecc = dist[v];
                if (farthest)
                    *farthest = v;
            }
        }
        return ecc;
    };

    if (exact_diameter) {
        for (NodeId v = 0; v < s.n; ++v)
            s.diameter = std::max(s.diameter, eccentricity(v, nullptr));
        s.diameter_exact = true;
    } else if (s.n > 0) {
        // Double sweep from the max-degree node.
        NodeId start = 0;
        for (NodeId v = 0; v < s.n; ++v)
            if (g.degree(v) > g.degree(start))
                start = v;
        NodeId far = start;
        eccentricity(start, &far);
        s.diameter = eccentricity(far, nullptr);
        s.diameter_exact = false;
    }
    return s;
}

std::string stats_csv(const GraphStats& s) {
    return fmt::format("n,m,clustering,diameter,diameter_exact\n{},{},{:.6f},{},{}\n", s.n, s.m, s.clustering,
                       s.diameter, s.diameter_exact ? 1 : 0);
}

std::vector<std::pair<std::uint32_t, std::size_t>> degree_histogram(const Graph& g) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(g.max_degree()) + 1, 0);
    for (NodeId v = 0; v < g.order(); ++v)
        ++counts[g.degree(v)];
    std::vector<std::pair<std::uint32_t, std::size_t>> out;
    for (std::uint32_t d = 0; d < counts.size(); ++d)
        if (counts[d] > 0)
            out.emplace_back(d, counts[d]);
    return out;
}

} // namespace covertime
