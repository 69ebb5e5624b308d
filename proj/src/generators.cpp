#include "covertime/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <string_view>

#include <fmt/format.h>

#include "covertime/rng.hpp"

namespace covertime {

namespace {

using EdgeVec = std::vector<std::pair<NodeId, NodeId>>;

void require_order(std::size_t n, std::string_view kind) {
    if (n < 2)
        throw GraphError(fmt::format("{} generator needs at least 2 nodes, got {}", kind, n));
}

Graph build(const gen::Complete& p, GenerateInfo*) {
    require_order(p.n, "complete");
    EdgeVec e;
    for (NodeId u = 0; u < p.n; ++u)
        for (NodeId v = u + 1; v < p.n; ++v)
            e.emplace_back(u, v);
    return Graph(p.n, e);
}

Graph build(const gen::Star& p, GenerateInfo*) {
    require_order(p.n, "star");
    EdgeVec e;
    for (NodeId v = 1; v < p.n; ++v)
        e.emplace_back(0, v);
    return Graph(p.n, e);
}

Graph build(const gen::Path& p, GenerateInfo*) {
    require_order(p.n, "path");
    EdgeVec e;
    for (NodeId v = 1; v < p.n; ++v)
        e.emplace_back(v - 1, v);
    return Graph(p.n, e);
}

Graph build(const gen::Hypercube& p, GenerateInfo*) {
    if (p.dim < 1 || p.dim > 24)
        throw GraphError(fmt::format("hypercube dimension must be in 1..24, got {}", p.dim));
    const std::size_t n = std::size_t{1} << p.dim;
    EdgeVec e;
    for (NodeId u = 0; u < n; ++u)
        for (std::size_t b = 0; b < p.dim; ++b) {
            NodeId v = u ^ (NodeId{1} << b);
            if (u < v)
                e.emplace_back(u, v);
        }
    return Graph(n, e);
}

Graph build(const gen::Lollipop& p, GenerateInfo*) {
    if (p.clique < 1)
        throw GraphError("lollipop clique size must be positive");
    const std::size_t n = p.clique + p.path;
    require_order(n, "lollipop");
    EdgeVec e;
    for (NodeId u = 0; u < p.clique; ++u)
        for (NodeId v = u + 1; v < p.clique; ++v)
            e.emplace_back(u, v);
    for (NodeId v = static_cast<NodeId>(p.clique); v < n; ++v)
        e.emplace_back(v - 1, v);
    return Graph(n, e);
}

Graph build(const gen::Mesh3d& p, GenerateInfo*) {
    const std::size_t n = p.a * p.b * p.c;
    require_order(n, "mesh3d");
    auto id = [&](std::size_t x, std::size_t y, std::size_t z) { return static_cast<NodeId>((x * p.b + y) * p.c + z); };
    EdgeVec e;
    for (std::size_t x = 0; x < p.a; ++x)
        for (std::size_t y = 0; y < p.b; ++y)
            for (std::size_t z = 0; z < p.c; ++z) {
                if (x + 1 < p.a)
                    e.emplace_back(id(x, y, z), id(x + 1, y, z));
                if (y + 1 < p.b)
                    e.emplace_back(id(x, y, z), id(x, y + 1, z));
                if (z + 1 < p.c)
                    e.emplace_back(id(x, y, z), id(x, y, z + 1));
            }
    return Graph(n, e);
}

Graph build(const gen::RandomGeometric& p, GenerateInfo* info) {
    require_order(p.n, "random_geometric");
    if (!(p.radius > 0.0))
        throw GraphError("random_geometric radius must be positive");
    Rng rng(p.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::pair<double, double>> pts(p.n);
    for (auto& pt : pts)
        pt = {unit(rng), unit(rng)};

    double radius = p.radius;
    for (;;) {
        const auto cells = static_cast<std::size_t>(std::max(1.0, std::floor(1.0 / radius)));
        const double cell_w = 1.0 / static_cast<double>(cells);
        std::vector<std::vector<NodeId>> grid(cells * cells);
        auto cell_of = [&](double c) { return std::min(cells - 1, static_cast<std::size_t>(c / cell_w)); };
        for (NodeId v = 0; v < p.n; ++v)
            grid[cell_of(pts[v].first) * cells + cell_of(pts[v].second)].push_back(v);

        EdgeVec e;
        const double r2 = radius * radius;
        for (NodeId u = 0; u < p.n; ++u) {
            const auto cx = cell_of(pts[u].first), cy = cell_of(pts[u].second);
            for (std::size_t x = cx > 0 ? cx - 1 : 0; x <= std::min(cells - 1, cx + 1); ++x)
                for (std::size_t y = cy > 0 ? cy - 1 : 0; y <= std::min(cells - 1, cy + 1); ++y)
                    for (NodeId v : grid[x * cells + y]) {
                        if (v <= u)
                            continue;
                        const double dx = pts[u].first - pts[v].first, dy = pts[u].second - pts[v].second;
                        if (dx * dx + dy * dy <= r2)
                            e.emplace_back(u, v);
                    }
        }
        Graph g(p.n, e);
        if (g.is_connected()) {
            if (info)
                info->final_radius = radius;
            return g;
        }
        radius *= 1.1;
    }
}

Graph build(const gen::BarabasiAlbert& p, GenerateInfo*) {
    if (p.attach < 1)
        throw GraphError("barabasi_albert attach count must be positive");
    require_order(p.n, "barabasi_albert");
    if (p.n <= p.attach)
        throw GraphError(fmt::format("barabasi_albert needs n > attach ({} <= {})", p.n, p.attach));
    Rng rng(p.seed);
    EdgeVec e;
    // Every edge endpoint once: sampling a slot uniformly is degree-proportional.
    std::vector<NodeId> endpoints;
    const std::size_t seed_nodes = p.attach + 1;
    for (NodeId u = 0; u < seed_nodes; ++u)
        for (NodeId v = u + 1; v < seed_nodes; ++v) {
            e.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    std::vector<NodeId> chosen;
    for (NodeId v = static_cast<NodeId>(seed_nodes); v < p.n; ++v) {
        chosen.clear();
        while (chosen.size() < p.attach) {
            NodeId t = endpoints[uniform_index(rng, endpoints.size())];
            if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
                chosen.push_back(t);
        }
        for (NodeId t : chosen) {
            e.emplace_back(t, v);
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    return Graph(p.n, e);
}

using Params = std::map<std::string, std::string, std::less<>>;

template <class T>
T get_num(const Params& params, std::string_view key, std::string_view kind) {
    auto it = params.find(key);
    if (it == params.end())
        throw GraphError(fmt::format("generator '{}' is missing parameter '{}'", kind, key));
    T value{};
    const auto& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw GraphError(fmt::format("generator '{}': bad value '{}' for '{}'", kind, s, key));
    return value;
}

} // namespace

Graph generate(const GeneratorSpec& spec, GenerateInfo* info) {
    return std::visit([&](const auto& p) { return build(p, info); }, spec);
}

GeneratorSpec parse_generator(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    Params params;
    if (colon != std::string::npos) {
        std::string_view rest(text);
        rest.remove_prefix(colon + 1);
        while (!rest.empty()) {
            auto comma = rest.find(',');
            auto item = rest.substr(0, comma);
            auto eq = item.find('=');
            if (eq == std::string_view::npos)
                throw GraphError(fmt::format("generator parameter '{}' is not key=value", item));
            params.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
            rest.remove_prefix(comma == std::string_view::npos ? rest.size() : comma + 1);
        }
    }
    using U = std::size_t;
    if (kind == "complete")
        return gen::Complete{get_num<U>(params, "n", kind)};
    if (kind == "star")
        return gen::Star{get_num<U>(params, "n", kind)};
    if (kind == "path")
        return gen::Path{get_num<U>(params, "n", kind)};
    if (kind == "hypercube")
        return gen::Hypercube{get_num<U>(params, "dim", kind)};
    if (kind == "lollipop")
        return gen::Lollipop{get_num<U>(params, "clique", kind), get_num<U>(params, "path", kind)};
    if (kind == "mesh3d")
        return gen::Mesh3d{get_num<U>(params, "a", kind), get_num<U>(params, "b", kind), get_num<U>(params, "c", kind)};
    if (kind == "rgg")
        return gen::RandomGeometric{get_num<U>(params, "n", kind), get_num<double>(params, "radius", kind),
                                    get_num<std::uint64_t>(params, "seed", kind)};
    if (kind == "ba")
        return gen::BarabasiAlbert{get_num<U>(params, "n", kind), get_num<U>(params, "k", kind),
                                   get_num<std::uint64_t>(params, "seed", kind)};
    throw GraphError(fmt::format("unknown generator '{}'", kind));
}

std::string to_string(const GeneratorSpec& spec) {
    struct Visitor {
        std::string operator()(const gen::Complete& p) const { return fmt::format("complete:n={}", p.n); }
        std::string operator()(const gen::Star& p) const { return fmt::format("star:n={}", p.n); }
        std::string operator()(const gen::Path& p) const { return fmt::format("path:n={}", p.n); }
        std::string operator()(const gen::Hypercube& p) const { return fmt::format("hypercube:dim={}", p.dim); }
        std::string operator()(const gen::Lollipop& p) const {
            return fmt::format("lollipop:clique={},path={}", p.clique, p.path);
        }
        std::string operator()(const gen::Mesh3d& p) const {
            return fmt::format("mesh3d:a={},b={},c={}", p.a, p.b, p.c);
        }
        std::string operator()(const gen::RandomGeometric& p) const {
            return fmt::format("rgg:n={},radius={},seed={}", p.n, p.radius, p.seed);
        }
        std::string operator()(const gen::BarabasiAlbert& p) const {
            return fmt::format("ba:n={},k={},seed={}", p.n, p.attach, p.seed);
        }
    };
    return std::visit(Visitor{}, spec);
}

} // namespace covertime
