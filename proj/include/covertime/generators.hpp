#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "covertime/graph.hpp"

namespace covertime {

namespace gen {

struct Complete {
    std::size_t n;
};
struct Star {
    std::size_t n; // center is node 0
};
struct Path {
    std::size_t n;
};
struct Hypercube {
    std::size_t dim;
};
/// Clique on 0..clique-1, path on clique..clique+path-1, bridge (clique-1, clique).
struct Lollipop {
    std::size_t clique;
    std::size_t path;
};
struct Mesh3d {
    std::size_t a, b, c;
};
/// Points uniform in the unit square, edge when Euclidean distance <= radius.
/// The radius grows by 10% until the graph is connected.
struct RandomGeometric {
    std::size_t n;
    double radius;
    std::uint64_t seed;
};
/// Preferential attachment: each new node links to attach distinct existing
/// nodes chosen proportionally to degree, seeded by a clique of attach+1.
struct BarabasiAlbert {
    std::size_t n;
    std::size_t attach;
    std::uint64_t seed;
};

} // namespace gen

using GeneratorSpec = std::variant<gen::Complete, gen::Star, gen::Path, gen::Hypercube, gen::Lollipop, gen::Mesh3d,
                                   gen::RandomGeometric, gen::BarabasiAlbert>;

struct GenerateInfo {
    /// Radius actually used by random_geometric after connectivity retries.
    double final_radius = 0.0;
};

/// Throws GraphError for parameters that give fewer than two nodes.
Graph generate(const GeneratorSpec& spec, GenerateInfo* info = nullptr);

/// Parses "complete:n=4", "star:n=5", "path:n=5", "hypercube:dim=3",
/// "lollipop:clique=4,path=3", "mesh3d:a=3,b=3,c=3",
/// "rgg:n=200,radius=0.1,seed=1", "ba:n=5000,k=2,seed=7".
GeneratorSpec parse_generator(const std::string& text);
std::string to_string(const GeneratorSpec& spec);

} // namespace covertime
