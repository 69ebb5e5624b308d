#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "covertime/graph.hpp"
#include "covertime/strategy.hpp"

// Exact expectations for memoryless walks (SRW, AD, MDW) on small graphs.

namespace covertime {

class OracleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct OracleLimits {
    /// Expanded chain has n 2^n states.
    std::size_t pct_max_nodes = 12;
    /// Dense (n-1) x (n-1) solve.
    std::size_t hitting_max_nodes = 2000;
};

/// Expected moves from i until j is first reached; 0 when i == j.
/// Solves (I - Q) h = 1 with j absorbing.
double oracle_hitting_time(const Graph& g, const StrategySpec& spec, NodeId i, NodeId j,
                           const OracleLimits& limits = {});

/// Hitting times from every node to j.
std::vector<double> oracle_hitting_times_to(const Graph& g, const StrategySpec& spec, NodeId j,
                                            const OracleLimits& limits = {});

/// Expected moves from (start, {start}) until floor(tau n) distinct nodes
/// have been visited, on the chain over (current node, visited set).
double oracle_pct(const Graph& g, const StrategySpec& spec, NodeId start, double tau,
                  const OracleLimits& limits = {});

} // namespace covertime
