#include "covertime/oracle.hpp"

#include <bit>
#include <cstdint>
#include <unordered_map>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "covertime/estimator.hpp"

namespace covertime {

namespace {

void require_memoryless(const StrategySpec& spec) {
    if (!is_memoryless(spec))
        throw OracleError(fmt::format("history-dependent walk has no node-level chain ({})", to_string(spec)));
}

std::vector<std::vector<double>> all_rows(const Graph& g, const StrategySpec& spec) {
    std::vector<std::vector<double>> rows(g.order());
    for (NodeId v = 0; v < g.order(); ++v)
        rows[v] = transition_row(g, spec, v);
    return rows;
}

/// Expected remaining moves on the chain restricted to visited sets.
class CoverChain {
public:
    CoverChain(const Graph& g, std::vector<std::vector<double>> rows, std::size_t target)
        : g_(g), rows_(std::move(rows)), target_(target) {}

    /// Expected moves from node v with visited set `mask` (v in mask).
    double expected(std::uint32_t mask, NodeId v) {
        const auto& sol = solve(mask);
        return sol[index_in(mask, v)];
    }

private:
    static std::size_t index_in(std::uint32_t mask, NodeId v) {
        return static_cast<std::size_t>(std::popcount(mask & ((std::uint32_t{1} << v) - 1)));
    }

    const std::vector<double>& solve(std::uint32_t mask) {
        if (auto it = memo_.find(mask); it != memo_.end())
            return it->second;
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        std::vector<double> sol(size, 0.0);
        if (size < target_) {
            std::vector<NodeId> members;
            for (NodeId v = 0; v < g_.order(); ++v)
                if (mask >> v & 1U)
                    members.push_back(v);
            // (I - P_SS) E = 1 + sum over exits P(v,u) E(u, S + u)
            Eigen::MatrixXd a = Eigen::MatrixXd::Identity(size, size);
            Eigen::VectorXd b = Eigen::VectorXd::Ones(size);
            for (std::size_t r = 0; r < size; ++r) {
                const NodeId v = members[r];
                auto nb = g_.neighbors(v);
                for (std::size_t k = 0; k < nb.size(); ++k) {
                    const NodeId u = nb[k];
                    const double p = rows_[v][k];
                    if (mask >> u & 1U)
                        a(r, index_in(mask, u)) -= p;
                    else
                        b(r) += p * expected(mask | (std::uint32_t{1} << u), u);
                }
            }
            const Eigen::VectorXd e = a.partialPivLu().solve(b);
            for (std::size_t r = 0; r < size; ++r)
                sol[r] = e(r);
        }
        return memo_.emplace(mask, std::move(sol)).first->second;
    }

    const Graph& g_;
    std::vector<std::vector<double>> rows_;
    std::size_t target_;
    std::unordered_map<std::uint32_t, std::vector<double>> memo_;
};

} // namespace

std::vector<double> oracle_hitting_times_to(const Graph& g, const StrategySpec& spec, NodeId j,
                                            const OracleLimits& limits) {
    require_memoryless(spec);
    const std::size_t n = g.order();
    if (n > limits.hitting_max_nodes)
        throw OracleError(fmt::format("hitting-time oracle limited to n <= {}, got {}", limits.hitting_max_nodes, n));
    if (j >= n)
        throw OracleError("target node out of range");
    const auto rows = all_rows(g, spec);
    // Transient states are all nodes but j, packed by skipping j.
    auto idx = [j](NodeId v) { return static_cast<Eigen::Index>(v < j ? v : v - 1); };
    const auto size = static_cast<Eigen::Index>(n - 1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(size, size);
    Eigen::VectorXd b = Eigen::VectorXd::Ones(size);
    for (NodeId v = 0; v < n; ++v) {
        if (v == j)
            continue;
        auto nb = g.neighbors(v);
        for (std::size_t k = 0; k < nb.size(); ++k)
            if (nb[k] != j)
                a(idx(v), idx(nb[k])) -= rows[v][k];
    }
    const Eigen::VectorXd h = a.partialPivLu().solve(b);
    std::vector<double> out(n, 0.0);
    for (NodeId v = 0; v < n; ++v)
        if (v != j)
            out[v] = h(idx(v));
    return out;
}

double oracle_hitting_time(const Graph& g, const StrategySpec& spec, NodeId i, NodeId j, const OracleLimits& limits) {
    if (i >= g.order())
        throw OracleError("start node out of range");
    return oracle_hitting_times_to(g, spec, j, limits)[i];
}

double oracle_pct(const Graph& g, const StrategySpec& spec, NodeId start, double tau, const OracleLimits& limits) {
    require_memoryless(spec);
    const std::size_t n = g.order();
    if (n > limits.pct_max_nodes || n > 31)
        throw OracleError(fmt::format("partial-cover oracle limited to n <= {}, got {}", limits.pct_max_nodes, n));
    if (start >= n)
        throw OracleError("start node out of range");
    if (!(tau > 0.0 && tau <= 1.0))
        throw OracleError(fmt::format("tau {} is outside (0, 1]", tau));
    const std::size_t target = coverage_threshold(tau, n);
    if (target <= 1)
        return 0.0;
    CoverChain chain(g, all_rows(g, spec), target);
    return chain.expected(std::uint32_t{1} << start, start);
}

} // namespace covertime
