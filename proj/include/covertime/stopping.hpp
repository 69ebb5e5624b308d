#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "covertime/graph.hpp"
#include "covertime/rng.hpp"
#include "covertime/walk_state.hpp"

// Sequential-inspection stopping rule for picking a low-degree neighbor.
//
// A node sees its N neighbors one at a time in random order. It observes the
// first r-1 without choosing, then takes the first neighbor whose degree is
// strictly below every degree seen so far, or the last one if none qualifies.
// Pr(S_k = 1) = (r-1) / (k(k-1)) is the probability that the rule stops at
// position k; the reward for stopping at k is (k/N) w(k), where k/N is the
// chance that a record at k is the overall minimum.

namespace covertime {

struct ConstantWeight {
    double c = 1.0;
};

/// w(k) = (k-1) exp(-k / theta)
struct ExponentialWeight {
    double theta = 1.0;
};

using WeightFunction = std::variant<ConstantWeight, ExponentialWeight>;

class RewardModel {
public:
    /// Throws std::invalid_argument unless c > 0, theta > 0 and n >= 2.
    RewardModel(WeightFunction weight, std::size_t n);

    const WeightFunction& weight() const noexcept { return weight_; }
    std::size_t n() const noexcept { return n_; }
    /// exp(-1/theta) for the exponential weight, 1 otherwise.
    double alpha() const noexcept { return alpha_; }
    bool is_exponential() const noexcept { return std::holds_alternative<ExponentialWeight>(weight_); }

    double w(std::size_t k) const;

private:
    WeightFunction weight_;
    std::size_t n_;
    double alpha_ = 1.0;
};

struct Fraction {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// (r-1) / (k(k-1)) in lowest terms. Requires 2 <= r <= k <= n.
Fraction success_probability(std::size_t r, std::size_t k, std::size_t n);

/// Closed form of E(R) at cutoff r:
///   constant:    c (r-1)/N * sum_{k=r}^{N} 1/(k-1)
///   exponential: (r-1)/N * alpha^r (1 - alpha^(N-r+1)) / (1 - alpha)
double expected_reward(const RewardModel& model, std::size_t r);

/// E(R) by summing (k/N) w(k) Pr(S_k = 1) term by term.
double expected_reward_direct(const RewardModel& model, std::size_t r);

/// E(R) for every r in [2, N]; entry i holds r = i + 2. O(N).
std::vector<double> reward_table(const RewardModel& model);

struct CutoffResult {
    std::size_t r = 2;
    double reward = 0.0;
    /// Continuous maximizer: Newton on g(r) = (r-1)(alpha^r - alpha^(N+1))
    /// for the exponential weight, 1 + (N-1)/e for the constant weight.
    double continuous_r = 0.0;
    bool newton_converged = true;
    std::size_t newton_iterations = 0;
};

/// Exact integer argmax of E(R) over r in [2, N] (smallest r on ties).
CutoffResult optimal_cutoff(const RewardModel& model);

/// Newton iteration for the stationary point of g, clamped to [2, N] and
/// started at N/e. Iterates on g'(r) alpha^-r, whose root is the same.
/// Returns nullopt after 100 iterations without convergence.
std::optional<double> newton_cutoff(double alpha, std::size_t n, std::size_t* iterations = nullptr);

struct SecretaryChoice {
    std::size_t position = 0; // 1-based arrival position of the chosen candidate
    NodeId node = 0;
    std::uint32_t inspections = 0;
    bool stopped_by_rule = false; // false when the last candidate was forced
};

/// Runs the cutoff rule on candidates already in arrival order.
/// Requires 2 <= r <= arrival.size() (r = size means only the last can win).
SecretaryChoice apply_cutoff_rule(const Graph& g, std::span<const NodeId> arrival, std::size_t r);

/// Presents the neighbors of i in uniformly random order and applies the
/// rule with the optimal cutoff for N = d_i. Degree-1 nodes return their only
/// neighbor after one inspection.
SecretaryChoice secretary_select(const Graph& g, NodeId i, const WeightFunction& weight, Rng& rng);

/// Walk step that runs the stopping rule over the unvisited neighbors of the
/// current node; uniform neighbor when all are visited.
Move secretary_walk_step(const Graph& g, const WalkState& s, const WeightFunction& weight, Rng& rng);

} // namespace covertime
