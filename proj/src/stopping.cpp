#include "covertime/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace covertime {

namespace {

// Exponential rewards reach e^-5000 for theta = 0.1 and N = 500; long double
// keeps them out of the subnormal range.
using Wide = long double;

Wide exp_closed_form(double theta, std::size_t n, std::size_t r) {
    const Wide rm1 = static_cast<Wide>(r - 1);
    const Wide t = theta;
    // alpha^r (1 - alpha^(N-r+1)) / (1 - alpha)
    const Wide geometric = std::exp(-static_cast<Wide>(r) / t) *
                           (-std::expm1(-static_cast<Wide>(n - r + 1) / t)) / (-std::expm1(Wide{-1} / t));
    return rm1 / static_cast<Wide>(n) * geometric;
}

std::vector<Wide> wide_table(const RewardModel& model) {
    const std::size_t n = model.n();
    std::vector<Wide> table(n - 1);
    if (auto* c = std::get_if<ConstantWeight>(&model.weight())) {
        Wide tail = 0; // sum_{k=r}^{N} 1/(k-1)
        for (std::size_t r = n; r >= 2; --r) {
            tail += Wide{1} / static_cast<Wide>(r - 1);
            table[r - 2] = static_cast<Wide>(c->c) * static_cast<Wide>(r - 1) / static_cast<Wide>(n) * tail;
        }
    } else {
        const double theta = std::get<ExponentialWeight>(model.weight()).theta;
        for (std::size_t r = 2; r <= n; ++r)
            table[r - 2] = exp_closed_form(theta, n, r);
    }
    return table;
}

void check_cutoff(const RewardModel& model, std::size_t r) {
    if (r < 2 || r > model.n())
        throw std::invalid_argument(fmt::format("cutoff r must lie in [2, {}], got {}", model.n(), r));
}

} // namespace

RewardModel::RewardModel(WeightFunction weight, std::size_t n) : weight_(weight), n_(n) {
    if (n < 2)
        throw std::invalid_argument(fmt::format("reward model needs N >= 2 neighbors, got {}", n));
    if (auto* c = std::get_if<ConstantWeight>(&weight_)) {
        if (!(c->c > 0.0) || !std::isfinite(c->c))
            throw std::invalid_argument("constant weight c must be positive");
    } else {
        const double theta = std::get<ExponentialWeight>(weight_).theta;
        if (!(theta > 0.0) || !std::isfinite(theta))
            throw std::invalid_argument("exponential weight theta must be positive");
        alpha_ = std::exp(-1.0 / theta);
    }
}

double RewardModel::w(std::size_t k) const {
    if (auto* c = std::get_if<ConstantWeight>(&weight_))
        return c->c;
    const double theta = std::get<ExponentialWeight>(weight_).theta;
    return static_cast<double>(k - 1) * std::exp(-static_cast<double>(k) / theta);
}

Fraction success_probability(std::size_t r, std::size_t k, std::size_t n) {
    if (!(2 <= r && r <= k && k <= n))
        throw std::invalid_argument(fmt::format("need 2 <= r <= k <= N, got r={} k={} N={}", r, k, n));
    std::uint64_t num = r - 1;
    std::uint64_t den = static_cast<std::uint64_t>(k) * (k - 1);
    const auto g = std::gcd(num, den);
    return {num / g, den / g};
}

double expected_reward(const RewardModel& model, std::size_t r) {
    check_cutoff(model, r);
    const std::size_t n = model.n();
    if (auto* c = std::get_if<ConstantWeight>(&model.weight())) {
        Wide harmonic = 0;
        for (std::size_t k = r; k <= n; ++k)
            harmonic += Wide{1} / static_cast<Wide>(k - 1);
        return static_cast<double>(static_cast<Wide>(c->c) * static_cast<Wide>(r - 1) / static_cast<Wide>(n) *
                                   harmonic);
    }
    return static_cast<double>(exp_closed_form(std::get<ExponentialWeight>(model.weight()).theta, n, r));
}

double expected_reward_direct(const RewardModel& model, std::size_t r) {
    check_cutoff(model, r);
    const auto n = static_cast<Wide>(model.n());
    Wide total = 0;
    for (std::size_t k = r; k <= model.n(); ++k) {
        const auto kk = static_cast<Wide>(k);
        Wide weight;
        if (auto* c = std::get_if<ConstantWeight>(&model.weight()))
            weight = c->c;
        else
            weight = (kk - 1) * std::exp(-kk / static_cast<Wide>(std::get<ExponentialWeight>(model.weight()).theta));
        const Wide pr_stop = static_cast<Wide>(r - 1) / (kk * (kk - 1));
        total += kk / n * weight * pr_stop;
    }
    return static_cast<double>(total);
}

std::vector<double> reward_table(const RewardModel& model) {
    auto wide = wide_table(model);
    return {wide.begin(), wide.end()};
}

std::optional<double> newton_cutoff(double alpha, std::size_t n, std::size_t* iterations) {
    // Stationary point of g(r) = (r-1)(alpha^r - alpha^(N+1)). Newton runs on
    // h(r) = g'(r) / alpha^r = 1 + (r-1) ln(alpha) - alpha^(N+1-r), which has
    // the same root, is strictly decreasing and concave, and does not underflow.
    const double lna = std::log(alpha);
    const double lo = 2.0, hi = static_cast<double>(n);
    double r = std::clamp(static_cast<double>(n) / std::exp(1.0), lo, hi);
    for (std::size_t it = 1; it <= 100; ++it) {
        const double tail = std::pow(alpha, static_cast<double>(n) + 1.0 - r);
        const double h = 1.0 + (r - 1.0) * lna - tail;
        const double dh = lna * (1.0 + tail);
        const double next = dh != 0.0 ? std::clamp(r - h / dh, lo, hi) : r;
        if (iterations)
            *iterations = it;
        if (std::abs(next - r) < 1e-10)
            return next;
        r = next;
    }
    return std::nullopt;
}

CutoffResult optimal_cutoff(const RewardModel& model) {
    const auto table = wide_table(model);
    const auto best = std::max_element(table.begin(), table.end()); // first maximum
    CutoffResult out;
    out.r = static_cast<std::size_t>(best - table.begin()) + 2;
    out.reward = static_cast<double>(*best);
    if (model.is_exponential()) {
        std::size_t iterations = 0;
        auto cont = newton_cutoff(model.alpha(), model.n(), &iterations);
        out.newton_iterations = iterations;
        out.newton_converged = cont.has_value();
        out.continuous_r = cont ? *cont : static_cast<double>(out.r);
    } else {
        out.continuous_r = std::max(2.0, 1.0 + static_cast<double>(model.n() - 1) / std::exp(1.0));
    }
    return out;
}

SecretaryChoice apply_cutoff_rule(const Graph& g, std::span<const NodeId> arrival, std::size_t r) {
    const std::size_t n = arrival.size();
    if (r < 2 || r > n)
        throw std::invalid_argument(fmt::format("cutoff r must lie in [2, {}], got {}", n, r));
    std::uint32_t best_seen = g.degree(arrival[0]);
    for (std::size_t k = 1; k + 1 < r; ++k)
        best_seen = std::min(best_seen, g.degree(arrival[k]));
    for (std::size_t k = r - 1; k < n; ++k) {
        const auto deg = g.degree(arrival[k]);
        if (deg < best_seen)
            return {k + 1, arrival[k], static_cast<std::uint32_t>(k + 1), true};
        best_seen = std::min(best_seen, deg);
    }
    return {n, arrival[n - 1], static_cast<std::uint32_t>(n), false};
}

SecretaryChoice secretary_select(const Graph& g, NodeId i, const WeightFunction& weight, Rng& rng) {
    auto nb = g.neighbors(i);
    if (nb.size() == 1)
        return {1, nb[0], 1, true};
    std::vector<NodeId> arrival(nb.begin(), nb.end());
    std::shuffle(arrival.begin(), arrival.end(), rng);
    const auto cutoff = optimal_cutoff(RewardModel(weight, arrival.size()));
    return apply_cutoff_rule(g, arrival, cutoff.r);
}

Move secretary_walk_step(const Graph& g, const WalkState& s, const WeightFunction& weight, Rng& rng) {
    const NodeId i = s.current();
    auto nb = g.neighbors(i);
    auto& slots = s.scratch();
    slots.clear();
    for (std::uint32_t k = 0; k < nb.size(); ++k)
        if (!s.visited(nb[k]))
            slots.push_back(k);
    if (slots.empty()) {
        const auto slot = static_cast<std::uint32_t>(uniform_index(rng, nb.size()));
        return {nb[slot], slot, 0};
    }
    if (slots.size() == 1)
        return {nb[slots[0]], slots[0], 1};

    std::shuffle(slots.begin(), slots.end(), rng);
    std::vector<NodeId> arrival(slots.size());
    std::transform(slots.begin(), slots.end(), arrival.begin(), [&](auto slot) { return nb[slot]; });
    const auto cutoff = optimal_cutoff(RewardModel(weight, arrival.size()));
    const auto choice = apply_cutoff_rule(g, arrival, cutoff.r);
    return {choice.node, slots[choice.position - 1], choice.inspections};
}

} // namespace covertime
