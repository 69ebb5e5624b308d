#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "covertime/graph.hpp"

namespace covertime {

/// Probability that a uniform B-subset (without replacement) of an unvisited
/// set of size l_size contains one of its `multiplicity` minimum-degree nodes:
///   1 - C(l_size - multiplicity, B) / C(l_size, B)
/// Throws std::invalid_argument unless B >= 1 and 1 <= multiplicity <= l_size.
double closed_form_p(std::size_t l_size, std::size_t budget, std::size_t multiplicity);

struct BudgetPoint {
    std::uint32_t budget = 0;
    double p = 0.0;
    std::size_t decision_points = 0;
    std::size_t forced = 0; // decisions with |L| <= B
};

struct BudgetProbe {
    std::string graph;
    std::vector<BudgetPoint> points;
};

struct ProbeOptions {
    std::size_t walks = 100;
    std::uint64_t seed = 1;
    /// Each walk runs until floor(tau n) nodes are visited.
    double tau = 0.3;
    std::size_t threads = 1;
};

/// Runs MD(B) walks from uniform random starts for every B in the grid and
/// records, per decision point (a step with unvisited neighbors), whether the
/// chosen node has the minimum degree of the unvisited set.
BudgetProbe probe_graph(const Graph& g, const std::string& label, std::span<const std::uint32_t> budgets,
                        const ProbeOptions& options);

/// Decision points sharing (|L|, multiplicity).
struct Stratum {
    std::size_t l_size = 0;
    std::size_t multiplicity = 0;
    std::size_t samples = 0;
    std::size_t hits = 0;
    double empirical() const { return samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.0; }
};

/// Strata observed during MD(B) walks, sorted by (l_size, multiplicity).
std::vector<Stratum> probe_strata(const Graph& g, std::uint32_t budget, const ProbeOptions& options);

struct StratumGap {
    std::size_t strata_checked = 0;
    double max_gap = 0.0;
    Stratum worst;
};

/// Largest |empirical - closed_form_p| over strata with >= min_samples samples.
StratumGap empirical_vs_closed_form(std::span<const Stratum> strata, std::uint32_t budget,
                                    std::size_t min_samples = 1000);

/// "graph,B,p,decision_points"
std::string budget_csv_header();
std::string budget_csv_rows(const BudgetProbe& probe);

} // namespace covertime
