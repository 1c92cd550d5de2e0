#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gencat/types.hpp"

namespace gencat::edges {

/// Largest degree the fitted sequences may request: min(n-1, sqrt(2m)), the
/// structural cutoff below which a simple graph can realize the sequence.
std::uint32_t structural_degree_cap(std::uint32_t n, std::uint64_t m);

/// Quantile scale of the fitted sequences, a quarter of the requested mean
/// degree (clamped to [1, cap]).
std::uint32_t minimum_degree_scale(std::uint32_t n, std::uint64_t m);

/// Deterministic power-law degree sequence: min_degree times the quantile of
/// a Pareto-type law with the given exponent, evaluated at (i + 0.5) / n and
/// rounded, clamped to [1, max_degree]. Sorted descending by construction.
std::vector<std::uint32_t> powerlaw_degrees(std::uint32_t n, double exponent,
                                            std::uint32_t min_degree, std::uint32_t max_degree);

/// Grid search over exponents {1.00, 1.01, ..., 3.00} minimizing
/// |m - sum(powerlaw_degrees) / 2|, ties toward the smaller exponent.
/// Throws infeasible_budget when m exceeds n(n-1)/2.
double fit_degree_exponent(std::uint32_t n, std::uint64_t m);

/// Degree plan from a fitted exponent. After the quantile construction the
/// total is calibrated to exactly max(n, 2m) by cycling unit increments or
/// decrements across nodes, keeping every degree in [1, n-1].
DegreePlan build_degree_plan(std::uint32_t n, double exponent, std::uint64_t m);

/// Degree plan from an arbitrary user-supplied degree list (sorted
/// descending; entries may be zero).
DegreePlan degree_plan_from_list(std::vector<std::uint32_t> degrees);

/// Per-class inverse-CDF lookup tables over the connection-proportion
/// columns. Table step w = 1/(100n); entry c holds the smallest node whose
/// cumulative normalized column weight exceeds w*c, so one uniform draw maps
/// to a node in O(1) with per-node probability error at most w.
struct SamplerTables {
  double step = 0.0;                                  // w
  std::vector<std::vector<std::uint32_t>> to_node;    // k tables of length 100n
};

SamplerTables build_sampler_tables(const Matrix& connection);

enum class TargetSelection {
  inverse_table,      // O(1) lookup table (default)
  cdf_binary_search,  // exact CDF with O(log n) draws, O(kn) memory
  direct_product,     // exact per-source edge-probability row, O(nk) per source
};

struct EdgeGenInfo {
  std::uint64_t accepted = 0;
  std::uint64_t rejected_duplicate = 0;
  std::uint64_t rejected_self_loop = 0;
  std::uint64_t rejected_budget = 0;
  std::uint32_t nodes_capped_by_rounds = 0;  // nodes still short after r rounds
};

/// Edge generation: nodes are processed in descending expected-degree order;
/// each round draws one class per missing degree from the node's membership
/// row, then one target per class from the connection columns. A candidate
/// is kept only when it is no duplicate, no self-loop and both endpoints
/// still have degree budget. Stops after `rounds_cap` rounds per node or
/// once max_edges edges exist. Updates plan.theta_prime in place.
std::vector<Edge> generate_edges(const Matrix& membership, const Matrix& connection,
                                 DegreePlan& plan, std::uint64_t max_edges,
                                 std::uint32_t rounds_cap, TargetSelection selection,
                                 std::mt19937_64& rng, EdgeGenInfo* info = nullptr);

/// Mean absolute percentage error between expected and realized degrees.
/// Throws zero_expected_degree when any expected degree is zero.
double degree_mape(const std::vector<std::uint32_t>& theta,
                   const std::vector<std::uint32_t>& theta_prime);

}  // namespace gencat::edges
