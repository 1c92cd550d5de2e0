#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gencat/edges.hpp"
#include "gencat/types.hpp"

namespace gencat {

struct PipelineOptions {
  /// Temperature adjustment of the latent factors (off only for ablations).
  bool adjust_proportions = true;
  edges::TargetSelection target_selection = edges::TargetSelection::inverse_table;
  /// Overrides the fitted power-law degree sequence (reproduction scenario).
  std::optional<std::vector<std::uint32_t>> degree_list;
};

struct GenerationResult {
  AttributedGraph graph;
  LatentFactors factors;                    // post-adjustment
  DegreePlan plan;                          // theta_prime holds realized degrees
  std::vector<double> class_sizes;          // target rho actually used
  std::vector<double> per_class_mean_loss;  // achieved estimate loss per class
  std::uint64_t requested_edges = 0;
  double fitted_degree_exponent = 0.0;      // 0 when a degree list was supplied
  bool mape_defined = false;                // false when some expected degree is 0
  double mape = 0.0;
  edges::EdgeGenInfo edge_info;
  double seconds_latent = 0.0;
  double seconds_adjust = 0.0;
  double seconds_edges = 0.0;
  double seconds_attributes = 0.0;
  double seconds_total = 0.0;
};

/// Full generation pipeline: class sizes and labels, latent factors,
/// proportion adjustment, degree plan, edge generation, attributes.
/// Deterministic given (config, seed) regardless of thread count.
GenerationResult generate(const GeneratorConfig& cfg, const PipelineOptions& opts = {});

}  // namespace gencat
