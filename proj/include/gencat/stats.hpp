#pragma once

#include <cstdint>
#include <vector>

#include "gencat/types.hpp"

namespace gencat::stats {

/// Class preference mean of a concrete graph: entry (l1, l2) averages, over
/// non-isolated nodes of class l1, the fraction of their edges that land in
/// class l2. Degree-0 nodes are excluded (their fraction is undefined).
/// Throws empty_class / all_isolated_class.
Matrix class_preference_mean(const AttributedGraph& g, std::uint32_t k);

/// Population standard deviation of the same per-node fractions.
Matrix class_preference_deviation(const AttributedGraph& g, std::uint32_t k);

/// Entry (delta, l) is the mean of attribute delta over nodes of class l.
Matrix attribute_class_correlation(const AttributedGraph& g, std::uint32_t k);

/// Sum of squared differences between target class proportions and the
/// realized ones.
double class_size_loss(const std::vector<double>& rho_target, const AttributedGraph& g);

struct MeanDevLosses {
  double mean_rows = 0.0;  // sum over classes of the L2 residual row norm
  double dev_rows = 0.0;
  double mse_mean = 0.0;   // mean over all k^2 entries
  double mse_dev = 0.0;
};

/// Residuals between target preference mean/deviation and the measured ones.
MeanDevLosses mean_deviation_losses(const Matrix& mean_target, const Matrix& dev_target,
                                    const AttributedGraph& g);

struct CommunityStats {
  double intra_density = 0.0;
  double inter_density = 0.0;
  bool intra_defined = true;
  bool inter_defined = true;
  std::uint64_t lcc_size = 0;
  std::uint64_t component_count = 0;
  double char_path_length = 0.0;     // mean shortest-path length over reachable LCC pairs
  std::uint64_t path_sources = 0;    // BFS sources used (sampled above 5000 nodes)
};

CommunityStats community_stats(const AttributedGraph& g, std::uint64_t seed = 0);

/// Everything of Eqs-style class features in one pass, degenerate classes
/// flagged instead of thrown (for reports).
ClassFeatureReport measure_class_features(const AttributedGraph& g);

struct ExtractedParams {
  std::vector<std::uint32_t> degrees;  // per node
  Matrix mean;                         // k x k
  Matrix deviation;                    // k x k
  std::vector<double> rho;             // length k
  std::uint32_t k = 0;
};

/// Parameter extraction for the reproduction scenario: node degrees, class
/// preference mean/deviation and class sizes of a labeled graph.
ExtractedParams extract_params(const AttributedGraph& g);

}  // namespace gencat::stats
