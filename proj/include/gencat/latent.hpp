#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gencat/types.hpp"

namespace gencat::latent {

enum class TopologyType { positive, negative };

/// A class is positive (homophilous) when its intra-connection preference is
/// at least the random-connection proportion 1/k, negative otherwise.
TopologyType topology_type(const Matrix& class_pref_mean, std::uint32_t cls);
std::vector<TopologyType> topology_types(const Matrix& class_pref_mean);

/// Class-size proportions. power_law mode uses the deterministic rank
/// construction size_l = l^(-phi) normalized; normal mode draws k values and
/// normalizes; explicit_list is validated and passed through.
ClassSizeDistribution sample_class_sizes(const ClassSizeSpec& spec, std::uint32_t k,
                                         std::mt19937_64& rng);

/// Draws n labels in {1..k} from the class-size distribution, then repairs
/// empty classes by moving one node out of the currently largest class.
/// Throws infeasible when n < k.
std::vector<std::uint32_t> assign_labels(const ClassSizeDistribution& rho, std::uint32_t n,
                                         std::mt19937_64& rng);

/// Node-class membership proportions: row i is drawn entrywise from
/// normal(mean[C_i][j], dev[C_i][j]), clipped below at 1e-6 and
/// row-normalized. Rows use independent substreams of `seed` so the result
/// does not depend on the thread count.
Matrix init_membership(const std::vector<std::uint32_t>& labels, const Matrix& class_pref_mean,
                       const Matrix& class_pref_dev, std::uint64_t seed);

/// Reversal of a stochastic membership row for a heterophilous class:
/// the labeled coordinate becomes 1 - u[l], the rest share the removed mass
/// proportionally to (1 - u[h]). The output row sums to one.
std::vector<double> reverse_membership_row(std::span<const double> u_row, std::uint32_t cls);

/// Node-class connection proportions: equal to the membership row for
/// positive-topology classes, its reversal for negative ones. Applied exactly
/// once per pipeline run.
Matrix derive_connection_proportions(const Matrix& membership,
                                     const std::vector<std::uint32_t>& labels,
                                     const Matrix& class_pref_mean);

/// Attribute-class proportions start as a copy of the target correlation.
Matrix init_attr_proportions(const Matrix& attr_class_corr);

}  // namespace gencat::latent
