#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gencat/types.hpp"

namespace gencat::attributes {

/// Base attribute vectors: the n x d product of membership rows with the
/// attribute-class proportion rows, so nodes of a class share similar values.
Matrix base_attributes(const Matrix& membership, const Matrix& attr_proportions);

struct NormalApplyInfo {
  std::uint32_t constant_columns = 0;  // degenerate columns mapped to 0.5
};

/// Adds zero-mean normal noise with deviation omega entrywise, then min-max
/// normalizes each attribute column to [0,1]. A column with zero range maps
/// to all 0.5. Columns use independent substreams of `seed`.
Matrix apply_normal(const Matrix& base, double omega, std::uint64_t seed,
                    NormalApplyInfo* info = nullptr);

struct BernoulliApplyInfo {
  std::uint64_t clamped_entries = 0;  // base entries pushed back into [0,1]
};

/// Entrywise independent Bernoulli draws with success probability equal to
/// the base entry clamped to [0,1].
Matrix apply_bernoulli(const Matrix& base, std::uint64_t seed, BernoulliApplyInfo* info = nullptr);

/// Exact 1-D Earth-Mover distance between two empirical distributions:
/// mean absolute difference of sorted samples for equal sizes, the L1
/// distance between empirical quantile functions otherwise.
double em_distance_1d(std::vector<double> samples_a, std::vector<double> samples_b);

/// Standard normal quantile function (Acklam's rational approximation with
/// one refinement step); p in (0, 1).
double normal_quantile(double p);

/// Equal-mass quantile discretization of N(mean, sigma^2): values at
/// probabilities (i + 0.5) / count.
std::vector<double> normal_quantile_samples(double mean, double sigma, std::size_t count);

/// EM distance between a sample column and the normal fitted to it (mean of
/// the samples, user-specified deviation), via the quantile discretization
/// with matching sample count.
double em_distance_to_fitted_normal(std::span<const double> samples, double omega);

}  // namespace gencat::attributes
