#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "gencat/types.hpp"

namespace gencat::presets {

/// LFR-style parameterization: every diagonal of the preference mean is the
/// mixing value mu, off-diagonals share (1 - mu)/(k - 1) uniformly, and the
/// deviation is zero so all nodes of a class get identical proportions.
std::pair<Matrix, Matrix> lfr_preset(std::uint32_t k, double mu);

/// True when (M, D) satisfy the three LFR simulation conditions for mu.
bool lfr_conditions_hold(const Matrix& mean, const Matrix& dev, double mu, double tol = 1e-12);

/// DC-SBM-style parameterization: the given stochastic preference mean with
/// zero deviation.
std::pair<Matrix, Matrix> dcsbm_preset(const Matrix& mean_in);

/// Convenience builder from diagonal preferences only: off-diagonals are
/// filled uniformly per row; deviation diagonals are sampled uniformly from
/// [dev_lo, dev_hi], off-diagonals fixed at 0.05.
std::pair<Matrix, Matrix> diagonal_preset(std::uint32_t k, const std::vector<double>& diag,
                                          std::mt19937_64& rng, double dev_lo = 0.05,
                                          double dev_hi = 0.3);

}  // namespace gencat::presets
