#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gencat/latent.hpp"
#include "gencat/types.hpp"

namespace gencat::adjust {

/// Temperature grid {0.05, 0.10, ..., 1.00}. T = 0 is excluded (the rescale
/// exponent 1/T is undefined there); argmin ties break toward smaller T.
std::vector<double> temperature_grid();

/// Rescales a non-negative row by out[j] = u[j]^(1/T) / sum_h u[h]^(1/T).
/// T in (0, 1]: smaller T sharpens the row toward its maximum, T = 1 is the
/// identity on stochastic rows.
std::vector<double> rescale_row(std::span<const double> u_row, double temperature);

/// Per-class mean of membership rows, one row per class (k x k).
Matrix class_mean_membership(const Matrix& membership, const std::vector<std::uint32_t>& labels,
                             std::uint32_t k);

/// Grid-searches the rescale temperature for one class so that the mean of
/// elementwise products membership * connection over the class matches the
/// target preference row, then rewrites both factors for every node of the
/// class. Returns the achieved loss (L2 norm of the residual row), which is
/// never worse than the T = 1 (no adjustment) loss.
double adjust_class(Matrix& membership, Matrix& connection,
                    const std::vector<std::uint32_t>& labels, const Matrix& class_pref_mean,
                    std::uint32_t cls, latent::TopologyType topo);

/// Loss of the current factors for one class under the same estimate,
/// without modifying anything (used for reporting and the no-adjust path).
double class_mean_loss(const Matrix& membership, const Matrix& connection,
                       const std::vector<std::uint32_t>& labels, const Matrix& class_pref_mean,
                       std::uint32_t cls);

/// Grid-searches a temperature per attribute row of V so that P * V_row^T
/// matches the target correlation row, where P is the class mean membership.
/// Returns the achieved loss per attribute.
std::vector<double> adjust_attributes(Matrix& attr_proportions, const Matrix& class_mean,
                                      const Matrix& attr_class_corr);

}  // namespace gencat::adjust
