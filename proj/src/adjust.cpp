#include "gencat/adjust.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gencat/model.hpp"

namespace gencat::adjust {

namespace {

// Scale-invariant form of the rescale: dividing by the row maximum first
// keeps u^(1/T) away from overflow/underflow for sharp temperatures.
void rescale_into(std::span<const double> u_row, double inv_t, std::span<double> out) {
  const double top = *std::max_element(u_row.begin(), u_row.end());
  double sum = 0.0;
  for (std::size_t j = 0; j < u_row.size(); ++j) {
    out[j] = u_row[j] > 0.0 ? std::pow(u_row[j] / top, inv_t) : 0.0;
    sum += out[j];
  }
  for (std::size_t j = 0; j < u_row.size(); ++j) out[j] /= sum;
}

void reverse_into(std::span<const double> u_row, std::uint32_t cls, std::span<double> out) {
  double denom = 0.0;
  for (std::size_t j = 0; j < u_row.size(); ++j) {
    if (j != cls) denom += 1.0 - u_row[j];
  }
  if (denom <= 0.0) {
    throw Error(ErrorKind::degenerate_row, "all mass outside the labeled coordinate");
  }
  const double scale = u_row[cls] / denom;
  for (std::size_t j = 0; j < u_row.size(); ++j) {
    out[j] = (j == cls) ? 1.0 - u_row[cls] : (1.0 - u_row[j]) * scale;
  }
}

std::vector<std::uint32_t> class_members(const std::vector<std::uint32_t>& labels,
                                         std::uint32_t cls) {
  std::vector<std::uint32_t> members;
  for (std::uint32_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == cls + 1) members.push_back(i);
  }
  return members;
}

// Mean over the class of membership * connection rows under temperature T,
// then the L2 residual against the target preference row.
double estimate_loss(const Matrix& membership, const std::vector<std::uint32_t>& members,
                     const Matrix& class_pref_mean, std::uint32_t cls,
                     latent::TopologyType topo, double temperature) {
  const std::size_t k = membership.cols();
  std::vector<double> est(k, 0.0);
  std::vector<double> scaled(k), partner(k);
  const double inv_t = 1.0 / temperature;
  for (std::uint32_t i : members) {
    rescale_into(membership.row(i), inv_t, scaled);
    if (topo == latent::TopologyType::positive) {
      for (std::size_t j = 0; j < k; ++j) est[j] += scaled[j] * scaled[j];
    } else {
      reverse_into(scaled, cls, partner);
      for (std::size_t j = 0; j < k; ++j) est[j] += scaled[j] * partner[j];
    }
  }
  double loss = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double diff = class_pref_mean(cls, j) - est[j] / static_cast<double>(members.size());
    loss += diff * diff;
  }
  return std::sqrt(loss);
}

}  // namespace

std::vector<double> temperature_grid() {
  std::vector<double> grid(20);
  for (int j = 1; j <= 20; ++j) grid[j - 1] = 0.05 * j;
  return grid;
}

std::vector<double> rescale_row(std::span<const double> u_row, double temperature) {
  if (!(temperature > 0.0)) {
    throw Error(ErrorKind::bad_temperature, "temperature must be positive");
  }
  double sum = 0.0;
  for (double v : u_row) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::out_of_range, "row entries must be non-negative");
    }
    sum += v;
  }
  if (sum <= 0.0) throw Error(ErrorKind::out_of_range, "row is all zero");
  std::vector<double> out(u_row.size());
  rescale_into(u_row, 1.0 / temperature, out);
  return out;
}

Matrix class_mean_membership(const Matrix& membership, const std::vector<std::uint32_t>& labels,
                             std::uint32_t k) {
  Matrix mean(k, k, 0.0);
  std::vector<std::uint32_t> counts(k, 0);
  for (std::uint32_t i = 0; i < labels.size(); ++i) {
    const std::uint32_t cls = labels[i] - 1;
    ++counts[cls];
    for (std::size_t j = 0; j < membership.cols(); ++j) mean(cls, j) += membership(i, j);
  }
  for (std::uint32_t l = 0; l < k; ++l) {
    if (counts[l] == 0) {
      throw Error(ErrorKind::empty_class, "class " + std::to_string(l + 1) + " has no nodes");
    }
    for (std::size_t j = 0; j < membership.cols(); ++j) mean(l, j) /= counts[l];
  }
  return mean;
}

double class_mean_loss(const Matrix& membership, const Matrix& connection,
                       const std::vector<std::uint32_t>& labels, const Matrix& class_pref_mean,
                       std::uint32_t cls) {
  const auto members = class_members(labels, cls);
  if (members.empty()) {
    throw Error(ErrorKind::empty_class, "class " + std::to_string(cls + 1) + " has no nodes");
  }
  const std::size_t k = membership.cols();
  std::vector<double> est(k, 0.0);
  for (std::uint32_t i : members) {
    for (std::size_t j = 0; j < k; ++j) est[j] += membership(i, j) * connection(i, j);
  }
  double loss = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double diff = class_pref_mean(cls, j) - est[j] / static_cast<double>(members.size());
    loss += diff * diff;
  }
  return std::sqrt(loss);
}

double adjust_class(Matrix& membership, Matrix& connection,
                    const std::vector<std::uint32_t>& labels, const Matrix& class_pref_mean,
                    std::uint32_t cls, latent::TopologyType topo) {
  const auto members = class_members(labels, cls);
  if (members.empty()) {
    throw Error(ErrorKind::empty_class, "class " + std::to_string(cls + 1) + " has no nodes");
  }
  double best_t = 1.0;
  double best_loss = std::numeric_limits<double>::infinity();
  for (double t : temperature_grid()) {
    const double loss = estimate_loss(membership, members, class_pref_mean, cls, topo, t);
    if (loss < best_loss) {
      best_loss = loss;
      best_t = t;
    }
  }
  const std::size_t k = membership.cols();
  const double inv_t = 1.0 / best_t;
  std::vector<double> scaled(k), partner(k);
  for (std::uint32_t i : members) {
    rescale_into(membership.row(i), inv_t, scaled);
    auto u_row = membership.row(i);
    auto c_row = connection.row(i);
    std::copy(scaled.begin(), scaled.end(), u_row.begin());
    if (topo == latent::TopologyType::positive) {
      std::copy(scaled.begin(), scaled.end(), c_row.begin());
    } else {
      reverse_into(scaled, cls, partner);
      std::copy(partner.begin(), partner.end(), c_row.begin());
    }
  }
  return best_loss;
}

std::vector<double> adjust_attributes(Matrix& attr_proportions, const Matrix& class_mean,
                                      const Matrix& attr_class_corr) {
  const std::size_t d = attr_proportions.rows();
  const std::size_t k = attr_proportions.cols();
  if (attr_class_corr.rows() != d || attr_class_corr.cols() != k) {
    throw Error(ErrorKind::bad_shape, "attribute-class correlation shape differs from V");
  }
  const auto grid = temperature_grid();
  std::vector<double> achieved(d, 0.0);
  std::vector<double> scaled(k), est(k);
  for (std::size_t delta = 0; delta < d; ++delta) {
    auto v_row = attr_proportions.row(delta);
    if (*std::max_element(v_row.begin(), v_row.end()) <= 0.0) continue;  // nothing to rescale
    double best_t = 1.0;
    double best_loss = std::numeric_limits<double>::infinity();
    for (double t : grid) {
      rescale_into(v_row, 1.0 / t, scaled);
      double loss = 0.0;
      for (std::size_t l = 0; l < k; ++l) {
        est[l] = 0.0;
        for (std::size_t j = 0; j < k; ++j) est[l] += class_mean(l, j) * scaled[j];
        const double diff = attr_class_corr(delta, l) - est[l];
        loss += diff * diff;
      }
      loss = std::sqrt(loss);
      if (loss < best_loss) {
        best_loss = loss;
        best_t = t;
      }
    }
    rescale_into(v_row, 1.0 / best_t, scaled);
    std::copy(scaled.begin(), scaled.end(), v_row.begin());
    achieved[delta] = best_loss;
  }
  return achieved;
}

}  // namespace gencat::adjust
