#include "gencat/latent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "gencat/model.hpp"
#include "gencat/rng.hpp"
#include "gencat/util.hpp"

namespace gencat::latent {

namespace {
constexpr double kClipFloor = 1e-6;
}

TopologyType topology_type(const Matrix& class_pref_mean, std::uint32_t cls) {
  const double random_proportion = 1.0 / static_cast<double>(class_pref_mean.rows());
  return class_pref_mean(cls, cls) >= random_proportion ? TopologyType::positive
                                                        : TopologyType::negative;
}

std::vector<TopologyType> topology_types(const Matrix& class_pref_mean) {
  std::vector<TopologyType> types(class_pref_mean.rows());
  for (std::size_t l = 0; l < types.size(); ++l) {
    types[l] = topology_type(class_pref_mean, static_cast<std::uint32_t>(l));
  }
  return types;
}

ClassSizeDistribution sample_class_sizes(const ClassSizeSpec& spec, std::uint32_t k,
                                         std::mt19937_64& rng) {
  if (k == 0) throw Error(ErrorKind::out_of_range, "k must be positive");
  std::vector<double> rho(k, 0.0);
  switch (spec.mode) {
    case ClassSizeSpec::Mode::power_law: {
      if (!std::isfinite(spec.phi)) {
        throw Error(ErrorKind::bad_exponent, "class size exponent is not finite");
      }
      if (spec.phi < 1.0 || spec.phi > 2.0) {
        std::fprintf(stderr, "warning: class size exponent %g outside the typical [1,2] range\n",
                     spec.phi);
      }
      for (std::uint32_t l = 0; l < k; ++l) {
        rho[l] = std::pow(static_cast<double>(l + 1), -spec.phi);
      }
      break;
    }
    case ClassSizeSpec::Mode::normal: {
      std::normal_distribution<double> dist(spec.mean, spec.dev > 0.0 ? spec.dev : 1e-12);
      for (std::uint32_t l = 0; l < k; ++l) {
        rho[l] = std::max(spec.dev > 0.0 ? dist(rng) : spec.mean, kClipFloor);
      }
      break;
    }
    case ClassSizeSpec::Mode::explicit_list: {
      if (spec.rho.size() != k) {
        throw Error(ErrorKind::bad_shape, "explicit class sizes must have k entries");
      }
      double sum = 0.0;
      for (double v : spec.rho) {
        if (!std::isfinite(v) || v <= 0.0 || v > 1.0) {
          throw Error(ErrorKind::out_of_range, "class size proportion outside (0,1]");
        }
        sum += v;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance) {
        throw Error(ErrorKind::non_stochastic_row,
                    "class sizes sum to " + std::to_string(sum));
      }
      rho = spec.rho;
      break;
    }
  }
  double total = std::accumulate(rho.begin(), rho.end(), 0.0);
  for (double& v : rho) v /= total;
  return ClassSizeDistribution{std::move(rho)};
}

std::vector<std::uint32_t> assign_labels(const ClassSizeDistribution& rho, std::uint32_t n,
                                         std::mt19937_64& rng) {
  const std::uint32_t k = static_cast<std::uint32_t>(rho.rho.size());
  if (n < k) {
    throw Error(ErrorKind::infeasible, "cannot populate " + std::to_string(k) +
                                           " classes with " + std::to_string(n) + " nodes");
  }
  std::vector<double> cdf(k);
  double acc = 0.0;
  for (std::uint32_t l = 0; l < k; ++l) {
    acc += rho.rho[l];
    cdf[l] = acc;
  }
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<std::uint32_t> labels(n);
  std::vector<std::uint32_t> counts(k, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double x = uniform(rng) * acc;
    std::uint32_t l = 0;
    while (l + 1 < k && x >= cdf[l]) ++l;
    labels[i] = l + 1;
    ++counts[l];
  }
  // Empty classes are repaired by moving one node out of the largest class;
  // the divides-by-|class| measurements need every class populated.
  for (std::uint32_t l = 0; l < k; ++l) {
    if (counts[l] > 0) continue;
    const std::uint32_t donor = static_cast<std::uint32_t>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    for (std::uint32_t i = n; i-- > 0;) {
      if (labels[i] == donor + 1) {
        labels[i] = l + 1;
        --counts[donor];
        ++counts[l];
        break;
      }
    }
  }
  return labels;
}

Matrix init_membership(const std::vector<std::uint32_t>& labels, const Matrix& class_pref_mean,
                       const Matrix& class_pref_dev, std::uint64_t seed) {
  const std::size_t n = labels.size();
  const std::size_t k = class_pref_mean.cols();
  if (class_pref_dev.rows() != class_pref_mean.rows() || class_pref_dev.cols() != k) {
    throw Error(ErrorKind::bad_shape, "mean and deviation shapes differ");
  }
  Matrix u(n, k);
  util::parallel_for(n, [&](std::size_t i) {
    auto rng = substream(seed, StreamTag::membership_row, i);
    const std::size_t cls = labels[i] - 1;
    auto row = u.row(i);
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double dev = class_pref_dev(cls, j);
      double value = class_pref_mean(cls, j);
      if (dev > 0.0) {
        std::normal_distribution<double> dist(value, dev);
        value = dist(rng);
      }
      row[j] = std::max(value, kClipFloor);
      sum += row[j];
    }
    for (std::size_t j = 0; j < k; ++j) row[j] /= sum;
  });
  return u;
}

std::vector<double> reverse_membership_row(std::span<const double> u_row, std::uint32_t cls) {
  const std::size_t k = u_row.size();
  if (k < 2) throw Error(ErrorKind::bad_shape, "reversal needs at least two classes");
  if (cls >= k) throw Error(ErrorKind::out_of_range, "class index outside row");
  double denom = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    if (j != cls) denom += 1.0 - u_row[j];
  }
  if (denom <= 0.0) {
    throw Error(ErrorKind::degenerate_row, "all mass outside the labeled coordinate");
  }
  std::vector<double> out(k);
  const double scale = u_row[cls] / denom;
  for (std::size_t j = 0; j < k; ++j) {
    out[j] = (j == cls) ? 1.0 - u_row[cls] : (1.0 - u_row[j]) * scale;
  }
  return out;
}

Matrix derive_connection_proportions(const Matrix& membership,
                                     const std::vector<std::uint32_t>& labels,
                                     const Matrix& class_pref_mean) {
  const auto types = topology_types(class_pref_mean);
  Matrix connection = membership;
  util::parallel_for(membership.rows(), [&](std::size_t i) {
    const std::uint32_t cls = labels[i] - 1;
    if (types[cls] == TopologyType::negative) {
      const auto reversed = reverse_membership_row(membership.row(i), cls);
      auto row = connection.row(i);
      std::copy(reversed.begin(), reversed.end(), row.begin());
    }
  });
  return connection;
}

Matrix init_attr_proportions(const Matrix& attr_class_corr) { return attr_class_corr; }

}  // namespace gencat::latent
