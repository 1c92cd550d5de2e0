#include "gencat/attributes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gencat/rng.hpp"
#include "gencat/util.hpp"

namespace gencat::attributes {

Matrix base_attributes(const Matrix& membership, const Matrix& attr_proportions) {
  const std::size_t n = membership.rows();
  const std::size_t k = membership.cols();
  const std::size_t d = attr_proportions.rows();
  if (d > 0 && attr_proportions.cols() != k) {
    throw Error(ErrorKind::bad_shape, "attribute proportions column count differs from k");
  }
  Matrix base(n, d);
  util::parallel_for(n, [&](std::size_t i) {
    auto u_row = membership.row(i);
    for (std::size_t delta = 0; delta < d; ++delta) {
      double value = 0.0;
      for (std::size_t j = 0; j < k; ++j) value += u_row[j] * attr_proportions(delta, j);
      base(i, delta) = value;
    }
  });
  return base;
}

Matrix apply_normal(const Matrix& base, double omega, std::uint64_t seed, NormalApplyInfo* info) {
  if (!(omega >= 0.0)) throw Error(ErrorKind::out_of_range, "omega must be non-negative");
  const std::size_t n = base.rows();
  const std::size_t d = base.cols();
  Matrix x = base;
  std::vector<std::uint8_t> constant(d, 0);
  util::parallel_for(d, [&](std::size_t delta) {
    auto rng = substream(seed, StreamTag::attr_noise_column, delta);
    std::normal_distribution<double> noise(0.0, omega);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
      double value = x(i, delta);
      if (omega > 0.0) value += noise(rng);
      x(i, delta) = value;
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
    const double range = hi - lo;
    if (range <= 0.0) {
      for (std::size_t i = 0; i < n; ++i) x(i, delta) = 0.5;  // degenerate column
      constant[delta] = 1;
    } else {
      for (std::size_t i = 0; i < n; ++i) x(i, delta) = (x(i, delta) - lo) / range;
    }
  });
  if (info != nullptr) {
    info->constant_columns = static_cast<std::uint32_t>(
        std::count(constant.begin(), constant.end(), std::uint8_t{1}));
  }
  return x;
}

Matrix apply_bernoulli(const Matrix& base, std::uint64_t seed, BernoulliApplyInfo* info) {
  const std::size_t n = base.rows();
  const std::size_t d = base.cols();
  Matrix x(n, d);
  std::vector<std::uint64_t> clamped(d, 0);
  util::parallel_for(d, [&](std::size_t delta) {
    auto rng = substream(seed, StreamTag::attr_noise_column, delta);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      double p = base(i, delta);
      if (p < 0.0 || p > 1.0) {
        p = std::clamp(p, 0.0, 1.0);
        ++clamped[delta];
      }
      x(i, delta) = uniform(rng) < p ? 1.0 : 0.0;
    }
  });
  if (info != nullptr) {
    info->clamped_entries = std::accumulate(clamped.begin(), clamped.end(), std::uint64_t{0});
  }
  return x;
}

double em_distance_1d(std::vector<double> samples_a, std::vector<double> samples_b) {
  if (samples_a.empty() || samples_b.empty()) {
    throw Error(ErrorKind::empty_sample, "both sample lists must be non-empty");
  }
  std::sort(samples_a.begin(), samples_a.end());
  std::sort(samples_b.begin(), samples_b.end());
  const std::size_t na = samples_a.size();
  const std::size_t nb = samples_b.size();
  if (na == nb) {
    double total = 0.0;
    for (std::size_t i = 0; i < na; ++i) total += std::abs(samples_a[i] - samples_b[i]);
    return total / static_cast<double>(na);
  }
  // L1 distance between the two empirical quantile functions, integrated
  // exactly on the common grid of 1/(na*nb) mass units.
  const std::uint64_t units = static_cast<std::uint64_t>(na) * nb;
  std::uint64_t pos = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  double total = 0.0;
  while (pos < units) {
    const std::uint64_t next_a = static_cast<std::uint64_t>(i + 1) * nb;
    const std::uint64_t next_b = static_cast<std::uint64_t>(j + 1) * na;
    const std::uint64_t next = std::min(next_a, next_b);
    total += static_cast<double>(next - pos) * std::abs(samples_a[i] - samples_b[j]);
    pos = next;
    if (next == next_a) ++i;
    if (next == next_b) ++j;
  }
  return total / static_cast<double>(units);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::out_of_range, "quantile needs p in (0,1)");
  // Acklam's rational approximation, then one Halley refinement with erfc.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double q, x;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * 3.14159265358979323846) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

std::vector<double> normal_quantile_samples(double mean, double sigma, std::size_t count) {
  std::vector<double> samples(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    samples[i] = mean + sigma * normal_quantile(p);
  }
  return samples;
}

double em_distance_to_fitted_normal(std::span<const double> samples, double omega) {
  if (samples.empty()) throw Error(ErrorKind::empty_sample, "no samples");
  const double mean =
      std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  return em_distance_1d(std::vector<double>(samples.begin(), samples.end()),
                        normal_quantile_samples(mean, omega, samples.size()));
}

}  // namespace gencat::attributes
