#include "gencat/presets.hpp"

#include <cmath>
#include <string>

#include "gencat/model.hpp"

namespace gencat::presets {

std::pair<Matrix, Matrix> lfr_preset(std::uint32_t k, double mu) {
  if (k < 2) throw Error(ErrorKind::out_of_range, "LFR preset needs at least two classes");
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw Error(ErrorKind::out_of_range, "mixing value must be in [0,1]");
  }
  Matrix mean(k, k, (1.0 - mu) / (k - 1));
  for (std::uint32_t l = 0; l < k; ++l) mean(l, l) = mu;
  return {std::move(mean), Matrix(k, k, 0.0)};
}

bool lfr_conditions_hold(const Matrix& mean, const Matrix& dev, double mu, double tol) {
  const std::size_t k = mean.rows();
  if (mean.cols() != k || dev.rows() != k || dev.cols() != k) return false;
  for (std::size_t l = 0; l < k; ++l) {
    if (std::abs(mean(l, l) - mu) > tol) return false;
    double off = -1.0;
    for (std::size_t h = 0; h < k; ++h) {
      if (dev(l, h) != 0.0) return false;
      if (h == l) continue;
      if (off < 0.0) off = mean(l, h);
      if (std::abs(mean(l, h) - off) > tol) return false;
    }
  }
  return true;
}

std::pair<Matrix, Matrix> dcsbm_preset(const Matrix& mean_in) {
  const std::size_t k = mean_in.rows();
  if (mean_in.cols() != k) throw Error(ErrorKind::bad_shape, "preference mean must be square");
  for (std::size_t l = 0; l < k; ++l) {
    double sum = 0.0;
    for (double v : mean_in.row(l)) sum += v;
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw Error(ErrorKind::non_stochastic_row,
                  "preference mean row " + std::to_string(l) + " sums to " + std::to_string(sum));
    }
  }
  return {mean_in, Matrix(k, k, 0.0)};
}

std::pair<Matrix, Matrix> diagonal_preset(std::uint32_t k, const std::vector<double>& diag,
                                          std::mt19937_64& rng, double dev_lo, double dev_hi) {
  if (diag.size() != k) throw Error(ErrorKind::bad_shape, "need one diagonal value per class");
  if (k < 2) throw Error(ErrorKind::out_of_range, "diagonal preset needs at least two classes");
  Matrix mean(k, k);
  Matrix dev(k, k, 0.05);
  std::uniform_real_distribution<double> uniform(dev_lo, dev_hi);
  for (std::uint32_t l = 0; l < k; ++l) {
    if (!(diag[l] >= 0.0 && diag[l] <= 1.0)) {
      throw Error(ErrorKind::out_of_range, "diagonal value outside [0,1]");
    }
    const double off = (1.0 - diag[l]) / (k - 1);
    for (std::uint32_t h = 0; h < k; ++h) mean(l, h) = (h == l) ? diag[l] : off;
    dev(l, l) = uniform(rng);
  }
  return {std::move(mean), std::move(dev)};
}

}  // namespace gencat::presets
