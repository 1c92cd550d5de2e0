#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "gencat/adjust.hpp"
#include "gencat/model.hpp"

using namespace gencat;
using namespace gencat::adjust;
using gencat::latent::TopologyType;

namespace {

// Independent oracle built from plain pow/normalize, no shared helpers with
// the implementation: evaluates every grid temperature and returns the
// minimizer (ties toward smaller T).
std::vector<double> oracle_rescale(const std::vector<double>& u, double t) {
  std::vector<double> out(u.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    out[j] = std::pow(u[j], 1.0 / t);
    sum += out[j];
  }
  for (auto& v : out) v /= sum;
  return out;
}

std::vector<double> oracle_reverse(const std::vector<double>& u, std::uint32_t cls) {
  std::vector<double> out(u.size());
  double denom = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (j != cls) denom += 1.0 - u[j];
  }
  for (std::size_t j = 0; j < u.size(); ++j) {
    out[j] = j == cls ? 1.0 - u[cls] : (1.0 - u[j]) * u[cls] / denom;
  }
  return out;
}

struct OracleResult {
  double t_min = 0.0;
  double loss = 0.0;
};

OracleResult oracle_grid(const std::vector<std::vector<double>>& rows,
                         const std::vector<double>& target, std::uint32_t cls, bool positive) {
  OracleResult best{0.0, std::numeric_limits<double>::infinity()};
  for (int step = 1; step <= 20; ++step) {
    const double t = 0.05 * step;
    std::vector<double> est(target.size(), 0.0);
    for (const auto& row : rows) {
      auto scaled = oracle_rescale(row, t);
      auto partner = positive ? scaled : oracle_reverse(scaled, cls);
      for (std::size_t j = 0; j < est.size(); ++j) est[j] += scaled[j] * partner[j];
    }
    double loss = 0.0;
    for (std::size_t j = 0; j < est.size(); ++j) {
      const double diff = target[j] - est[j] / rows.size();
      loss += diff * diff;
    }
    loss = std::sqrt(loss);
    if (loss < best.loss) best = {t, loss};
  }
  return best;
}

std::vector<double> random_row(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> uniform(0.02, 1.0);
  std::vector<double> row(k);
  double sum = 0.0;
  for (auto& v : row) {
    v = uniform(rng);
    sum += v;
  }
  for (auto& v : row) v /= sum;
  return row;
}

}  // namespace

TEST_CASE("rescale: T = 1 is the identity on stochastic rows") {
  auto out = rescale_row(std::vector<double>{0.6, 0.4}, 1.0);
  CHECK(out[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(out[1] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("rescale: uniform rows are unchanged for any temperature") {
  for (double t : temperature_grid()) {
    auto out = rescale_row(std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}, t);
    for (double v : out) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }
}

TEST_CASE("rescale: direct substitution at T = 0.5") {
  auto out = rescale_row(std::vector<double>{0.8, 0.2}, 0.5);
  CHECK(out[0] == doctest::Approx(0.64 / 0.68).epsilon(1e-12));
  CHECK(out[1] == doctest::Approx(0.04 / 0.68).epsilon(1e-12));
}

TEST_CASE("rescale: non-positive temperature is rejected") {
  for (double t : {0.0, -1.0}) {
    try {
      rescale_row(std::vector<double>{0.5, 0.5}, t);
      FAIL("expected BadTemperature");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::bad_temperature);
    }
  }
}

TEST_CASE("rescale: agrees with the plain-pow oracle on random rows") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto row = random_row(rng, 2 + trial % 6);
    const double t = temperature_grid()[trial % 20];
    auto out = rescale_row(row, t);
    auto expected = oracle_rescale(row, t);
    for (std::size_t j = 0; j < row.size(); ++j) {
      CHECK(out[j] == doctest::Approx(expected[j]).epsilon(1e-10));
    }
  }
}

TEST_CASE("temperature grid excludes zero and ends at one") {
  auto grid = temperature_grid();
  REQUIRE(grid.size() == 20);
  CHECK(grid.front() == doctest::Approx(0.05));
  CHECK(grid.back() == doctest::Approx(1.0));
}

TEST_CASE("adjust_class: already-exact single node attains zero loss") {
  // u = [0.8, 0.2] with target [0.64, 0.04]: T = 1 gives u*u exactly
  Matrix u = Matrix::from_rows({{0.8, 0.2}});
  Matrix up = u;
  Matrix target = Matrix::from_rows({{0.64, 0.04}, {0.5, 0.5}});
  const double loss = adjust_class(u, up, {1}, target, 0, TopologyType::positive);
  CHECK(loss == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(u(0, 0) == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("adjust_class: matches the exhaustive grid oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 2 + trial % 4;
    const std::size_t rows = 1 + trial % 7;
    std::vector<std::vector<double>> row_data;
    for (std::size_t i = 0; i < rows; ++i) row_data.push_back(random_row(rng, k));
    auto target_row = random_row(rng, k);
    const bool positive = trial % 2 == 0;

    Matrix u = Matrix::from_rows(row_data);
    Matrix up = u;
    Matrix target(k, k, 0.0);
    for (std::size_t j = 0; j < k; ++j) target(0, j) = target_row[j];
    std::vector<std::uint32_t> labels(rows, 1);

    const double loss = adjust_class(u, up, labels, target, 0,
                                     positive ? TopologyType::positive : TopologyType::negative);
    const auto oracle = oracle_grid(row_data, target_row, 0, positive);
    CHECK(loss == doctest::Approx(oracle.loss).epsilon(1e-9));
    // rows must equal the oracle's rescale at the oracle minimizer
    for (std::size_t i = 0; i < rows; ++i) {
      auto expected = oracle_rescale(row_data[i], oracle.t_min);
      for (std::size_t j = 0; j < k; ++j) {
        CHECK(u(i, j) == doctest::Approx(expected[j]).epsilon(1e-9));
      }
      auto partner = positive ? expected : oracle_reverse(expected, 0);
      for (std::size_t j = 0; j < k; ++j) {
        CHECK(up(i, j) == doctest::Approx(partner[j]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("adjust_class: one-hot rows in a negative class stay finite") {
  Matrix u = Matrix::from_rows({{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}});
  Matrix up = u;
  Matrix target =
      Matrix::from_rows({{0.1, 0.45, 0.45}, {0.45, 0.1, 0.45}, {0.45, 0.45, 0.1}});
  const double loss = adjust_class(u, up, {1, 1}, target, 0, TopologyType::negative);
  const auto oracle =
      oracle_grid({{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}, {0.1, 0.45, 0.45}, 0, false);
  CHECK(loss == doctest::Approx(oracle.loss).epsilon(1e-9));
  CHECK(rows_stochastic(u));
  CHECK(rows_stochastic(up));
}

TEST_CASE("adjust_class: achieved loss never exceeds the T = 1 loss") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 3;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 5; ++i) rows.push_back(random_row(rng, k));
    auto target_row = random_row(rng, k);
    Matrix u = Matrix::from_rows(rows);
    Matrix up = u;
    Matrix target(k, k, 0.0);
    for (std::size_t j = 0; j < k; ++j) target(0, j) = target_row[j];
    std::vector<std::uint32_t> labels(rows.size(), 1);

    const double before = class_mean_loss(u, up, labels, target, 0);
    const double after = adjust_class(u, up, labels, target, 0, TopologyType::positive);
    CHECK(after <= before + 1e-12);
    CHECK(rows_stochastic(u, 1e-6));
    CHECK(rows_stochastic(up, 1e-6));
  }
}

TEST_CASE("adjust_class: identical rows stay identical and calls are deterministic") {
  Matrix u = Matrix::from_rows({{0.5, 0.3, 0.2}, {0.5, 0.3, 0.2}, {0.5, 0.3, 0.2}});
  Matrix up = u;
  Matrix target = Matrix::from_rows({{0.4, 0.3, 0.3}, {0.3, 0.4, 0.3}, {0.3, 0.3, 0.4}});
  Matrix u2 = u;
  Matrix up2 = up;
  const double l1 = adjust_class(u, up, {1, 1, 1}, target, 0, TopologyType::positive);
  const double l2 = adjust_class(u2, up2, {1, 1, 1}, target, 0, TopologyType::positive);
  CHECK(l1 == l2);
  CHECK(u == u2);
  CHECK(up == up2);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(u(0, j) == u(1, j));
    CHECK(u(1, j) == u(2, j));
  }
}

TEST_CASE("adjust_class: empty class is rejected") {
  Matrix u = Matrix::from_rows({{0.5, 0.5}});
  Matrix up = u;
  Matrix target = Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
  try {
    adjust_class(u, up, {1}, target, 1, TopologyType::positive);
    FAIL("expected EmptyClass");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::empty_class);
  }
}

TEST_CASE("class_mean_membership averages rows per class") {
  Matrix u = Matrix::from_rows({{0.8, 0.2}, {0.6, 0.4}, {0.1, 0.9}});
  auto p = class_mean_membership(u, {1, 1, 2}, 2);
  CHECK(p(0, 0) == doctest::Approx(0.7));
  CHECK(p(0, 1) == doctest::Approx(0.3));
  CHECK(p(1, 0) == doctest::Approx(0.1));
  CHECK(p(1, 1) == doctest::Approx(0.9));
}

TEST_CASE("adjust_attributes: zero-loss fixed point keeps the objective at zero") {
  // H row chosen as exactly P * V^T so T = 1 already attains loss 0
  Matrix p = Matrix::from_rows({{0.9, 0.1}, {0.1, 0.9}});
  Matrix v = Matrix::from_rows({{0.6, 0.4}});
  Matrix h(1, 2, 0.0);
  h(0, 0) = 0.9 * 0.6 + 0.1 * 0.4;
  h(0, 1) = 0.1 * 0.6 + 0.9 * 0.4;
  auto losses = adjust_attributes(v, p, h);
  CHECK(losses[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("adjust_attributes: uniform rows are unchanged") {
  Matrix p = Matrix::from_rows({{0.7, 0.3}, {0.3, 0.7}});
  Matrix v = Matrix::from_rows({{0.5, 0.5}});
  Matrix h = Matrix::from_rows({{0.9, 0.1}});
  adjust_attributes(v, p, h);
  CHECK(v(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(v(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("adjust_attributes: returned loss equals the exhaustive oracle minimum") {
  Matrix p = Matrix::from_rows({{0.9, 0.1}, {0.1, 0.9}});
  Matrix v = Matrix::from_rows({{0.6, 0.4}});
  Matrix h = Matrix::from_rows({{0.8, 0.2}});
  auto losses = adjust_attributes(v, p, h);

  double best_loss = std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  for (int step = 1; step <= 20; ++step) {
    const double t = 0.05 * step;
    auto scaled = oracle_rescale({0.6, 0.4}, t);
    double loss = 0.0;
    for (int l = 0; l < 2; ++l) {
      const double est = p(l, 0) * scaled[0] + p(l, 1) * scaled[1];
      loss += (h(0, l) - est) * (h(0, l) - est);
    }
    loss = std::sqrt(loss);
    if (loss < best_loss) {
      best_loss = loss;
      best_t = t;
    }
  }
  CHECK(losses[0] == doctest::Approx(best_loss).epsilon(1e-12));
  auto expected = oracle_rescale({0.6, 0.4}, best_t);
  CHECK(v(0, 0) == doctest::Approx(expected[0]).epsilon(1e-12));
  CHECK(v(0, 1) == doctest::Approx(expected[1]).epsilon(1e-12));
}

TEST_CASE("adjust_attributes: all-zero attribute rows are left alone") {
  Matrix p = Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
  Matrix v(2, 2, 0.0);
  v(1, 0) = 0.3;
  v(1, 1) = 0.7;
  Matrix h = Matrix::from_rows({{0.0, 0.0}, {0.5, 0.5}});
  CHECK_NOTHROW(adjust_attributes(v, p, h));
  CHECK(v(0, 0) == 0.0);
  CHECK(v(0, 1) == 0.0);
}
