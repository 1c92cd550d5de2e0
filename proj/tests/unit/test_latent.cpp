#include "doctest.h"

#include <cmath>
#include <random>

#include "gencat/latent.hpp"
#include "gencat/model.hpp"
#include "gencat/rng.hpp"

using namespace gencat;
using namespace gencat::latent;

namespace {

std::vector<double> random_stochastic_row(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> uniform(0.01, 1.0);
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

TEST_CASE("class sizes: single class is trivially [1]") {
  auto rng = substream(0, StreamTag::class_sizes);
  ClassSizeSpec spec;
  for (auto mode : {ClassSizeSpec::Mode::power_law, ClassSizeSpec::Mode::normal}) {
    spec.mode = mode;
    spec.mean = 0.5;
    spec.dev = 0.1;
    auto rho = sample_class_sizes(spec, 1, rng);
    REQUIRE(rho.rho.size() == 1);
    CHECK(rho.rho[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("class sizes: exponent 0 is uniform") {
  auto rng = substream(0, StreamTag::class_sizes);
  ClassSizeSpec spec;
  spec.phi = 0.0;
  auto rho = sample_class_sizes(spec, 4, rng);
  for (double v : rho.rho) CHECK(v == doctest::Approx(0.25));
}

TEST_CASE("class sizes: rank construction for phi = 1") {
  // direct evaluation: [1, 1/2, 1/3] normalized
  auto rng = substream(0, StreamTag::class_sizes);
  ClassSizeSpec spec;
  spec.phi = 1.0;
  auto rho = sample_class_sizes(spec, 3, rng);
  CHECK(rho.rho[0] == doctest::Approx(6.0 / 11).epsilon(1e-12));
  CHECK(rho.rho[1] == doctest::Approx(3.0 / 11).epsilon(1e-12));
  CHECK(rho.rho[2] == doctest::Approx(2.0 / 11).epsilon(1e-12));
}

TEST_CASE("class sizes: non-finite exponent is rejected") {
  auto rng = substream(0, StreamTag::class_sizes);
  ClassSizeSpec spec;
  spec.phi = std::nan("");
  try {
    sample_class_sizes(spec, 3, rng);
    FAIL("expected BadExponent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::bad_exponent);
  }
}

TEST_CASE("class sizes: explicit list validated and normal mode positive") {
  auto rng = substream(0, StreamTag::class_sizes);
  ClassSizeSpec spec;
  spec.mode = ClassSizeSpec::Mode::explicit_list;
  spec.rho = {0.5, 0.6};
  CHECK_THROWS_AS(sample_class_sizes(spec, 2, rng), Error);

  spec.mode = ClassSizeSpec::Mode::normal;
  spec.mean = 0.2;
  spec.dev = 0.5;
  auto rho = sample_class_sizes(spec, 6, rng);
  double sum = 0.0;
  for (double v : rho.rho) {
    CHECK(v > 0.0);
    sum += v;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("labels: single class assigns everyone to it") {
  auto rng = substream(1, StreamTag::labels);
  auto labels = assign_labels(ClassSizeDistribution{{1.0}}, 5, rng);
  CHECK(labels == std::vector<std::uint32_t>{1, 1, 1, 1, 1});
}

TEST_CASE("labels: binomial concentration at n = 10000") {
  auto rng = substream(123, StreamTag::labels);
  auto labels = assign_labels(ClassSizeDistribution{{0.5, 0.5}}, 10000, rng);
  std::size_t ones = 0;
  for (auto l : labels) ones += l == 1;
  CHECK(ones >= 4500);
  CHECK(ones <= 5500);
}

TEST_CASE("labels: infeasible when n < k") {
  auto rng = substream(1, StreamTag::labels);
  try {
    assign_labels(ClassSizeDistribution{{0.9, 0.1}}, 1, rng);
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::infeasible);
  }
}

TEST_CASE("labels: empty classes are repaired") {
  // with a 0.999 / 0.001 split and few nodes, class 2 often starts empty
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rng = substream(seed, StreamTag::labels);
    auto labels = assign_labels(ClassSizeDistribution{{0.999, 0.001}}, 30, rng);
    std::size_t twos = 0;
    for (auto l : labels) twos += l == 2;
    CHECK(twos >= 1);
  }
}

TEST_CASE("membership: zero deviation copies the class rows") {
  Matrix mean = Matrix::from_rows({{0.6, 0.4}, {0.4, 0.6}});
  Matrix dev(2, 2, 0.0);
  auto u = init_membership({1, 2}, mean, dev, 77);
  CHECK(u(0, 0) == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(u(0, 1) == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(u(1, 0) == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(u(1, 1) == doctest::Approx(0.6).epsilon(1e-9));
}

TEST_CASE("membership: rows are stochastic and clipped positive") {
  Matrix mean = Matrix::from_rows({{0.9, 0.1}, {0.1, 0.9}});
  Matrix dev(2, 2, 0.5);
  std::vector<std::uint32_t> labels(200);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = 1 + i % 2;
  auto u = init_membership(labels, mean, dev, 5);
  CHECK(rows_stochastic(u));
  for (std::size_t i = 0; i < u.rows(); ++i) {
    for (double v : u.row(i)) {
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("membership: Monte-Carlo mean tracks the clipping-corrected oracle") {
  // independent oracle: draw, clip, normalize with a separate RNG and
  // measure the induced mean instead of assuming it equals M exactly
  const double mean_own = 0.6;
  const double dev_all = 0.2;
  std::mt19937_64 oracle_rng(999);
  std::normal_distribution<double> n_own(mean_own, dev_all);
  std::normal_distribution<double> n_other(1.0 - mean_own, dev_all);
  double oracle_sum = 0.0;
  const int oracle_draws = 200000;
  for (int s = 0; s < oracle_draws; ++s) {
    const double a = std::max(n_own(oracle_rng), 1e-6);
    const double b = std::max(n_other(oracle_rng), 1e-6);
    oracle_sum += a / (a + b);
  }
  const double oracle_mean = oracle_sum / oracle_draws;

  Matrix mean = Matrix::from_rows({{0.6, 0.4}, {0.4, 0.6}});
  Matrix dev(2, 2, dev_all);
  const std::uint32_t n = 10000;
  std::vector<std::uint32_t> labels(n, 1);
  auto u = init_membership(labels, mean, dev, 31);
  double impl_sum = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) impl_sum += u(i, 0);
  const double impl_mean = impl_sum / n;

  CHECK(std::abs(impl_mean - oracle_mean) < 0.01);
  CHECK(std::abs(impl_mean - mean_own) < 0.02);  // the clipping bias stays small
}

TEST_CASE("reversal: one-hot goes to uniform over the complement") {
  auto out = reverse_membership_row(std::vector<double>{1.0, 0.0, 0.0}, 0);
  CHECK(out[0] == doctest::Approx(0.0));
  CHECK(out[1] == doctest::Approx(0.5));
  CHECK(out[2] == doctest::Approx(0.5));
}

TEST_CASE("reversal: direct substitution example") {
  auto out = reverse_membership_row(std::vector<double>{0.6, 0.3, 0.1}, 0);
  CHECK(out[0] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(out[1] == doctest::Approx(0.2625).epsilon(1e-12));
  CHECK(out[2] == doctest::Approx(0.3375).epsilon(1e-12));
}

TEST_CASE("reversal: balanced two-class row is a fixed point") {
  auto out = reverse_membership_row(std::vector<double>{0.5, 0.5}, 0);
  CHECK(out[0] == doctest::Approx(0.5));
  CHECK(out[1] == doctest::Approx(0.5));
}

TEST_CASE("reversal: degenerate row is rejected") {
  try {
    reverse_membership_row(std::vector<double>{0.0, 1.0}, 0);
    FAIL("expected DegenerateRow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate_row);
  }
}

TEST_CASE("reversal: labeled coordinate is complemented exactly, rows stay stochastic") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + trial % 5;
    auto row = random_stochastic_row(rng, k);
    const std::uint32_t cls = trial % k;
    auto out = reverse_membership_row(row, cls);
    CHECK(out[cls] == doctest::Approx(1.0 - row[cls]).epsilon(1e-12));
    double sum = 0.0;
    for (double v : out) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("reversal applied twice is not the identity") {
  std::vector<double> row{0.6, 0.3, 0.1};
  auto once = reverse_membership_row(row, 0);
  auto twice = reverse_membership_row(once, 0);
  CHECK(std::abs(twice[1] - row[1]) > 1e-3);
}

TEST_CASE("topology type splits at 1/k with >= counted positive") {
  Matrix mean = Matrix::from_rows({{0.25, 0.75}, {0.75, 0.25}});
  CHECK(topology_type(mean, 0) == TopologyType::negative);   // 0.25 < 0.5
  Matrix boundary = Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
  CHECK(topology_type(boundary, 0) == TopologyType::positive);  // exactly 1/k
}

TEST_CASE("connection proportions: all-positive classes keep U") {
  Matrix mean = Matrix::from_rows({{0.7, 0.3}, {0.3, 0.7}});
  Matrix dev(2, 2, 0.1);
  std::vector<std::uint32_t> labels{1, 2, 1, 2};
  auto u = init_membership(labels, mean, dev, 9);
  auto up = derive_connection_proportions(u, labels, mean);
  CHECK(up == u);
}

TEST_CASE("connection proportions: all-negative classes reverse every row") {
  const std::uint32_t k = 4;
  Matrix mean(k, k, (1.0 - 0.05) / 3);
  for (std::uint32_t l = 0; l < k; ++l) mean(l, l) = 0.05;
  std::vector<std::uint32_t> labels{1, 2, 3, 4, 1, 2, 3, 4};
  auto u = init_membership(labels, mean, Matrix(k, k, 0.1), 13);
  auto up = derive_connection_proportions(u, labels, mean);
  CHECK(rows_stochastic(up));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto expected = reverse_membership_row(u.row(i), labels[i] - 1);
    for (std::uint32_t j = 0; j < k; ++j) {
      CHECK(up(i, j) == doctest::Approx(expected[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("connection proportions: mixed topology reverses only negative classes") {
  Matrix mean = Matrix::from_rows({{0.9, 0.05, 0.05},
                                   {0.05, 0.9, 0.05},
                                   {0.475, 0.475, 0.05}});  // class 3 negative
  std::vector<std::uint32_t> labels{1, 2, 3, 1, 2, 3};
  auto u = init_membership(labels, mean, Matrix(3, 3, 0.05), 21);
  auto up = derive_connection_proportions(u, labels, mean);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 3) {
      auto expected = reverse_membership_row(u.row(i), 2);
      for (std::uint32_t j = 0; j < 3; ++j) {
        CHECK(up(i, j) == doctest::Approx(expected[j]).epsilon(1e-12));
      }
    } else {
      for (std::uint32_t j = 0; j < 3; ++j) CHECK(up(i, j) == u(i, j));
    }
  }
}

TEST_CASE("zero deviation with equal off-diagonals gives identical class rows") {
  const std::uint32_t k = 3;
  Matrix mean(k, k, 0.2);
  for (std::uint32_t l = 0; l < k; ++l) mean(l, l) = 0.6;
  std::vector<std::uint32_t> labels{1, 1, 1, 2, 2, 3};
  auto u = init_membership(labels, mean, Matrix(k, k, 0.0), 99);
  for (std::uint32_t j = 0; j < k; ++j) {
    CHECK(u(0, j) == u(1, j));
    CHECK(u(1, j) == u(2, j));
    CHECK(u(3, j) == u(4, j));
  }
}

TEST_CASE("attribute proportions start as a copy of H") {
  Matrix h = Matrix::from_rows({{0.1, 0.2, 0.3, 0.4}, {0.5, 0.6, 0.7, 0.8}});
  CHECK(init_attr_proportions(h) == h);
  Matrix zero(2, 4, 0.0);
  CHECK(init_attr_proportions(zero) == zero);
  Matrix empty(0, 3);
  CHECK(init_attr_proportions(empty).rows() == 0);
}

TEST_CASE("membership rows do not depend on the thread budget") {
  Matrix mean = Matrix::from_rows({{0.6, 0.4}, {0.4, 0.6}});
  Matrix dev(2, 2, 0.25);
  std::vector<std::uint32_t> labels(500);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = 1 + i % 2;
  setenv("GENCAT_THREADS", "1", 1);
  auto serial = init_membership(labels, mean, dev, 4711);
  setenv("GENCAT_THREADS", "8", 1);
  auto parallel = init_membership(labels, mean, dev, 4711);
  unsetenv("GENCAT_THREADS");
  CHECK(serial == parallel);
}
