#include "doctest.h"

#include "gencat/model.hpp"

using namespace gencat;

namespace {

GeneratorConfig valid_config() {
  GeneratorConfig cfg;
  cfg.n = 10;
  cfg.m = 20;
  cfg.k = 2;
  cfg.class_pref_mean = Matrix::from_rows({{0.7, 0.3}, {0.3, 0.7}});
  cfg.class_pref_dev = Matrix(2, 2, 0.0);
  return cfg;
}

}  // namespace

TEST_CASE("validate_config accepts valid stochastic rows") {
  CHECK_NOTHROW(validate_config(valid_config()));
}

TEST_CASE("validate_config rejects a row summing to 1.2") {
  auto cfg = valid_config();
  cfg.class_pref_mean = Matrix::from_rows({{0.9, 0.3}, {0.3, 0.7}});
  try {
    validate_config(cfg);
    FAIL("expected NonStochasticRow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::non_stochastic_row);
  }
}

TEST_CASE("validate_config rejects H with the wrong shape") {
  GeneratorConfig cfg;
  cfg.n = 10;
  cfg.m = 20;
  cfg.k = 3;
  cfg.d = 2;
  cfg.class_pref_mean =
      Matrix::from_rows({{0.4, 0.3, 0.3}, {0.3, 0.4, 0.3}, {0.3, 0.3, 0.4}});
  cfg.class_pref_dev = Matrix(3, 3, 0.0);
  cfg.attr_class_corr = Matrix(2, 2, 0.5);  // must be 2 x 3
  try {
    validate_config(cfg);
    FAIL("expected BadShape");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::bad_shape);
  }
}

TEST_CASE("validate_config rejects out-of-range entries and k > n") {
  auto cfg = valid_config();
  cfg.class_pref_mean = Matrix::from_rows({{1.3, -0.3}, {0.3, 0.7}});
  try {
    validate_config(cfg);
    FAIL("expected OutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::out_of_range);
  }

  auto cfg2 = valid_config();
  cfg2.n = 1;
  CHECK_THROWS_AS(validate_config(cfg2), Error);
}

TEST_CASE("validate_config checks explicit class sizes") {
  auto cfg = valid_config();
  cfg.class_sizes.mode = ClassSizeSpec::Mode::explicit_list;
  cfg.class_sizes.rho = {0.5, 0.4};
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg.class_sizes.rho = {0.5, 0.5};
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("validate_graph accepts a well-formed graph") {
  AttributedGraph g;
  g.n = 4;
  g.num_classes = 2;
  g.labels = {1, 1, 2, 2};
  g.edges = {{0, 1}, {1, 2}, {2, 3}};
  CHECK_NOTHROW(validate_graph(g));
}

TEST_CASE("validate_graph rejects self-loops, duplicates and bad labels") {
  AttributedGraph g;
  g.n = 3;
  g.num_classes = 1;
  g.labels = {1, 1, 1};

  g.edges = {{1, 1}};
  CHECK_THROWS_AS(validate_graph(g), Error);

  g.edges = {{0, 1}, {0, 1}};
  CHECK_THROWS_AS(validate_graph(g), Error);

  g.edges = {{0, 5}};
  CHECK_THROWS_AS(validate_graph(g), Error);

  g.edges = {{0, 1}};
  g.labels = {1, 3, 1};
  CHECK_THROWS_AS(validate_graph(g), Error);
}

TEST_CASE("rows_stochastic tolerance") {
  Matrix m = Matrix::from_rows({{0.5, 0.5 + 5e-7}});
  CHECK(rows_stochastic(m));
  Matrix bad = Matrix::from_rows({{0.5, 0.51}});
  CHECK(!rows_stochastic(bad));
}
