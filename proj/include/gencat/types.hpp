#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gencat {

/// Row-major dense matrix of doubles. Small and owning; rows are exposed as
/// spans so per-row math (the dominant access pattern here) stays cheap.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Undirected edge stored with the smaller endpoint first.
using Edge = std::pair<std::uint32_t, std::uint32_t>;

enum class ErrorKind {
  non_stochastic_row,
  out_of_range,
  bad_shape,
  bad_exponent,
  infeasible,
  degenerate_row,
  empty_class,
  all_isolated_class,
  bad_temperature,
  infeasible_budget,
  zero_column,
  zero_expected_degree,
  empty_sample,
  parse_error,
  io_error,
};

const char* error_kind_name(ErrorKind kind);

/// CLI exit code bucket for an error kind: 1 validation, 2 I/O, 3 infeasible.
int exit_code_for(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

enum class AttrDist { normal, bernoulli };

/// How class-size proportions are produced.
struct ClassSizeSpec {
  enum class Mode { power_law, normal, explicit_list };
  Mode mode = Mode::power_law;
  double phi = 1.0;                // power_law: sizes proportional to rank^(-phi)
  double mean = 0.0;               // normal mode
  double dev = 0.0;                // normal mode
  std::vector<double> rho;         // explicit_list mode
};

/// All user inputs of a generation run. Class labels are 1-based throughout;
/// node IDs are 0-based.
struct GeneratorConfig {
  std::uint32_t n = 0;             // node count
  std::uint64_t m = 0;             // target edge count
  std::uint32_t d = 0;             // attribute count
  std::uint32_t k = 0;             // class count
  Matrix class_pref_mean;          // k x k, rows stochastic
  Matrix class_pref_dev;           // k x k, non-negative
  Matrix attr_class_corr;          // d x k, entries in [0,1]
  double omega = 0.0;              // attribute noise deviation
  std::uint32_t r = 50;            // edge-generation iteration cap
  AttrDist attr_dist = AttrDist::normal;
  ClassSizeSpec class_sizes;
  std::uint64_t seed = 0;
};

/// Length-k vector of positive class-size proportions summing to one.
struct ClassSizeDistribution {
  std::vector<double> rho;
};

/// Latent factors mediating between class features and the generated graph:
/// `membership` is how strongly each node belongs to each class, `connection`
/// how likely it connects into each class, `attr_proportions` how strongly
/// each attribute correlates with each class.
struct LatentFactors {
  Matrix membership;        // n x k, rows stochastic
  Matrix connection;        // n x k, rows stochastic
  Matrix attr_proportions;  // d x k
};

/// Expected vs. realized node degrees during edge generation. Nodes are
/// indexed in processing order (expected degrees sorted descending).
struct DegreePlan {
  std::vector<std::uint32_t> theta;        // expected degrees
  std::vector<std::uint32_t> theta_prime;  // realized degrees, theta_prime[i] <= theta[i]
};

/// Sparse undirected attributed graph with 1-based class labels.
/// Edges are stored once as sorted (i, j) pairs with i < j.
struct AttributedGraph {
  std::uint32_t n = 0;
  std::uint32_t num_classes = 0;
  std::vector<Edge> edges;
  std::vector<std::uint32_t> labels;  // size n, values in {1..num_classes}
  Matrix attributes;                  // n x d, d may be zero
};

/// Class features measured from a concrete labeled graph.
struct ClassFeatureReport {
  Matrix mean;                        // k x k
  Matrix deviation;                   // k x k
  std::vector<double> rho;            // length k
  Matrix attr_corr;                   // d x k, empty when the graph has no attributes
  std::uint32_t isolated_excluded = 0;  // degree-0 nodes left out of mean/deviation
  std::vector<bool> row_defined;      // false when a class has no non-isolated node
};

}  // namespace gencat
