#include "gencat/model.hpp"

#include <cmath>
#include <string>

namespace gencat {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) {
      throw Error(ErrorKind::bad_shape, "ragged row " + std::to_string(i));
    }
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::non_stochastic_row: return "NonStochasticRow";
    case ErrorKind::out_of_range: return "OutOfRange";
    case ErrorKind::bad_shape: return "BadShape";
    case ErrorKind::bad_exponent: return "BadExponent";
    case ErrorKind::infeasible: return "Infeasible";
    case ErrorKind::degenerate_row: return "DegenerateRow";
    case ErrorKind::empty_class: return "EmptyClass";
    case ErrorKind::all_isolated_class: return "AllIsolatedClass";
    case ErrorKind::bad_temperature: return "BadTemperature";
    case ErrorKind::infeasible_budget: return "InfeasibleBudget";
    case ErrorKind::zero_column: return "ZeroColumn";
    case ErrorKind::zero_expected_degree: return "ZeroExpectedDegree";
    case ErrorKind::empty_sample: return "EmptySample";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::io_error: return "IoError";
  }
  return "Error";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse_error:
    case ErrorKind::io_error:
      return 2;
    case ErrorKind::infeasible:
    case ErrorKind::infeasible_budget:
      return 3;
    default:
      return 1;
  }
}

bool rows_stochastic(const Matrix& m, double tol) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double sum = 0.0;
    for (double v : m.row(i)) {
      if (!std::isfinite(v)) return false;
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

namespace {

void check_unit_interval(const Matrix& m, const std::string& name) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (double v : m.row(i)) {
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw Error(ErrorKind::out_of_range,
                    name + " entry outside [0,1] in row " + std::to_string(i));
      }
    }
  }
}

}  // namespace

void validate_config(const GeneratorConfig& cfg) {
  if (cfg.n == 0) throw Error(ErrorKind::out_of_range, "n must be positive");
  if (cfg.m == 0) throw Error(ErrorKind::out_of_range, "m must be positive");
  if (cfg.k == 0) throw Error(ErrorKind::out_of_range, "k must be positive");
  if (cfg.k > cfg.n) throw Error(ErrorKind::out_of_range, "k exceeds n");
  if (cfg.r == 0) throw Error(ErrorKind::out_of_range, "r must be positive");
  if (!std::isfinite(cfg.omega) || cfg.omega < 0.0) {
    throw Error(ErrorKind::out_of_range, "omega must be non-negative");
  }

  if (cfg.class_pref_mean.rows() != cfg.k || cfg.class_pref_mean.cols() != cfg.k) {
    throw Error(ErrorKind::bad_shape, "class preference mean must be k x k");
  }
  if (cfg.class_pref_dev.rows() != cfg.k || cfg.class_pref_dev.cols() != cfg.k) {
    throw Error(ErrorKind::bad_shape, "class preference deviation must be k x k");
  }
  if (cfg.d > 0 && (cfg.attr_class_corr.rows() != cfg.d || cfg.attr_class_corr.cols() != cfg.k)) {
    throw Error(ErrorKind::bad_shape, "attribute-class correlation must be d x k");
  }

  check_unit_interval(cfg.class_pref_mean, "class preference mean");
  for (std::size_t i = 0; i < cfg.k; ++i) {
    double sum = 0.0;
    for (double v : cfg.class_pref_mean.row(i)) sum += v;
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw Error(ErrorKind::non_stochastic_row,
                  "class preference mean row " + std::to_string(i) + " sums to " +
                      std::to_string(sum));
    }
  }
  for (std::size_t i = 0; i < cfg.k; ++i) {
    for (double v : cfg.class_pref_dev.row(i)) {
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorKind::out_of_range,
                    "class preference deviation entry negative in row " + std::to_string(i));
      }
    }
  }
  if (cfg.d > 0) check_unit_interval(cfg.attr_class_corr, "attribute-class correlation");

  const auto& cs = cfg.class_sizes;
  switch (cs.mode) {
    case ClassSizeSpec::Mode::power_law:
      if (!std::isfinite(cs.phi)) throw Error(ErrorKind::bad_exponent, "class size exponent");
      break;
    case ClassSizeSpec::Mode::normal:
      if (!std::isfinite(cs.mean) || !std::isfinite(cs.dev) || cs.dev < 0.0) {
        throw Error(ErrorKind::out_of_range, "class size normal parameters");
      }
      break;
    case ClassSizeSpec::Mode::explicit_list: {
      if (cs.rho.size() != cfg.k) {
        throw Error(ErrorKind::bad_shape, "explicit class sizes must have k entries");
      }
      double sum = 0.0;
      for (double v : cs.rho) {
        if (!std::isfinite(v) || v <= 0.0 || v > 1.0) {
          throw Error(ErrorKind::out_of_range, "class size proportion outside (0,1]");
        }
        sum += v;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance) {
        throw Error(ErrorKind::non_stochastic_row, "class sizes sum to " + std::to_string(sum));
      }
      break;
    }
  }
}

void validate_graph(const AttributedGraph& g) {
  if (g.labels.size() != g.n) {
    throw Error(ErrorKind::bad_shape, "label vector length differs from n");
  }
  for (std::size_t i = 0; i < g.labels.size(); ++i) {
    if (g.labels[i] < 1 || g.labels[i] > g.num_classes) {
      throw Error(ErrorKind::out_of_range,
                  "label of node " + std::to_string(i) + " outside {1..k}");
    }
  }
  if (!g.attributes.empty() && g.attributes.rows() != g.n) {
    throw Error(ErrorKind::bad_shape, "attribute matrix row count differs from n");
  }
  const Edge* prev = nullptr;
  for (const Edge& e : g.edges) {
    if (e.first == e.second) {
      throw Error(ErrorKind::out_of_range, "self-loop at node " + std::to_string(e.first));
    }
    if (e.first > e.second) {
      throw Error(ErrorKind::out_of_range, "edge endpoints not ordered");
    }
    if (e.second >= g.n) {
      throw Error(ErrorKind::out_of_range, "edge endpoint " + std::to_string(e.second) +
                                               " outside [0,n)");
    }
    if (prev != nullptr) {
      if (*prev == e) throw Error(ErrorKind::out_of_range, "duplicate edge");
      if (!(*prev < e)) throw Error(ErrorKind::out_of_range, "edge list not sorted");
    }
    prev = &e;
  }
}

}  // namespace gencat
