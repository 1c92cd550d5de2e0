#include "gencat/edges.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

#include "gencat/util.hpp"

namespace gencat::edges {

namespace {

constexpr std::uint32_t kTableEntriesPerNode = 100;  // table step w = 1/(100n)

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

std::uint32_t structural_degree_cap(std::uint32_t n, std::uint64_t m) {
  // sqrt(2m) keeps per-node demand realizable in a simple graph; sequences
  // capped only at n-1 develop hubs that cannot fill their budgets.
  const std::uint64_t cutoff =
      std::max<std::uint64_t>(1, static_cast<std::uint64_t>(
                                     std::llround(std::sqrt(2.0 * static_cast<double>(m)))));
  return static_cast<std::uint32_t>(std::min<std::uint64_t>(n > 1 ? n - 1 : 1, cutoff));
}

std::uint32_t minimum_degree_scale(std::uint32_t n, std::uint64_t m) {
  // A quarter of the requested mean degree, the ballpark of real power-law
  // networks. Anchoring the quantile scale here spreads the degree mass so
  // the head stays fillable by the greedy edge generator.
  const std::uint64_t quarter_mean = m / (2 * static_cast<std::uint64_t>(n));
  return static_cast<std::uint32_t>(std::clamp<std::uint64_t>(
      quarter_mean, 1, structural_degree_cap(n, m)));
}

std::vector<std::uint32_t> powerlaw_degrees(std::uint32_t n, double exponent,
                                            std::uint32_t min_degree, std::uint32_t max_degree) {
  if (n < 1) throw Error(ErrorKind::out_of_range, "need at least one node");
  const double lo = static_cast<double>(std::max<std::uint32_t>(1, min_degree));
  const double cap = static_cast<double>(std::max<std::uint32_t>(1, max_degree));
  const double beta = 1.0 / std::max(exponent - 1.0, 1e-9);
  std::vector<std::uint32_t> degrees(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double q = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    double x = lo * std::pow(q, -beta);
    if (!(x < cap)) x = cap;
    degrees[i] = static_cast<std::uint32_t>(std::max(1.0, std::round(x)));
  }
  return degrees;  // q ascending makes the sequence descending
}

double fit_degree_exponent(std::uint32_t n, std::uint64_t m) {
  if (n < 2) throw Error(ErrorKind::out_of_range, "need at least two nodes");
  if (m < 1) throw Error(ErrorKind::out_of_range, "need at least one edge");
  const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > max_edges) {
    throw Error(ErrorKind::infeasible_budget,
                std::to_string(m) + " edges exceed the simple-graph maximum " +
                    std::to_string(max_edges));
  }
  double best_phi = 1.0;
  std::uint64_t best_gap = std::numeric_limits<std::uint64_t>::max();
  const std::uint32_t cap = structural_degree_cap(n, m);
  const std::uint32_t lo = minimum_degree_scale(n, m);
  for (int step = 0; step <= 200; ++step) {
    const double phi = 1.0 + 0.01 * step;
    const auto degrees = powerlaw_degrees(n, phi, lo, cap);
    std::uint64_t sum = 0;
    for (std::uint32_t deg : degrees) sum += deg;
    // compare |m - sum/2| as |2m - sum| to stay in integers
    const std::uint64_t gap = sum > 2 * m ? sum - 2 * m : 2 * m - sum;
    if (gap < best_gap) {
      best_gap = gap;
      best_phi = phi;
    }
  }
  return best_phi;
}

DegreePlan build_degree_plan(std::uint32_t n, double exponent, std::uint64_t m) {
  DegreePlan plan;
  const std::uint64_t cap = structural_degree_cap(n, m);
  plan.theta =
      powerlaw_degrees(n, exponent, minimum_degree_scale(n, m), static_cast<std::uint32_t>(cap));
  const std::uint64_t target =
      std::clamp<std::uint64_t>(2 * m, n, static_cast<std::uint64_t>(n) * cap);
  std::uint64_t sum = 0;
  for (std::uint32_t deg : plan.theta) sum += deg;
  // Calibrate the total to the edge budget with unit steps spread across
  // nodes, so the power-law shape survives the correction.
  while (sum > target) {
    bool changed = false;
    for (std::uint32_t i = 0; i < n && sum > target; ++i) {
      if (plan.theta[i] > 1) {
        --plan.theta[i];
        --sum;
        changed = true;
      }
    }
    if (!changed) break;
  }
  while (sum < target) {
    bool changed = false;
    for (std::uint32_t i = 0; i < n && sum < target; ++i) {
      if (plan.theta[i] < cap) {
        ++plan.theta[i];
        ++sum;
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::sort(plan.theta.begin(), plan.theta.end(), std::greater<>());
  plan.theta_prime.assign(n, 0);
  return plan;
}

DegreePlan degree_plan_from_list(std::vector<std::uint32_t> degrees) {
  const std::uint64_t cap = degrees.size() > 1 ? degrees.size() - 1 : 1;
  for (std::uint32_t deg : degrees) {
    if (deg > cap) {
      throw Error(ErrorKind::out_of_range,
                  "degree " + std::to_string(deg) + " impossible for a simple graph");
    }
  }
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  DegreePlan plan;
  plan.theta_prime.assign(degrees.size(), 0);
  plan.theta = std::move(degrees);
  return plan;
}

SamplerTables build_sampler_tables(const Matrix& connection) {
  const std::size_t n = connection.rows();
  const std::size_t k = connection.cols();
  std::vector<double> colsum(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) colsum[l] += connection(i, l);
  }
  for (std::size_t l = 0; l < k; ++l) {
    if (colsum[l] <= 0.0) {
      throw Error(ErrorKind::zero_column, "no node connects into class " + std::to_string(l + 1));
    }
  }
  SamplerTables tables;
  tables.step = 1.0 / (static_cast<double>(kTableEntriesPerNode) * static_cast<double>(n));
  tables.to_node.resize(k);
  const std::size_t length = kTableEntriesPerNode * n;
  util::parallel_for(k, [&](std::size_t l) {
    auto& table = tables.to_node[l];
    table.resize(length);
    double cum = 0.0;
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cum += connection(i, l) / colsum[l];
      // entry c holds the smallest node whose cumulative weight exceeds w*c
      while (c < length && tables.step * static_cast<double>(c) < cum) {
        table[c++] = static_cast<std::uint32_t>(i);
      }
    }
    while (c < length) table[c++] = static_cast<std::uint32_t>(n - 1);  // float roundoff tail
  });
  return tables;
}

namespace {

struct ClassCdfs {
  std::vector<std::vector<double>> cdf;  // per class, cumulative column weights
};

ClassCdfs build_class_cdfs(const Matrix& connection) {
  const std::size_t n = connection.rows();
  const std::size_t k = connection.cols();
  ClassCdfs cdfs;
  cdfs.cdf.resize(k);
  for (std::size_t l = 0; l < k; ++l) {
    auto& cdf = cdfs.cdf[l];
    cdf.resize(n);
    double cum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cum += connection(i, l);
      cdf[i] = cum;
    }
    if (cum <= 0.0) {
      throw Error(ErrorKind::zero_column, "no node connects into class " + std::to_string(l + 1));
    }
  }
  return cdfs;
}

}  // namespace

std::vector<Edge> generate_edges(const Matrix& membership, const Matrix& connection,
                                 DegreePlan& plan, std::uint64_t max_edges,
                                 std::uint32_t rounds_cap, TargetSelection selection,
                                 std::mt19937_64& rng, EdgeGenInfo* info) {
  const std::uint32_t n = static_cast<std::uint32_t>(membership.rows());
  const std::size_t k = membership.cols();
  if (connection.rows() != n || connection.cols() != k) {
    throw Error(ErrorKind::bad_shape, "membership and connection shapes differ");
  }
  if (plan.theta.size() != n) {
    throw Error(ErrorKind::bad_shape, "degree plan length differs from n");
  }
  plan.theta_prime.assign(n, 0);
  if (max_edges == 0) return {};

  SamplerTables tables;
  ClassCdfs cdfs;
  if (selection == TargetSelection::inverse_table) {
    tables = build_sampler_tables(connection);
  } else if (selection == TargetSelection::cdf_binary_search) {
    cdfs = build_class_cdfs(connection);
  }

  std::unordered_set<std::uint64_t> edge_set;
  edge_set.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(max_edges, 1u << 26)) * 2);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  EdgeGenInfo counters;

  const std::size_t table_length = static_cast<std::size_t>(kTableEntriesPerNode) * n;
  std::vector<std::uint32_t> picks;
  std::vector<double> direct_cdf;

  auto draw_class = [&](std::uint32_t i) {
    const double x = uniform(rng);
    auto row = membership.row(i);
    double acc = 0.0;
    std::size_t l = 0;
    for (; l + 1 < k; ++l) {
      acc += row[l];
      if (x < acc) break;
    }
    return static_cast<std::uint32_t>(l);
  };

  bool budget_reached = false;
  for (std::uint32_t i = 0; i < n && !budget_reached; ++i) {
    if (plan.theta[i] == 0) continue;
    if (selection == TargetSelection::direct_product) {
      // exact edge-probability row for this source: p_j = sum_l U_il * U'_jl
      direct_cdf.resize(n);
      double cum = 0.0;
      auto u_row = membership.row(i);
      for (std::uint32_t j = 0; j < n; ++j) {
        double p = 0.0;
        for (std::size_t l = 0; l < k; ++l) p += u_row[l] * connection(j, l);
        cum += p;
        direct_cdf[j] = cum;
      }
    }
    for (std::uint32_t round = 0; round < rounds_cap; ++round) {
      const std::uint32_t deficit = plan.theta[i] - plan.theta_prime[i];
      if (deficit == 0) break;
      picks.clear();
      if (selection != TargetSelection::direct_product) {
        for (std::uint32_t iter = 0; iter < deficit; ++iter) picks.push_back(draw_class(i));
      } else {
        picks.resize(deficit);
      }
      for (std::uint32_t pick : picks) {
        std::uint32_t j = 0;
        switch (selection) {
          case TargetSelection::inverse_table: {
            const double x = uniform(rng);
            std::size_t c = static_cast<std::size_t>(x / tables.step);
            if (c >= table_length) c = table_length - 1;
            j = tables.to_node[pick][c];
            break;
          }
          case TargetSelection::cdf_binary_search: {
            const auto& cdf = cdfs.cdf[pick];
            const double x = uniform(rng) * cdf.back();
            j = static_cast<std::uint32_t>(
                std::upper_bound(cdf.begin(), cdf.end(), x) - cdf.begin());
            if (j >= n) j = n - 1;
            break;
          }
          case TargetSelection::direct_product: {
            const double x = uniform(rng) * direct_cdf.back();
            j = static_cast<std::uint32_t>(
                std::upper_bound(direct_cdf.begin(), direct_cdf.end(), x) - direct_cdf.begin());
            if (j >= n) j = n - 1;
            break;
          }
        }
        if (j == i) {
          ++counters.rejected_self_loop;
          continue;
        }
        if (plan.theta_prime[i] >= plan.theta[i] || plan.theta_prime[j] >= plan.theta[j]) {
          ++counters.rejected_budget;
          continue;
        }
        if (!edge_set.insert(edge_key(i, j)).second) {
          ++counters.rejected_duplicate;
          continue;
        }
        ++plan.theta_prime[i];
        ++plan.theta_prime[j];
        ++counters.accepted;
        if (counters.accepted >= max_edges) {
          budget_reached = true;
          break;
        }
      }
      if (budget_reached) break;
    }
    if (plan.theta_prime[i] < plan.theta[i]) ++counters.nodes_capped_by_rounds;
  }

  std::vector<Edge> edges;
  edges.reserve(edge_set.size());
  for (std::uint64_t key : edge_set) {
    edges.emplace_back(static_cast<std::uint32_t>(key >> 32),
                       static_cast<std::uint32_t>(key & 0xffffffffu));
  }
  std::sort(edges.begin(), edges.end());
  if (info != nullptr) *info = counters;
  return edges;
}

double degree_mape(const std::vector<std::uint32_t>& theta,
                   const std::vector<std::uint32_t>& theta_prime) {
  if (theta.size() != theta_prime.size()) {
    throw Error(ErrorKind::bad_shape, "degree vectors differ in length");
  }
  if (theta.empty()) throw Error(ErrorKind::bad_shape, "empty degree vectors");
  double total = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i] == 0) {
      throw Error(ErrorKind::zero_expected_degree,
                  "expected degree of node " + std::to_string(i) + " is zero");
    }
    total += std::abs(static_cast<double>(theta[i]) - static_cast<double>(theta_prime[i])) /
             static_cast<double>(theta[i]);
  }
  return total / static_cast<double>(theta.size());
}

}  // namespace gencat::edges
