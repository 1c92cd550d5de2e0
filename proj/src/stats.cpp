#include "gencat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <string>

#include "gencat/rng.hpp"
#include "gencat/util.hpp"

namespace gencat::stats {

namespace {

std::vector<std::uint32_t> class_sizes(const AttributedGraph& g, std::uint32_t k) {
  std::vector<std::uint32_t> sizes(k, 0);
  for (std::uint32_t label : g.labels) {
    if (label < 1 || label > k) {
      throw Error(ErrorKind::out_of_range, "label " + std::to_string(label) + " outside {1..k}");
    }
    ++sizes[label - 1];
  }
  return sizes;
}

// Per-node degree and counts of neighbors per class.
struct NodeClassCounts {
  std::vector<std::uint32_t> degree;
  Matrix into_class;  // n x k
};

NodeClassCounts node_class_counts(const AttributedGraph& g, std::uint32_t k) {
  NodeClassCounts counts;
  counts.degree.assign(g.n, 0);
  counts.into_class = Matrix(g.n, k, 0.0);
  for (const Edge& e : g.edges) {
    ++counts.degree[e.first];
    ++counts.degree[e.second];
    counts.into_class(e.first, g.labels[e.second] - 1) += 1.0;
    counts.into_class(e.second, g.labels[e.first] - 1) += 1.0;
  }
  return counts;
}

struct MeanDev {
  Matrix mean;
  Matrix dev;
  std::uint32_t isolated = 0;
  std::vector<bool> defined;
};

MeanDev measure_mean_dev(const AttributedGraph& g, std::uint32_t k, bool throw_on_degenerate) {
  const auto sizes = class_sizes(g, k);
  if (throw_on_degenerate) {
    for (std::uint32_t l = 0; l < k; ++l) {
      if (sizes[l] == 0) {
        throw Error(ErrorKind::empty_class, "class " + std::to_string(l + 1) + " has no nodes");
      }
    }
  }
  const auto counts = node_class_counts(g, k);
  MeanDev out;
  out.mean = Matrix(k, k, 0.0);
  out.dev = Matrix(k, k, 0.0);
  out.defined.assign(k, false);
  std::vector<std::uint32_t> contributors(k, 0);
  for (std::uint32_t i = 0; i < g.n; ++i) {
    if (counts.degree[i] == 0) {
      ++out.isolated;  // per-node fraction undefined at degree zero
      continue;
    }
    const std::uint32_t cls = g.labels[i] - 1;
    ++contributors[cls];
    for (std::uint32_t l = 0; l < k; ++l) {
      out.mean(cls, l) += counts.into_class(i, l) / counts.degree[i];
    }
  }
  for (std::uint32_t l = 0; l < k; ++l) {
    if (contributors[l] == 0) {
      if (throw_on_degenerate && sizes[l] > 0) {
        throw Error(ErrorKind::all_isolated_class,
                    "every node of class " + std::to_string(l + 1) + " is isolated");
      }
      continue;
    }
    out.defined[l] = true;
    for (std::uint32_t h = 0; h < k; ++h) out.mean(l, h) /= contributors[l];
  }
  for (std::uint32_t i = 0; i < g.n; ++i) {
    if (counts.degree[i] == 0) continue;
    const std::uint32_t cls = g.labels[i] - 1;
    for (std::uint32_t l = 0; l < k; ++l) {
      const double diff = counts.into_class(i, l) / counts.degree[i] - out.mean(cls, l);
      out.dev(cls, l) += diff * diff;
    }
  }
  for (std::uint32_t l = 0; l < k; ++l) {
    if (contributors[l] == 0) continue;
    for (std::uint32_t h = 0; h < k; ++h) {
      out.dev(l, h) = std::sqrt(out.dev(l, h) / contributors[l]);
    }
  }
  return out;
}

struct Csr {
  std::vector<std::uint64_t> offsets;
  std::vector<std::uint32_t> neighbors;
};

Csr build_csr(const AttributedGraph& g) {
  Csr csr;
  csr.offsets.assign(g.n + 1, 0);
  for (const Edge& e : g.edges) {
    ++csr.offsets[e.first + 1];
    ++csr.offsets[e.second + 1];
  }
  for (std::uint32_t i = 0; i < g.n; ++i) csr.offsets[i + 1] += csr.offsets[i];
  csr.neighbors.resize(csr.offsets[g.n]);
  std::vector<std::uint64_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
  for (const Edge& e : g.edges) {
    csr.neighbors[cursor[e.first]++] = e.second;
    csr.neighbors[cursor[e.second]++] = e.first;
  }
  return csr;
}

// Sum of distances and count of reached nodes from one BFS source.
void bfs_distances(const Csr& csr, std::uint32_t source, std::vector<std::int32_t>& dist,
                   double& sum, std::uint64_t& reached) {
  std::queue<std::uint32_t> frontier;
  dist.assign(dist.size(), -1);
  dist[source] = 0;
  frontier.push(source);
  sum = 0.0;
  reached = 0;
  while (!frontier.empty()) {
    const std::uint32_t v = frontier.front();
    frontier.pop();
    for (std::uint64_t p = csr.offsets[v]; p < csr.offsets[v + 1]; ++p) {
      const std::uint32_t w = csr.neighbors[p];
      if (dist[w] >= 0) continue;
      dist[w] = dist[v] + 1;
      sum += dist[w];
      ++reached;
      frontier.push(w);
    }
  }
}

}  // namespace

Matrix class_preference_mean(const AttributedGraph& g, std::uint32_t k) {
  return measure_mean_dev(g, k, true).mean;
}

Matrix class_preference_deviation(const AttributedGraph& g, std::uint32_t k) {
  return measure_mean_dev(g, k, true).dev;
}

Matrix attribute_class_correlation(const AttributedGraph& g, std::uint32_t k) {
  const std::size_t d = g.attributes.cols();
  if (d == 0) throw Error(ErrorKind::bad_shape, "graph has no attributes");
  const auto sizes = class_sizes(g, k);
  for (std::uint32_t l = 0; l < k; ++l) {
    if (sizes[l] == 0) {
      throw Error(ErrorKind::empty_class, "class " + std::to_string(l + 1) + " has no nodes");
    }
  }
  Matrix corr(d, k, 0.0);
  for (std::uint32_t i = 0; i < g.n; ++i) {
    const std::uint32_t cls = g.labels[i] - 1;
    for (std::size_t delta = 0; delta < d; ++delta) {
      corr(delta, cls) += g.attributes(i, delta);
    }
  }
  for (std::size_t delta = 0; delta < d; ++delta) {
    for (std::uint32_t l = 0; l < k; ++l) corr(delta, l) /= sizes[l];
  }
  return corr;
}

double class_size_loss(const std::vector<double>& rho_target, const AttributedGraph& g) {
  const std::uint32_t k = static_cast<std::uint32_t>(rho_target.size());
  const auto sizes = class_sizes(g, std::max(k, g.num_classes));
  double loss = 0.0;
  for (std::uint32_t l = 0; l < k; ++l) {
    const double diff = rho_target[l] - static_cast<double>(sizes[l]) / g.n;
    loss += diff * diff;
  }
  return loss;
}

MeanDevLosses mean_deviation_losses(const Matrix& mean_target, const Matrix& dev_target,
                                    const AttributedGraph& g) {
  const std::uint32_t k = static_cast<std::uint32_t>(mean_target.rows());
  const auto measured = measure_mean_dev(g, k, true);
  MeanDevLosses losses;
  for (std::uint32_t l = 0; l < k; ++l) {
    double row_mean = 0.0;
    double row_dev = 0.0;
    for (std::uint32_t h = 0; h < k; ++h) {
      const double dm = mean_target(l, h) - measured.mean(l, h);
      const double dd = dev_target(l, h) - measured.dev(l, h);
      row_mean += dm * dm;
      row_dev += dd * dd;
      losses.mse_mean += dm * dm;
      losses.mse_dev += dd * dd;
    }
    losses.mean_rows += std::sqrt(row_mean);
    losses.dev_rows += std::sqrt(row_dev);
  }
  const double entries = static_cast<double>(k) * k;
  losses.mse_mean /= entries;
  losses.mse_dev /= entries;
  return losses;
}

CommunityStats community_stats(const AttributedGraph& g, std::uint64_t seed) {
  CommunityStats out;
  const std::uint32_t k = g.num_classes;
  const auto sizes = class_sizes(g, k);

  std::uint64_t intra_edges = 0;
  for (const Edge& e : g.edges) {
    if (g.labels[e.first] == g.labels[e.second]) ++intra_edges;
  }
  std::uint64_t intra_pairs = 0;
  for (std::uint32_t l = 0; l < k; ++l) {
    intra_pairs += static_cast<std::uint64_t>(sizes[l]) * (sizes[l] - 1) / 2;
  }
  const std::uint64_t all_pairs = static_cast<std::uint64_t>(g.n) * (g.n - 1) / 2;
  const std::uint64_t inter_pairs = all_pairs - intra_pairs;
  out.intra_defined = intra_pairs > 0;
  out.inter_defined = inter_pairs > 0;
  out.intra_density = out.intra_defined ? static_cast<double>(intra_edges) / intra_pairs : 0.0;
  out.inter_density =
      out.inter_defined ? static_cast<double>(g.edges.size() - intra_edges) / inter_pairs : 0.0;

  const Csr csr = build_csr(g);
  std::vector<std::int32_t> component(g.n, -1);
  std::vector<std::uint32_t> lcc_nodes;
  std::uint64_t lcc = 0;
  std::uint32_t lcc_id = 0;
  std::uint32_t components = 0;
  {
    std::queue<std::uint32_t> frontier;
    for (std::uint32_t s = 0; s < g.n; ++s) {
      if (component[s] >= 0) continue;
      const std::uint32_t id = components++;
      std::uint64_t count = 1;
      component[s] = static_cast<std::int32_t>(id);
      frontier.push(s);
      while (!frontier.empty()) {
        const std::uint32_t v = frontier.front();
        frontier.pop();
        for (std::uint64_t p = csr.offsets[v]; p < csr.offsets[v + 1]; ++p) {
          const std::uint32_t w = csr.neighbors[p];
          if (component[w] >= 0) continue;
          component[w] = static_cast<std::int32_t>(id);
          ++count;
          frontier.push(w);
        }
      }
      if (count > lcc) {
        lcc = count;
        lcc_id = id;
      }
    }
  }
  out.component_count = components;
  out.lcc_size = lcc;
  for (std::uint32_t v = 0; v < g.n; ++v) {
    if (component[v] == static_cast<std::int32_t>(lcc_id)) lcc_nodes.push_back(v);
  }

  if (lcc < 2) {
    out.char_path_length = 0.0;
    out.path_sources = 0;
    return out;
  }
  // Exact all-sources path length for small graphs, sampled sources above.
  std::vector<std::uint32_t> sources = lcc_nodes;
  if (g.n > 5000 && lcc_nodes.size() > 1000) {
    auto rng = substream(seed, StreamTag::stats_sampling);
    std::shuffle(sources.begin(), sources.end(), rng);
    sources.resize(1000);
    std::sort(sources.begin(), sources.end());
  }
  out.path_sources = sources.size();
  std::vector<double> sums(sources.size(), 0.0);
  std::vector<std::uint64_t> reaches(sources.size(), 0);
  util::parallel_for(sources.size(), [&](std::size_t idx) {
    thread_local std::vector<std::int32_t> dist;
    dist.assign(g.n, -1);
    bfs_distances(csr, sources[idx], dist, sums[idx], reaches[idx]);
  });
  double total = 0.0;
  std::uint64_t pairs = 0;
  for (std::size_t idx = 0; idx < sources.size(); ++idx) {
    total += sums[idx];
    pairs += reaches[idx];
  }
  out.char_path_length = pairs > 0 ? total / static_cast<double>(pairs) : 0.0;
  return out;
}

ClassFeatureReport measure_class_features(const AttributedGraph& g) {
  const std::uint32_t k = g.num_classes;
  const auto measured = measure_mean_dev(g, k, false);
  ClassFeatureReport report;
  report.mean = measured.mean;
  report.deviation = measured.dev;
  report.isolated_excluded = measured.isolated;
  report.row_defined = measured.defined;
  const auto sizes = class_sizes(g, k);
  report.rho.resize(k);
  for (std::uint32_t l = 0; l < k; ++l) {
    report.rho[l] = static_cast<double>(sizes[l]) / g.n;
  }
  if (g.attributes.cols() > 0) {
    report.attr_corr = attribute_class_correlation(g, k);
  }
  return report;
}

ExtractedParams extract_params(const AttributedGraph& g) {
  const std::uint32_t k = g.num_classes;
  const auto measured = measure_mean_dev(g, k, true);
  ExtractedParams params;
  params.k = k;
  params.mean = measured.mean;
  params.deviation = measured.dev;
  const auto sizes = class_sizes(g, k);
  params.rho.resize(k);
  for (std::uint32_t l = 0; l < k; ++l) {
    params.rho[l] = static_cast<double>(sizes[l]) / g.n;
  }
  params.degrees.assign(g.n, 0);
  for (const Edge& e : g.edges) {
    ++params.degrees[e.first];
    ++params.degrees[e.second];
  }
  return params;
}

}  // namespace gencat::stats
