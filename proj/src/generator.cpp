#include "gencat/generator.hpp"

#include <chrono>
#include <string>

#include "gencat/adjust.hpp"
#include "gencat/attributes.hpp"
#include "gencat/latent.hpp"
#include "gencat/model.hpp"
#include "gencat/rng.hpp"

namespace gencat {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

GenerationResult generate(const GeneratorConfig& cfg, const PipelineOptions& opts) {
  validate_config(cfg);
  const std::uint64_t max_simple_edges = static_cast<std::uint64_t>(cfg.n) * (cfg.n - 1) / 2;
  if (cfg.m > max_simple_edges) {
    throw Error(ErrorKind::infeasible_budget,
                std::to_string(cfg.m) + " edges exceed the simple-graph maximum " +
                    std::to_string(max_simple_edges));
  }

  GenerationResult result;
  result.requested_edges = cfg.m;
  const auto t_start = std::chrono::steady_clock::now();

  // Latent factor generation: class sizes, labels, membership, connection.
  auto size_rng = substream(cfg.seed, StreamTag::class_sizes);
  const auto rho = latent::sample_class_sizes(cfg.class_sizes, cfg.k, size_rng);
  result.class_sizes = rho.rho;
  auto label_rng = substream(cfg.seed, StreamTag::labels);
  auto labels = latent::assign_labels(rho, cfg.n, label_rng);
  Matrix membership =
      latent::init_membership(labels, cfg.class_pref_mean, cfg.class_pref_dev, cfg.seed);
  Matrix connection =
      latent::derive_connection_proportions(membership, labels, cfg.class_pref_mean);
  Matrix attr_proportions = latent::init_attr_proportions(cfg.attr_class_corr);
  result.seconds_latent = seconds_since(t_start);

  // Adjusting proportions: per-class temperature search, then attributes.
  const auto t_adjust = std::chrono::steady_clock::now();
  const auto types = latent::topology_types(cfg.class_pref_mean);
  result.per_class_mean_loss.resize(cfg.k);
  if (opts.adjust_proportions) {
    for (std::uint32_t l = 0; l < cfg.k; ++l) {
      result.per_class_mean_loss[l] =
          adjust::adjust_class(membership, connection, labels, cfg.class_pref_mean, l, types[l]);
    }
    if (cfg.d > 0) {
      const Matrix class_mean = adjust::class_mean_membership(membership, labels, cfg.k);
      adjust::adjust_attributes(attr_proportions, class_mean, cfg.attr_class_corr);
    }
  } else {
    for (std::uint32_t l = 0; l < cfg.k; ++l) {
      result.per_class_mean_loss[l] =
          adjust::class_mean_loss(membership, connection, labels, cfg.class_pref_mean, l);
    }
  }
  result.seconds_adjust = seconds_since(t_adjust);

  // Degree plan and edge generation.
  const auto t_edges = std::chrono::steady_clock::now();
  DegreePlan plan;
  if (opts.degree_list.has_value()) {
    if (opts.degree_list->size() != cfg.n) {
      throw Error(ErrorKind::bad_shape, "degree list length differs from n");
    }
    plan = edges::degree_plan_from_list(*opts.degree_list);
  } else {
    result.fitted_degree_exponent = edges::fit_degree_exponent(cfg.n, cfg.m);
    plan = edges::build_degree_plan(cfg.n, result.fitted_degree_exponent, cfg.m);
  }
  auto edge_rng = substream(cfg.seed, StreamTag::edge_generation);
  auto edge_list = edges::generate_edges(membership, connection, plan, cfg.m, cfg.r,
                                         opts.target_selection, edge_rng, &result.edge_info);
  result.seconds_edges = seconds_since(t_edges);

  // Attributes.
  const auto t_attrs = std::chrono::steady_clock::now();
  Matrix x(cfg.n, 0);
  if (cfg.d > 0) {
    const Matrix base = attributes::base_attributes(membership, attr_proportions);
    x = cfg.attr_dist == AttrDist::normal
            ? attributes::apply_normal(base, cfg.omega, cfg.seed)
            : attributes::apply_bernoulli(base, cfg.seed);
  }
  result.seconds_attributes = seconds_since(t_attrs);

  result.graph.n = cfg.n;
  result.graph.num_classes = cfg.k;
  result.graph.edges = std::move(edge_list);
  result.graph.labels = std::move(labels);
  result.graph.attributes = std::move(x);
  result.factors.membership = std::move(membership);
  result.factors.connection = std::move(connection);
  result.factors.attr_proportions = std::move(attr_proportions);

  result.mape_defined = true;
  for (std::uint32_t deg : plan.theta) {
    if (deg == 0) {
      result.mape_defined = false;
      break;
    }
  }
  if (result.mape_defined) {
    result.mape = edges::degree_mape(plan.theta, plan.theta_prime);
  }
  result.plan = std::move(plan);
  result.seconds_total = seconds_since(t_start);
  return result;
}

}  // namespace gencat
