#include "gencat/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gencat/generator.hpp"
#include "gencat/io.hpp"
#include "gencat/model.hpp"
#include "gencat/stats.hpp"
#include "gencat/util.hpp"

namespace gencat::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (double v : m.row(i)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

json class_features_json(const ClassFeatureReport& r) {
  json j;
  j["class_preference_mean"] = matrix_json(r.mean);
  j["class_preference_deviation"] = matrix_json(r.deviation);
  j["class_sizes"] = r.rho;
  j["attribute_class_correlation"] = r.attr_corr.empty() ? json() : matrix_json(r.attr_corr);
  j["isolated_nodes_excluded"] = r.isolated_excluded;
  j["row_defined"] = r.row_defined;
  return j;
}

json community_json(const stats::CommunityStats& s) {
  json j;
  j["intra_density"] = s.intra_density;
  j["inter_density"] = s.inter_density;
  j["intra_density_defined"] = s.intra_defined;
  j["inter_density_defined"] = s.inter_defined;
  j["lcc_size"] = s.lcc_size;
  j["connected_components"] = s.component_count;
  j["char_path_length"] = s.char_path_length;
  j["path_length_sources"] = s.path_sources;
  return j;
}

std::vector<std::string> feature_warnings(const ClassFeatureReport& features) {
  std::vector<std::string> warnings;
  for (std::size_t l = 0; l < features.row_defined.size(); ++l) {
    if (!features.row_defined[l]) {
      warnings.push_back("class " + std::to_string(l + 1) +
                         " has no non-isolated node; its preference rows are undefined");
    }
  }
  if (features.isolated_excluded > 0) {
    warnings.push_back(std::to_string(features.isolated_excluded) +
                       " isolated node(s) excluded from preference averages");
  }
  return warnings;
}

json generation_report(const GeneratorConfig& cfg, const GenerationResult& res,
                       const ClassFeatureReport& features, const stats::CommunityStats& cstats) {
  json report;
  report["seed"] = cfg.seed;
  report["nodes"] = res.graph.n;
  report["edges_requested"] = res.requested_edges;
  report["edges_realized"] = res.graph.edges.size();
  report["edge_gap"] = res.requested_edges - res.graph.edges.size();
  report["degree_mape"] = res.mape_defined ? json(res.mape) : json();
  report["fitted_degree_exponent"] =
      res.fitted_degree_exponent > 0.0 ? json(res.fitted_degree_exponent) : json();
  report["per_class_mean_loss"] = res.per_class_mean_loss;
  report["target_class_sizes"] = res.class_sizes;
  report["class_features"] = class_features_json(features);
  report["community"] = community_json(cstats);
  report["wall_seconds"] = {{"latent", res.seconds_latent},
                            {"adjust", res.seconds_adjust},
                            {"edges", res.seconds_edges},
                            {"attributes", res.seconds_attributes},
                            {"total", res.seconds_total}};
  report["peak_memory_bytes"] = util::peak_rss_bytes();
  report["warnings"] = feature_warnings(features);
  return report;
}

void write_outputs(const fs::path& out_dir, const AttributedGraph& g, const json& report) {
  fs::create_directories(out_dir);
  io::write_edge_list(out_dir / "edges.tsv", g.edges);
  io::write_labels(out_dir / "labels.tsv", g.labels);
  if (g.attributes.cols() > 0) {
    io::write_attributes_csv(out_dir / "attributes.csv", g.attributes);
  }
  std::ofstream out(out_dir / "report.json");
  if (!out) throw Error(ErrorKind::io_error, "cannot write report to " + out_dir.string());
  out << report.dump(2) << '\n';
}

template <typename Fn>
int run_guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace

int cmd_generate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed) {
  return run_guarded([&] {
    GeneratorConfig cfg = io::load_config_json(config_path);
    if (seed.has_value()) cfg.seed = *seed;
    validate_config(cfg);
    const GenerationResult res = generate(cfg);
    const ClassFeatureReport features = stats::measure_class_features(res.graph);
    const stats::CommunityStats cstats = stats::community_stats(res.graph, cfg.seed);
    json report = generation_report(cfg, res, features, cstats);
    write_outputs(out_dir, res.graph, report);
    std::printf("generated %zu edges over %u nodes into %s (gap %llu, mape %s)\n",
                res.graph.edges.size(), res.graph.n, out_dir.c_str(),
                static_cast<unsigned long long>(res.requested_edges - res.graph.edges.size()),
                res.mape_defined ? std::to_string(res.mape).c_str() : "n/a");
    return 0;
  });
}

int cmd_reproduce(const std::string& graph_path, const std::string& labels_path,
                  const std::string& out_dir, std::optional<std::uint32_t> new_nodes,
                  std::optional<std::uint64_t> new_edges, std::optional<std::uint64_t> seed) {
  return run_guarded([&] {
    auto edges_in = io::read_edge_list(graph_path);
    auto labels_in = io::read_labels(labels_path);
    const AttributedGraph input = io::assemble_graph(std::move(edges_in), std::move(labels_in));
    const stats::ExtractedParams params = stats::extract_params(input);

    GeneratorConfig cfg;
    cfg.n = new_nodes.value_or(input.n);
    cfg.m = new_edges.value_or(input.edges.size());
    cfg.k = params.k;
    cfg.d = 0;
    cfg.class_pref_mean = params.mean;
    cfg.class_pref_dev = params.deviation;
    cfg.class_sizes.mode = ClassSizeSpec::Mode::explicit_list;
    cfg.class_sizes.rho = params.rho;
    cfg.seed = seed.value_or(0);
    validate_config(cfg);

    PipelineOptions opts;
    const bool same_size = cfg.n == input.n && cfg.m == input.edges.size();
    if (same_size) opts.degree_list = params.degrees;  // reuse the observed degrees

    const GenerationResult res = generate(cfg, opts);
    const ClassFeatureReport features = stats::measure_class_features(res.graph);
    const stats::CommunityStats cstats_out = stats::community_stats(res.graph, cfg.seed);
    const stats::CommunityStats cstats_in = stats::community_stats(input, cfg.seed);
    const stats::MeanDevLosses losses =
        stats::mean_deviation_losses(params.mean, params.deviation, res.graph);

    json report = generation_report(cfg, res, features, cstats_out);
    report["comparison"] = {
        {"mse_class_preference_mean", losses.mse_mean},
        {"mse_class_preference_deviation", losses.mse_dev},
        {"input_community", community_json(cstats_in)},
        {"community_delta",
         {{"intra_density", cstats_out.intra_density - cstats_in.intra_density},
          {"inter_density", cstats_out.inter_density - cstats_in.inter_density},
          {"char_path_length", cstats_out.char_path_length - cstats_in.char_path_length},
          {"lcc_size", static_cast<std::int64_t>(cstats_out.lcc_size) -
                           static_cast<std::int64_t>(cstats_in.lcc_size)}}},
        {"rescaled", !same_size}};
    write_outputs(out_dir, res.graph, report);
    std::printf("reproduced %u nodes / %zu edges into %s (mse mean %.3e, deviation %.3e)\n",
                res.graph.n, res.graph.edges.size(), out_dir.c_str(), losses.mse_mean,
                losses.mse_dev);
    return 0;
  });
}

int cmd_measure(const std::string& graph_path, const std::string& labels_path,
                const std::optional<std::string>& attrs_path) {
  return run_guarded([&] {
    io::EdgeReadInfo read_info;
    auto edges_in = io::read_edge_list(graph_path, &read_info);
    auto labels_in = io::read_labels(labels_path);
    Matrix attrs;
    if (attrs_path.has_value()) attrs = io::read_attributes_csv(*attrs_path);
    const AttributedGraph g =
        io::assemble_graph(std::move(edges_in), std::move(labels_in), std::move(attrs));

    const ClassFeatureReport features = stats::measure_class_features(g);
    const stats::CommunityStats cstats = stats::community_stats(g);
    json report;
    report["nodes"] = g.n;
    report["edges"] = g.edges.size();
    report["classes"] = g.num_classes;
    report["class_features"] = class_features_json(features);
    report["community"] = community_json(cstats);
    auto warnings = feature_warnings(features);
    if (read_info.dropped_self_loops > 0) {
      warnings.push_back(std::to_string(read_info.dropped_self_loops) +
                         " self-loop(s) dropped while reading");
    }
    if (read_info.merged_duplicates > 0) {
      warnings.push_back(std::to_string(read_info.merged_duplicates) +
                         " duplicate edge(s) merged while reading");
    }
    report["warnings"] = warnings;
    std::cout << report.dump(2) << std::endl;
    return 0;  // warnings are not errors
  });
}

int run_main(int argc, char** argv) {
  CLI::App app{"gencat: synthesize labeled attributed graphs with controlled class structure"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string graph_path;
  std::string labels_path;
  std::string attrs_path;
  std::uint64_t seed_value = 0;
  std::uint32_t nodes_value = 0;
  std::uint64_t edges_value = 0;

  auto* gen = app.add_subcommand("generate", "generate a graph from a JSON config");
  gen->add_option("--config", config_path, "JSON config file")->required();
  gen->add_option("--out", out_dir, "output directory")->required();
  auto* gen_seed = gen->add_option("--seed", seed_value, "override the config seed");

  auto* rep = app.add_subcommand("reproduce", "extract features from a graph and regenerate it");
  rep->add_option("--graph", graph_path, "input edge list")->required();
  rep->add_option("--labels", labels_path, "input label file")->required();
  rep->add_option("--out", out_dir, "output directory")->required();
  auto* rep_nodes = rep->add_option("--nodes", nodes_value, "rescale to this node count");
  auto* rep_edges = rep->add_option("--edges", edges_value, "rescale to this edge count");
  auto* rep_seed = rep->add_option("--seed", seed_value, "generation seed");

  auto* mea = app.add_subcommand("measure", "report class features of a labeled graph");
  mea->add_option("--graph", graph_path, "input edge list")->required();
  mea->add_option("--labels", labels_path, "input label file")->required();
  auto* mea_attrs = mea->add_option("--attrs", attrs_path, "input attribute CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (gen->parsed()) {
    return cmd_generate(config_path, out_dir,
                        gen_seed->count() ? std::optional(seed_value) : std::nullopt);
  }
  if (rep->parsed()) {
    return cmd_reproduce(graph_path, labels_path, out_dir,
                         rep_nodes->count() ? std::optional(nodes_value) : std::nullopt,
                         rep_edges->count() ? std::optional(edges_value) : std::nullopt,
                         rep_seed->count() ? std::optional(seed_value) : std::nullopt);
  }
  if (mea->parsed()) {
    return cmd_measure(graph_path, labels_path,
                       mea_attrs->count() ? std::optional(attrs_path) : std::nullopt);
  }
  return 1;
}

}  // namespace gencat::cli
