#include "gencat/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "gencat/model.hpp"
#include "gencat/presets.hpp"
#include "gencat/rng.hpp"

namespace gencat::io {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io_error, "cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot open " + path.string());
  return in;
}

bool parse_two_uints(const std::string& line, std::uint64_t& a, std::uint64_t& b) {
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
  auto ra = std::from_chars(p, end, a);
  if (ra.ec != std::errc{}) return false;
  p = ra.ptr;
  while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
  auto rb = std::from_chars(p, end, b);
  if (rb.ec != std::errc{}) return false;
  p = rb.ptr;
  while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
  return p == end;
}

bool blank_or_comment(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

void write_edge_list(const std::filesystem::path& path, const std::vector<Edge>& edges) {
  auto out = open_out(path);
  char buf[64];
  for (const Edge& e : edges) {
    char* p = buf;
    p = std::to_chars(p, p + 20, e.first).ptr;
    *p++ = '\t';
    p = std::to_chars(p, p + 20, e.second).ptr;
    *p++ = '\n';
    out.write(buf, p - buf);
  }
  if (!out) throw Error(ErrorKind::io_error, "write failed for " + path.string());
}

std::vector<Edge> read_edge_list(const std::filesystem::path& path, EdgeReadInfo* info) {
  auto in = open_in(path);
  std::vector<Edge> edges;
  EdgeReadInfo counters;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (!parse_two_uints(line, a, b) || a > 0xffffffffull || b > 0xffffffffull) {
      throw Error(ErrorKind::parse_error,
                  path.string() + ":" + std::to_string(line_no) + ": expected two node IDs");
    }
    if (a == b) {
      ++counters.dropped_self_loops;
      continue;
    }
    Edge e{static_cast<std::uint32_t>(std::min(a, b)), static_cast<std::uint32_t>(std::max(a, b))};
    counters.max_node = std::max(counters.max_node, e.second);
    edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  const auto last = std::unique(edges.begin(), edges.end());
  counters.merged_duplicates = static_cast<std::uint32_t>(edges.end() - last);
  edges.erase(last, edges.end());
  if (info != nullptr) *info = counters;
  return edges;
}

void write_labels(const std::filesystem::path& path, const std::vector<std::uint32_t>& labels) {
  auto out = open_out(path);
  char buf[64];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    char* p = buf;
    p = std::to_chars(p, p + 20, i).ptr;
    *p++ = '\t';
    p = std::to_chars(p, p + 20, labels[i]).ptr;
    *p++ = '\n';
    out.write(buf, p - buf);
  }
  if (!out) throw Error(ErrorKind::io_error, "write failed for " + path.string());
}

std::vector<std::uint32_t> read_labels(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::uint64_t node = 0;
    std::uint64_t label = 0;
    if (!parse_two_uints(line, node, label) || node > 0xffffffffull || label == 0) {
      throw Error(ErrorKind::parse_error, path.string() + ":" + std::to_string(line_no) +
                                              ": expected \"node<TAB>label\" with label >= 1");
    }
    pairs.emplace_back(static_cast<std::uint32_t>(node), static_cast<std::uint32_t>(label));
  }
  if (pairs.empty()) throw Error(ErrorKind::parse_error, path.string() + ": no labels");
  std::vector<std::uint32_t> labels(pairs.size(), 0);
  for (const auto& [node, label] : pairs) {
    if (node >= labels.size()) {
      throw Error(ErrorKind::parse_error,
                  path.string() + ": node " + std::to_string(node) + " outside [0," +
                      std::to_string(labels.size()) + ") implied by the line count");
    }
    if (labels[node] != 0) {
      throw Error(ErrorKind::parse_error,
                  path.string() + ": node " + std::to_string(node) + " labeled twice");
    }
    labels[node] = label;
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0) {
      throw Error(ErrorKind::parse_error,
                  path.string() + ": node " + std::to_string(i) + " has no label");
    }
  }
  return labels;
}

void write_attributes_csv(const std::filesystem::path& path, const Matrix& attributes) {
  auto out = open_out(path);
  out << "node";
  for (std::size_t delta = 0; delta < attributes.cols(); ++delta) out << ",a" << delta;
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < attributes.rows(); ++i) {
    out << i;
    for (std::size_t delta = 0; delta < attributes.cols(); ++delta) {
      const int len = std::snprintf(buf, sizeof(buf), ",%.9g", attributes(i, delta));
      out.write(buf, len);
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::io_error, "write failed for " + path.string());
}

Matrix read_attributes_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::parse_error, path.string() + ": empty file");
  const std::size_t cols = std::count(line.begin(), line.end(), ',');
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    if (!std::getline(fields, field, ',')) continue;
    const std::size_t node = std::stoull(field);
    std::vector<double> values;
    values.reserve(cols);
    while (std::getline(fields, field, ',')) values.push_back(std::stod(field));
    if (values.size() != cols || node != rows.size()) {
      throw Error(ErrorKind::parse_error,
                  path.string() + ":" + std::to_string(line_no) + ": malformed attribute row");
    }
    rows.push_back(std::move(values));
  }
  return Matrix::from_rows(rows);
}

AttributedGraph assemble_graph(std::vector<Edge> edges, std::vector<std::uint32_t> labels,
                               Matrix attributes) {
  AttributedGraph g;
  g.n = static_cast<std::uint32_t>(labels.size());
  g.num_classes = *std::max_element(labels.begin(), labels.end());
  for (const Edge& e : edges) {
    if (e.second >= g.n) {
      throw Error(ErrorKind::parse_error,
                  "edge endpoint " + std::to_string(e.second) + " has no label");
    }
  }
  if (!attributes.empty() && attributes.rows() != g.n) {
    throw Error(ErrorKind::parse_error, "attribute row count differs from the label count");
  }
  g.edges = std::move(edges);
  g.labels = std::move(labels);
  g.attributes = std::move(attributes);
  validate_graph(g);
  return g;
}

namespace {

Matrix matrix_from_json(const json& j, const std::string& name) {
  if (!j.is_array()) throw Error(ErrorKind::parse_error, name + " must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(ErrorKind::parse_error, name + " rows must be arrays");
    rows.push_back(row.get<std::vector<double>>());
  }
  if (rows.empty()) return Matrix();
  return Matrix::from_rows(rows);
}

void apply_preset(GeneratorConfig& cfg, const json& j) {
  const std::string name = j.at("name").get<std::string>();
  if (name == "lfr") {
    auto [mean, dev] = presets::lfr_preset(cfg.k, j.at("mu").get<double>());
    cfg.class_pref_mean = std::move(mean);
    cfg.class_pref_dev = std::move(dev);
  } else if (name == "dcsbm") {
    auto [mean, dev] = presets::dcsbm_preset(matrix_from_json(j.at("M"), "preset M"));
    cfg.class_pref_mean = std::move(mean);
    cfg.class_pref_dev = std::move(dev);
  } else if (name == "diagonal") {
    auto rng = substream(cfg.seed, StreamTag::preset);
    double lo = 0.05;
    double hi = 0.3;
    if (j.contains("dev_range")) {
      lo = j.at("dev_range").at(0).get<double>();
      hi = j.at("dev_range").at(1).get<double>();
    }
    auto [mean, dev] =
        presets::diagonal_preset(cfg.k, j.at("diag").get<std::vector<double>>(), rng, lo, hi);
    cfg.class_pref_mean = std::move(mean);
    cfg.class_pref_dev = std::move(dev);
  } else {
    throw Error(ErrorKind::parse_error, "unknown preset \"" + name + "\"");
  }
}

}  // namespace

GeneratorConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("config: ") + e.what());
  }
  try {
    GeneratorConfig cfg;
    cfg.n = j.at("n").get<std::uint32_t>();
    cfg.m = j.at("m").get<std::uint64_t>();
    cfg.k = j.at("k").get<std::uint32_t>();
    cfg.d = j.value("d", 0u);
    cfg.omega = j.value("omega", 0.0);
    cfg.r = j.value("r", 50u);
    cfg.seed = j.value("seed", std::uint64_t{0});
    const std::string dist = j.value("attr_dist", std::string("normal"));
    if (dist == "normal") {
      cfg.attr_dist = AttrDist::normal;
    } else if (dist == "bernoulli") {
      cfg.attr_dist = AttrDist::bernoulli;
    } else {
      throw Error(ErrorKind::parse_error, "attr_dist must be \"normal\" or \"bernoulli\"");
    }

    if (j.contains("class_size_mode")) {
      const auto& cs = j.at("class_size_mode");
      const std::string mode = cs.at("mode").get<std::string>();
      if (mode == "power_law") {
        cfg.class_sizes.mode = ClassSizeSpec::Mode::power_law;
        cfg.class_sizes.phi = cs.value("phi", 1.0);
      } else if (mode == "normal") {
        cfg.class_sizes.mode = ClassSizeSpec::Mode::normal;
        cfg.class_sizes.mean = cs.at("mean").get<double>();
        cfg.class_sizes.dev = cs.at("dev").get<double>();
      } else if (mode == "explicit") {
        cfg.class_sizes.mode = ClassSizeSpec::Mode::explicit_list;
        cfg.class_sizes.rho = cs.at("rho").get<std::vector<double>>();
      } else {
        throw Error(ErrorKind::parse_error, "unknown class_size_mode \"" + mode + "\"");
      }
    } else if (j.contains("phi_C")) {
      cfg.class_sizes.mode = ClassSizeSpec::Mode::power_law;
      cfg.class_sizes.phi = j.at("phi_C").get<double>();
    }

    if (j.contains("preset")) {
      apply_preset(cfg, j.at("preset"));
    } else {
      cfg.class_pref_mean = matrix_from_json(j.at("M"), "M");
      cfg.class_pref_dev = j.contains("D") ? matrix_from_json(j.at("D"), "D")
                                           : Matrix(cfg.k, cfg.k, 0.0);
    }
    if (cfg.d > 0) {
      cfg.attr_class_corr = matrix_from_json(j.at("H"), "H");
    }
    return cfg;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("config: ") + e.what());
  }
}

GeneratorConfig load_config_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_json(text.str());
}

}  // namespace gencat::io
