#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gencat/types.hpp"

namespace gencat::io {

/// One edge per line, "i<TAB>j" with i < j, 0-based, sorted lexicographically.
void write_edge_list(const std::filesystem::path& path, const std::vector<Edge>& edges);

struct EdgeReadInfo {
  std::uint32_t dropped_self_loops = 0;
  std::uint32_t merged_duplicates = 0;
  std::uint32_t max_node = 0;
};

/// Reads whitespace-separated node pairs (lines starting with '#' are
/// skipped), canonicalizes to i < j, drops self-loops and merges duplicates.
std::vector<Edge> read_edge_list(const std::filesystem::path& path, EdgeReadInfo* info = nullptr);

/// One node per line, "node<TAB>label", 0-based nodes, 1-based labels.
void write_labels(const std::filesystem::path& path, const std::vector<std::uint32_t>& labels);

/// Reads labels and checks every node 0..n-1 appears exactly once; the error
/// message names the missing or duplicated node.
std::vector<std::uint32_t> read_labels(const std::filesystem::path& path);

/// CSV with header "node,a0,...,a{d-1}"; values printed with 9 significant
/// digits.
void write_attributes_csv(const std::filesystem::path& path, const Matrix& attributes);

Matrix read_attributes_csv(const std::filesystem::path& path);

/// Assembles and validates a graph from parts read above; throws parse_error
/// naming the offending node when edges reference unlabeled nodes.
AttributedGraph assemble_graph(std::vector<Edge> edges, std::vector<std::uint32_t> labels,
                               Matrix attributes = {});

/// Loads a GeneratorConfig from a JSON document mirroring the config field
/// names; a "preset" object fills the preference matrices.
GeneratorConfig load_config_json(const std::filesystem::path& path);

GeneratorConfig parse_config_json(const std::string& text);

}  // namespace gencat::io
