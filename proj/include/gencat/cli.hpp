#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace gencat::cli {

/// Exit codes: 0 success, 1 validation error, 2 I/O error, 3 infeasible
/// parameters. Warnings (e.g. measuring a degenerate graph) still exit 0.

int cmd_generate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed);

int cmd_reproduce(const std::string& graph_path, const std::string& labels_path,
                  const std::string& out_dir, std::optional<std::uint32_t> new_nodes,
                  std::optional<std::uint64_t> new_edges, std::optional<std::uint64_t> seed);

int cmd_measure(const std::string& graph_path, const std::string& labels_path,
                const std::optional<std::string>& attrs_path);

int run_main(int argc, char** argv);

}  // namespace gencat::cli
