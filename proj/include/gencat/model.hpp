#pragma once

#include "gencat/types.hpp"

namespace gencat {

inline constexpr double kRowSumTolerance = 1e-6;

/// Checks every GeneratorConfig invariant; throws Error naming the violated
/// one (non_stochastic_row, out_of_range, bad_shape, ...).
void validate_config(const GeneratorConfig& cfg);

/// Scans the edge set and labels of a graph; throws on duplicate edges,
/// self-loops, unsorted/unnormalized pairs, endpoints outside [0, n) or
/// labels outside {1..k}.
void validate_graph(const AttributedGraph& g);

/// True when every row sums to one within tol and entries are finite.
bool rows_stochastic(const Matrix& m, double tol = kRowSumTolerance);

}  // namespace gencat
