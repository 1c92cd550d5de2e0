#pragma once

#include <cstdint>
#include <random>

namespace gencat {

/// Independent RNG substreams derived from one master seed.
///
/// A substream is identified by a fixed domain tag plus an index (row,
/// column, class, ...). The derivation is stateless, so row-parallel code
/// draws the same values regardless of thread count or execution order.
enum class StreamTag : std::uint64_t {
  class_sizes = 1,
  labels = 2,
  membership_row = 3,
  edge_generation = 4,
  attr_noise_column = 5,
  preset = 6,
  stats_sampling = 7,
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 substream(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0) {
  std::uint64_t state = seed;
  state ^= splitmix64(state) + static_cast<std::uint64_t>(tag);
  state ^= splitmix64(state) + index;
  return std::mt19937_64(splitmix64(state));
}

}  // namespace gencat
