#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

// Bitset branch-and-bound kernels used by the exact subset searches. Both
// return the lexicographically smallest maximum solution so that results do
// not depend on search order.
namespace metrik::detail {

using Mask = std::uint64_t;

inline constexpr std::size_t kMaxMaskVertices = 64;

inline Mask bit(std::size_t i) { return Mask{1} << i; }

// Vertices with index > i.
inline Mask above(std::size_t i) { return i + 1 >= 64 ? 0 : ~(bit(i + 1) - 1); }

inline std::size_t popcount(Mask m) {
  return static_cast<std::size_t>(std::popcount(m));
}

inline std::vector<std::size_t> mask_to_indices(Mask m) {
  std::vector<std::size_t> out;
  while (m != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

/// adjacency[i] holds the neighbours of i (bit i unset). n <= 64.
std::vector<std::size_t> lex_first_maximum_clique(std::span<const Mask> adjacency);

/// 3-uniform hypergraph on n <= 64 vertices given by completion masks:
/// completions[u * n + w] holds every c such that {u, w, c} is an edge.
/// Returns the lexicographically smallest maximum independent set (no edge
/// fully contained). `seed` is a known independent set used as the initial
/// incumbent.
std::vector<std::size_t> lex_first_maximum_independent_set(
    std::size_t n, std::span<const Mask> completions, Mask seed);

}  // namespace metrik::detail
