#include "clique.hpp"

#include <algorithm>
#include <bit>

namespace metrik::detail {
namespace {

// Greedy colouring of `cand`; the number of colour classes bounds the clique
// size inside `cand`.
std::size_t colour_bound(Mask cand, std::span<const Mask> adj) {
  std::size_t colours = 0;
  while (cand != 0) {
    ++colours;
    Mask uncoloured = cand;
    while (uncoloured != 0) {
      const auto v = static_cast<std::size_t>(std::countr_zero(uncoloured));
      uncoloured &= ~bit(v);
      uncoloured &= ~adj[v];
      cand &= ~bit(v);
    }
  }
  return colours;
}

class CliqueSearch {
 public:
  explicit CliqueSearch(std::span<const Mask> adj) : adj_(adj) {}

  // True iff a clique of `target` vertices extends `size` already chosen
  // vertices using only `cand`.
  bool reaches(std::size_t size, Mask cand, std::size_t target) const {
    if (size >= target) return true;
    if (size + popcount(cand) < target) return false;
    if (size + colour_bound(cand, adj_) < target) return false;
    while (cand != 0) {
      if (size + popcount(cand) < target) return false;
      const auto v = static_cast<std::size_t>(std::countr_zero(cand));
      cand &= ~bit(v);
      if (reaches(size + 1, cand & adj_[v], target)) return true;
    }
    return false;
  }

  std::size_t maximum(Mask all) const {
    std::size_t best = all == 0 ? 0 : 1;
    while (reaches(0, all, best + 1)) ++best;
    return best;
  }

 private:
  std::span<const Mask> adj_;
};

class HypergraphSearch {
 public:
  HypergraphSearch(std::size_t n, std::span<const Mask> completions)
      : n_(n), completions_(completions) {}

  Mask include(Mask chosen, Mask cand, std::size_t v) const {
    cand &= ~bit(v);
    Mask c = chosen;
    while (c != 0) {
      const auto u = static_cast<std::size_t>(std::countr_zero(c));
      c &= c - 1;
      cand &= ~completions_[v * n_ + u];
    }
    return cand;
  }

  // Number of hyperedges through v that lie inside chosen | cand and are not
  // yet excluded (at least one endpoint other than v still undecided).
  std::size_t active_degree(std::size_t v, Mask chosen, Mask cand) const {
    const Mask live = chosen | cand;
    std::size_t deg = 0;
    Mask others = live & ~bit(v);
    while (others != 0) {
      const auto u = static_cast<std::size_t>(std::countr_zero(others));
      others &= others - 1;
      Mask third = completions_[v * n_ + u] & live & ~bit(v);
      // Each hyperedge {v,u,w} is seen from u and from w.
      if (chosen & bit(u)) third &= cand;
      deg += popcount(third);
    }
    return deg;
  }

  bool reaches(Mask chosen, Mask cand, std::size_t target) const {
    const std::size_t size = popcount(chosen);
    if (size >= target) return true;
    if (size + popcount(cand) < target) return false;

    // Vertices in no live hyperedge can always be added.
    std::size_t best_v = n_;
    std::size_t best_deg = 0;
    Mask free = 0;
    Mask scan = cand;
    while (scan != 0) {
      const auto v = static_cast<std::size_t>(std::countr_zero(scan));
      scan &= scan - 1;
      const std::size_t deg = active_degree(v, chosen, cand);
      if (deg == 0) {
        free |= bit(v);
      } else if (deg > best_deg) {
        best_deg = deg;
        best_v = v;
      }
    }
    if (free != 0) {
      return reaches(chosen | free, cand & ~free, target);
    }
    if (best_v == n_) return size + popcount(cand) >= target;

    if (reaches(chosen | bit(best_v), include(chosen, cand, best_v), target))
      return true;
    return reaches(chosen, cand & ~bit(best_v), target);
  }

 private:
  std::size_t n_;
  std::span<const Mask> completions_;
};

}  // namespace

std::vector<std::size_t> lex_first_maximum_clique(std::span<const Mask> adjacency) {
  const std::size_t n = adjacency.size();
  if (n == 0) return {};
  const Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
  CliqueSearch search(adjacency);
  const std::size_t best = search.maximum(all);

  Mask chosen = 0;
  Mask cand = all;
  for (std::size_t i = 0; i < n && popcount(chosen) < best; ++i) {
    if (!(cand & bit(i))) continue;
    const Mask rest = cand & adjacency[i] & above(i);
    if (search.reaches(popcount(chosen) + 1, rest, best)) {
      chosen |= bit(i);
      cand = rest;
    } else {
      cand &= ~bit(i);
    }
  }
  return mask_to_indices(chosen);
}

std::vector<std::size_t> lex_first_maximum_independent_set(
    std::size_t n, std::span<const Mask> completions, Mask seed) {
  if (n == 0) return {};
  const Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
  HypergraphSearch search(n, completions);
  std::size_t best = popcount(seed);
  while (search.reaches(0, all, best + 1)) ++best;

  Mask chosen = 0;
  Mask cand = all;
  for (std::size_t i = 0; i < n && popcount(chosen) < best; ++i) {
    if (!(cand & bit(i))) continue;
    const Mask next = search.include(chosen, cand, i) & above(i);
    if (search.reaches(chosen | bit(i), next, best)) {
      chosen |= bit(i);
      cand = next;
    } else {
      cand &= ~bit(i);
    }
  }
  return mask_to_indices(chosen);
}

}  // namespace metrik::detail
