#include <algorithm>
#include <set>
#include <string>

#include "metrik/error.hpp"
#include "metrik/sra.hpp"
#include "metrik/spaces.hpp"

namespace metrik {
namespace {

LatticePoint negate(LatticePoint g) {
  for (auto& x : g) x = -x;
  return g;
}

LatticePoint add(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

// Integer row reduction; the rows span Z^n iff every pivot is +-1 and the
// rank is n.
bool spans_integer_lattice(const std::vector<LatticePoint>& generators, std::size_t n) {
  std::vector<std::vector<BigInt>> rows;
  for (const auto& g : generators) rows.emplace_back(g.begin(), g.end());
  std::size_t top = 0;
  for (std::size_t col = 0; col < n; ++col) {
    while (true) {
      std::size_t pivot = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (rows[r][col] != 0 &&
            (pivot == rows.size() || abs(rows[r][col]) < abs(rows[pivot][col]))) {
          pivot = r;
        }
      }
      if (pivot == rows.size()) return false;  // rank deficient
      std::swap(rows[top], rows[pivot]);
      bool cleared = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        const BigInt q = rows[r][col] / rows[top][col];
        for (std::size_t c = col; c < n; ++c) rows[r][c] -= q * rows[top][c];
        if (rows[r][col] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (abs(rows[top][col]) != 1) return false;
    ++top;
  }
  return true;
}

}  // namespace

void check_generating_set(const std::vector<LatticePoint>& generators) {
  if (generators.empty()) throw MalformedInput("generator set is empty");
  const std::size_t n = generators.front().size();
  if (n == 0) throw MalformedInput("generators must have positive dimension");
  const std::set<LatticePoint> set(generators.begin(), generators.end());
  for (const auto& g : generators) {
    if (g.size() != n) throw MalformedInput("generators have mixed dimensions");
    if (!set.contains(negate(g))) {
      throw ParameterError("generator set is not symmetric (closed under negation)");
    }
  }
  if (!spans_integer_lattice(generators, n)) {
    throw ParameterError("generators do not generate Z^" + std::to_string(n));
  }
}

long WordMetricBall::distance(const LatticePoint& g) const {
  const auto it = distance_.find(g);
  return it == distance_.end() ? -1 : it->second;
}

long WordMetricBall::distance(const LatticePoint& g, const LatticePoint& h) const {
  if (g.size() != h.size()) throw MalformedInput("lattice points have mixed dimensions");
  LatticePoint diff(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) diff[i] = h[i] - g[i];
  return distance(diff);
}

WordMetricBall cayley_ball(const std::vector<LatticePoint>& generators, long radius,
                           std::size_t budget) {
  check_generating_set(generators);
  if (radius < 0) throw ParameterError("radius must be nonnegative");
  WordMetricBall ball;
  ball.generators_ = generators;
  ball.dimension_ = generators.front().size();
  ball.radius_ = radius;

  std::vector<LatticePoint> frontier{LatticePoint(ball.dimension_, 0)};
  ball.distance_[frontier.front()] = 0;
  for (long layer = 1; layer <= radius && !frontier.empty(); ++layer) {
    std::vector<LatticePoint> next;
    for (const auto& v : frontier) {
      for (const auto& g : generators) {
        LatticePoint w = add(v, g);
        if (ball.distance_.contains(w)) continue;
        if (ball.distance_.size() >= budget) {
          throw CapacityExceeded("word-metric ball exceeds the BFS budget of " +
                                 std::to_string(budget) + " elements");
        }
        ball.distance_.emplace(w, layer);
        next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  return ball;
}

StableNormEstimate stable_norm_estimate(const std::vector<LatticePoint>& generators,
                                        const LatticePoint& g, long k_max,
                                        std::size_t budget) {
  check_generating_set(generators);
  const std::size_t n = generators.front().size();
  if (g.size() != n) throw MalformedInput("element dimension does not match generators");
  if (k_max < 1) throw ParameterError("k_max must be at least 1");
  if (std::all_of(g.begin(), g.end(), [](std::int64_t x) { return x == 0; })) {
    throw ParameterError("the identity has stable norm 0; choose a nontrivial element");
  }

  std::map<LatticePoint, long> wanted;  // k g -> k
  for (long k = 1; k <= k_max; ++k) {
    LatticePoint kg(n);
    for (std::size_t i = 0; i < n; ++i) kg[i] = k * g[i];
    wanted.emplace(std::move(kg), k);
  }

  StableNormEstimate est;
  est.g = g;
  est.f.assign(static_cast<std::size_t>(k_max), -1);
  std::size_t found = 0;

  std::set<LatticePoint> seen;
  std::vector<LatticePoint> frontier{LatticePoint(n, 0)};
  seen.insert(frontier.front());
  for (long layer = 1; found < wanted.size(); ++layer) {
    std::vector<LatticePoint> next;
    for (const auto& v : frontier) {
      for (const auto& s : generators) {
        LatticePoint w = add(v, s);
        if (!seen.insert(w).second) continue;
        if (seen.size() > budget) {
          throw CapacityExceeded("stable-norm BFS exceeded its budget of " +
                                 std::to_string(budget) + " elements");
        }
        if (const auto it = wanted.find(w); it != wanted.end()) {
          est.f[static_cast<std::size_t>(it->second - 1)] = layer;
          ++found;
        }
        next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }

  const double km = static_cast<double>(k_max);
  est.upper = static_cast<double>(est.f.back()) / km;
  est.estimate = est.upper;
  est.lower = est.upper;
  for (long k = 1; k <= k_max; ++k) {
    const double fk = static_cast<double>(est.f[static_cast<std::size_t>(k - 1)]);
    est.lower = std::min(est.lower, fk / static_cast<double>(k));
    est.two_c = std::max(est.two_c, fk - static_cast<double>(k) * est.estimate);
  }
  for (long i = 1; i <= k_max; ++i) {
    for (long j = 1; i + j <= k_max; ++j) {
      if (est.f[static_cast<std::size_t>(i + j - 1)] >
          est.f[static_cast<std::size_t>(i - 1)] + est.f[static_cast<std::size_t>(j - 1)]) {
        est.subadditive = false;
      }
    }
  }
  return est;
}

}  // namespace metrik
