#include "metrik/sra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "clique.hpp"
#include "metrik/error.hpp"

namespace metrik {
namespace {

// Inequality only; callers guarantee distinct indices.
bool triple_passes(const FiniteMetricSpace& space, PointIndex x, PointIndex z, PointIndex y,
                   double a) {
  const double xz = space(x, z);
  const double zy = space(z, y);
  return space(x, y) <= std::max(xz + a * zy, a * xz + zy) + space.tolerance();
}

bool unordered_triple_passes(const FiniteMetricSpace& space, PointIndex p, PointIndex q,
                             PointIndex r, double a) {
  return triple_passes(space, p, q, r, a) && triple_passes(space, q, p, r, a) &&
         triple_passes(space, p, r, q, a);
}

std::vector<PointIndex> all_points(const FiniteMetricSpace& space) {
  std::vector<PointIndex> pts(space.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = i;
  return pts;
}

std::vector<PointIndex> greedy_sra(const FiniteMetricSpace& space,
                                   std::span<const PointIndex> pool, double a) {
  std::vector<PointIndex> chosen;
  for (const PointIndex cand : pool) {
    bool ok = true;
    for (std::size_t u = 0; u < chosen.size() && ok; ++u) {
      for (std::size_t w = u + 1; w < chosen.size() && ok; ++w) {
        ok = unordered_triple_passes(space, cand, chosen[u], chosen[w], a);
      }
    }
    if (ok) chosen.push_back(cand);
  }
  return chosen;
}

}  // namespace

SraParameter::SraParameter(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("SRA exponent alpha must lie in (0, 1)");
  }
}

double SraParameter::angle_bound() const { return std::numbers::pi - std::acos(alpha_); }

TripleCheck check_triple_sra(const FiniteMetricSpace& space, PointIndex x, PointIndex z,
                             PointIndex y, SraParameter alpha) {
  const PointIndex pts[] = {x, z, y};
  space.check_indices(pts);
  if (x == y || x == z || y == z) {
    throw DegenerateInput("SRA triple must consist of three distinct points");
  }
  const double a = alpha.alpha();
  TripleCheck check{x, z, y, space(x, y), 0.0, true};
  check.rhs = std::max(space(x, z) + a * space(z, y), a * space(x, z) + space(z, y));
  check.pass = check.lhs <= check.rhs + space.tolerance();
  return check;
}

SraReport verify_sra_set(const FiniteMetricSpace& space, std::span<const PointIndex> subset,
                         SraParameter alpha) {
  space.check_indices(subset);
  SraReport report;
  const std::size_t m = subset.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        const PointIndex a = subset[i];
        const PointIndex b = subset[j];
        const PointIndex c = subset[k];
        // Middle vertex b first, then a, then c.
        const TripleCheck checks[] = {check_triple_sra(space, a, b, c, alpha),
                                      check_triple_sra(space, b, a, c, alpha),
                                      check_triple_sra(space, a, c, b, alpha)};
        for (const TripleCheck& t : checks) {
          ++report.checked_triples;
          if (!t.pass) {
            report.pass = false;
            report.witness = t;
            return report;
          }
        }
      }
    }
  }
  return report;
}

SraReport verify_sra_set(const FiniteMetricSpace& space, SraParameter alpha) {
  const auto pts = all_points(space);
  return verify_sra_set(space, pts, alpha);
}

SraSubset max_sra_subset(const FiniteMetricSpace& space, SraParameter alpha,
                         SearchMode mode, std::size_t exact_cap) {
  const auto pts = all_points(space);
  return max_sra_subset(space, pts, alpha, mode, exact_cap);
}

SraSubset max_sra_subset(const FiniteMetricSpace& space, std::span<const PointIndex> pool_in,
                         SraParameter alpha, SearchMode mode, std::size_t exact_cap) {
  space.check_indices(pool_in);
  std::vector<PointIndex> pool(pool_in.begin(), pool_in.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  const double a = alpha.alpha();

  if (mode == SearchMode::kGreedy) {
    return {greedy_sra(space, pool, a), pool.size() < 3};
  }

  const std::size_t cap = std::min(exact_cap, detail::kMaxMaskVertices);
  if (pool.size() > cap) {
    throw CapacityExceeded("exact SRA search is limited to " + std::to_string(cap) +
                           " points (got " + std::to_string(pool.size()) +
                           "); use greedy mode");
  }

  const std::size_t m = pool.size();
  std::vector<detail::Mask> completions(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        if (unordered_triple_passes(space, pool[i], pool[j], pool[k], a)) continue;
        completions[i * m + j] |= detail::bit(k);
        completions[j * m + i] |= detail::bit(k);
        completions[i * m + k] |= detail::bit(j);
        completions[k * m + i] |= detail::bit(j);
        completions[j * m + k] |= detail::bit(i);
        completions[k * m + j] |= detail::bit(i);
      }
    }
  }

  detail::Mask seed = 0;
  for (const PointIndex p : greedy_sra(space, pool, a)) {
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(pool.begin(), pool.end(), p) - pool.begin());
    seed |= detail::bit(pos);
  }

  SraSubset result;
  result.optimal = true;
  for (const std::size_t pos : detail::lex_first_maximum_independent_set(m, completions, seed)) {
    result.points.push_back(pool[pos]);
  }
  return result;
}

AngleBoundReport sra_angle_bound(const FiniteMetricSpace& space,
                                 std::span<const PointIndex> subset, SraParameter alpha) {
  space.check_indices(subset);
  AngleBoundReport report;
  report.bound = alpha.angle_bound();
  const std::size_t m = subset.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        const PointIndex a = subset[i];
        const PointIndex b = subset[j];
        const PointIndex c = subset[k];
        if (a == b || b == c || a == c) {
          throw DegenerateInput("angle bound needs distinct points");
        }
        const PointIndex triples[3][3] = {{a, b, c}, {b, a, c}, {a, c, b}};
        for (const auto& t : triples) {
          const double ang = comparison_angle(space, t[0], t[1], t[2]).radians;
          if (!report.argmax || ang > report.max_angle) {
            report.max_angle = ang;
            report.argmax = TripleCheck{t[0], t[1], t[2], 0.0, 0.0, true};
          }
        }
      }
    }
  }
  report.margin = report.bound - report.max_angle;
  report.pass = report.max_angle <= report.bound + space.tolerance();
  return report;
}

}  // namespace metrik
