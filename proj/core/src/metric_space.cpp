#include "metrik/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "clique.hpp"
#include "metrik/error.hpp"

namespace metrik {
namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw MalformedInput("distance matrix is not square: row " + std::to_string(i) +
                           " has " + std::to_string(rows[i].size()) +
                           " entries, expected " + std::to_string(n));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return flat;
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     const std::vector<std::vector<double>>& rows,
                                     double tolerance)
    : FiniteMetricSpace(std::move(labels), flatten(rows), rows.size(), tolerance) {}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     std::vector<double> flat, std::size_t n,
                                     double tolerance)
    : n_(n), labels_(std::move(labels)), dist_(std::move(flat)), tolerance_(tolerance) {
  if (!(tolerance_ >= 0.0) || !std::isfinite(tolerance_)) {
    throw ParameterError("tolerance must be a finite nonnegative number");
  }
  if (dist_.size() != n_ * n_) {
    throw MalformedInput("distance matrix is not square");
  }
  if (labels_.empty()) {
    labels_ = default_labels(n_);
  } else if (labels_.size() != n_) {
    throw MalformedInput("label count " + std::to_string(labels_.size()) +
                         " does not match matrix size " + std::to_string(n_));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const double v = dist_[i * n_ + j];
      if (std::isnan(v) || v < 0.0 || std::isinf(v)) {
        throw MalformedInput("invalid distance at (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
      }
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double upper = dist_[i * n_ + j];
      const double lower = dist_[j * n_ + i];
      if (std::abs(upper - lower) > tolerance_) {
        throw MalformedInput("asymmetric distances at (" + std::to_string(i) +
                             ", " + std::to_string(j) + ")");
      }
      dist_[j * n_ + i] = upper;
    }
  }
}

double FiniteMetricSpace::at(PointIndex i, PointIndex j) const {
  if (i >= n_ || j >= n_) {
    throw MalformedInput("point index out of range");
  }
  return (*this)(i, j);
}

std::optional<PointIndex> FiniteMetricSpace::find(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<PointIndex>(it - labels_.begin());
}

FiniteMetricSpace FiniteMetricSpace::induced(std::span<const PointIndex> points) const {
  check_indices(points);
  const std::size_t m = points.size();
  std::vector<double> flat(m * m);
  std::vector<std::string> labels;
  labels.reserve(m);
  for (std::size_t a = 0; a < m; ++a) {
    labels.push_back(labels_[points[a]]);
    for (std::size_t b = 0; b < m; ++b) flat[a * m + b] = (*this)(points[a], points[b]);
  }
  return FiniteMetricSpace(std::move(labels), std::move(flat), m, tolerance_);
}

FiniteMetricSpace FiniteMetricSpace::with_tolerance(double tolerance) const {
  return FiniteMetricSpace(labels_, dist_, n_, tolerance);
}

void FiniteMetricSpace::check_indices(std::span<const PointIndex> points) const {
  for (const PointIndex p : points) {
    if (p >= n_) {
      throw MalformedInput("point index " + std::to_string(p) +
                           " out of range for a space of " + std::to_string(n_) +
                           " points");
    }
  }
}

std::string_view to_string(AxiomKind kind) {
  switch (kind) {
    case AxiomKind::kNonzeroDiagonal: return "nonzero-diagonal";
    case AxiomKind::kAsymmetric: return "asymmetric";
    case AxiomKind::kTriangle: return "triangle-inequality";
    case AxiomKind::kNotSeparated: return "identity-of-indiscernibles";
  }
  return "unknown";
}

ValidationReport validate_metric(const FiniteMetricSpace& space,
                                 std::size_t max_violations) {
  ValidationReport report;
  const std::size_t n = space.size();
  const double tol = space.tolerance();
  auto push = [&](AxiomViolation v) {
    if (report.violations.size() >= max_violations) {
      report.truncated = true;
      return false;
    }
    report.violations.push_back(v);
    return true;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (space(i, i) != 0.0) {
      if (!push({AxiomKind::kNonzeroDiagonal, i, i, i, space(i, i)})) return report;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (space(i, j) != space(j, i)) {
        if (!push({AxiomKind::kAsymmetric, i, j, j, std::abs(space(i, j) - space(j, i))}))
          return report;
      }
      if (space(i, j) <= tol) {
        if (!push({AxiomKind::kNotSeparated, i, j, j, tol - space(i, j)})) return report;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double direct = space(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double via = space(i, j) + space(j, k);
        if (direct > via + tol) {
          if (!push({AxiomKind::kTriangle, i, j, k, direct - via})) return report;
        }
      }
    }
  }
  return report;
}

Angle comparison_angle_from_sides(double leg_a, double leg_b, double opposite) {
  if (!(leg_a > 0.0) || !(leg_b > 0.0)) {
    throw DegenerateInput("comparison angle needs positive leg lengths");
  }
  double c = (leg_a * leg_a + leg_b * leg_b - opposite * opposite) / (2.0 * leg_a * leg_b);
  c = std::clamp(c, -1.0, 1.0);
  return Angle{std::acos(c)};
}

Angle comparison_angle(const FiniteMetricSpace& space, PointIndex x, PointIndex z,
                       PointIndex y) {
  const PointIndex pts[] = {x, z, y};
  space.check_indices(pts);
  if (x == z || y == z) {
    throw DegenerateInput("comparison angle vertex coincides with an endpoint");
  }
  return comparison_angle_from_sides(space(x, z), space(y, z), space(x, y));
}

FiniteMetricSpace snowflake_transform(const FiniteMetricSpace& space, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("snowflake exponent must lie in (0, 1)");
  }
  std::vector<double> flat(space.flat().begin(), space.flat().end());
  for (double& v : flat) v = v == 0.0 ? 0.0 : std::pow(v, alpha);
  return FiniteMetricSpace(space.labels(), std::move(flat), space.size(),
                           space.tolerance());
}

SeparatedSubset max_separated_subset(const FiniteMetricSpace& space, double r,
                                     std::optional<std::span<const PointIndex>> within,
                                     std::size_t exact_cap) {
  if (!(r > 0.0)) throw ParameterError("separation radius must be positive");
  std::vector<PointIndex> pool;
  if (within) {
    space.check_indices(*within);
    pool.assign(within->begin(), within->end());
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  } else {
    pool.resize(space.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  }
  const double threshold = r - space.tolerance();
  SeparatedSubset result;
  if (pool.empty()) {
    result.exact = true;
    return result;
  }

  if (pool.size() <= std::min(exact_cap, detail::kMaxMaskVertices)) {
    std::vector<detail::Mask> adj(pool.size(), 0);
    for (std::size_t a = 0; a < pool.size(); ++a) {
      for (std::size_t b = 0; b < pool.size(); ++b) {
        if (a != b && space(pool[a], pool[b]) >= threshold) adj[a] |= detail::bit(b);
      }
    }
    for (const std::size_t a : detail::lex_first_maximum_clique(adj)) {
      result.points.push_back(pool[a]);
    }
    result.exact = true;
    return result;
  }

  // Farthest-point-first from the lowest-index point.
  std::vector<double> gap(pool.size(), std::numeric_limits<double>::infinity());
  std::vector<bool> taken(pool.size(), false);
  std::size_t next = 0;
  while (true) {
    result.points.push_back(pool[next]);
    taken[next] = true;
    for (std::size_t a = 0; a < pool.size(); ++a) {
      gap[a] = std::min(gap[a], space(pool[a], pool[next]));
    }
    std::size_t far = pool.size();
    double far_gap = -1.0;
    for (std::size_t a = 0; a < pool.size(); ++a) {
      if (!taken[a] && gap[a] > far_gap) {
        far_gap = gap[a];
        far = a;
      }
    }
    if (far == pool.size() || far_gap < threshold) break;
    next = far;
  }
  std::sort(result.points.begin(), result.points.end());
  result.exact = false;
  return result;
}

DoublingEstimate doubling_estimate(const FiniteMetricSpace& space,
                                   std::span<const PointIndex> centers,
                                   std::span<const double> radii) {
  space.check_indices(centers);
  for (const double r : radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("radii must be positive");
  }
  const double tol = space.tolerance();
  DoublingEstimate estimate;
  for (const PointIndex x : centers) {
    for (const double radius : radii) {
      std::vector<PointIndex> ball;
      for (PointIndex y = 0; y < space.size(); ++y) {
        if (space(x, y) <= radius + tol) ball.push_back(y);
      }
      BallCover cover{x, radius, ball.size(), {}};
      const double half = radius / 2.0;
      std::vector<double> gap(ball.size(), std::numeric_limits<double>::infinity());
      PointIndex next = x;
      while (true) {
        cover.cover_centers.push_back(next);
        std::size_t far = ball.size();
        double far_gap = -1.0;
        for (std::size_t a = 0; a < ball.size(); ++a) {
          gap[a] = std::min(gap[a], space(ball[a], next));
          if (gap[a] > half + tol && gap[a] > far_gap) {
            far_gap = gap[a];
            far = a;
          }
        }
        if (far == ball.size()) break;
        next = ball[far];
      }
      estimate.constant = std::max(estimate.constant, cover.cover_centers.size());
      estimate.scales.push_back(std::move(cover));
    }
  }
  return estimate;
}

}  // namespace metrik
