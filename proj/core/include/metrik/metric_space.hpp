#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace metrik {

using PointIndex = std::size_t;

inline constexpr double kDefaultTolerance = 1e-9;

/// A finite point set with a dense symmetric distance matrix.
///
/// Construction rejects non-square input and entries that are NaN or
/// negative. Pairs that disagree by more than the tolerance are rejected too. The stored
/// matrix is exactly symmetric (the upper triangle wins). Zero off-diagonal
/// entries and nonzero diagonal entries are accepted so that
/// validate_metric() can report them.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  FiniteMetricSpace(std::vector<std::string> labels,
                    const std::vector<std::vector<double>>& rows,
                    double tolerance = kDefaultTolerance);

  /// Row-major n*n matrix. Empty labels default to "0", "1", ...
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> flat,
                    std::size_t n, double tolerance = kDefaultTolerance);

  template <typename DistanceFn>
  static FiniteMetricSpace from_function(std::size_t n, DistanceFn&& d,
                                         std::vector<std::string> labels = {},
                                         double tolerance = kDefaultTolerance) {
    std::vector<double> flat(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = d(i, j);
        flat[i * n + j] = v;
        flat[j * n + i] = v;
      }
    }
    return FiniteMetricSpace(std::move(labels), std::move(flat), n, tolerance);
  }

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }
  double tolerance() const noexcept { return tolerance_; }

  double operator()(PointIndex i, PointIndex j) const noexcept {
    return dist_[i * n_ + j];
  }
  double at(PointIndex i, PointIndex j) const;

  std::span<const double> row(PointIndex i) const noexcept {
    return {dist_.data() + i * n_, n_};
  }
  std::span<const double> flat() const noexcept { return dist_; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(PointIndex i) const { return labels_.at(i); }
  std::optional<PointIndex> find(std::string_view label) const;

  /// Sub-space on the given points, in the given order.
  FiniteMetricSpace induced(std::span<const PointIndex> points) const;

  FiniteMetricSpace with_tolerance(double tolerance) const;

  /// Throws MalformedInput if any index is out of range.
  void check_indices(std::span<const PointIndex> points) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> dist_;
  double tolerance_ = kDefaultTolerance;
};

enum class AxiomKind { kNonzeroDiagonal, kAsymmetric, kTriangle, kNotSeparated };

std::string_view to_string(AxiomKind kind);

/// One failing axiom instance. For kTriangle, d(i,k) > d(i,j) + d(j,k) + tol
/// with j the intermediate point; pair violations leave k unused (== j).
struct AxiomViolation {
  AxiomKind kind;
  PointIndex i = 0;
  PointIndex j = 0;
  PointIndex k = 0;
  double excess = 0.0;
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;
  bool truncated = false;

  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_metric(const FiniteMetricSpace& space,
                                 std::size_t max_violations = 10000);

/// Euclidean comparison angle, in [0, pi].
struct Angle {
  double radians = 0.0;

  friend auto operator<=>(const Angle&, const Angle&) = default;
};

/// Angle at the vertex between legs of length `leg_a` and `leg_b`, opposite
/// side `opposite`. The cosine is clamped to [-1, 1]. Throws DegenerateInput
/// when a leg is not positive.
Angle comparison_angle_from_sides(double leg_a, double leg_b, double opposite);

/// Comparison angle at z of the triangle (x, z, y).
Angle comparison_angle(const FiniteMetricSpace& space, PointIndex x,
                       PointIndex z, PointIndex y);

/// d -> d^alpha for alpha in (0, 1).
FiniteMetricSpace snowflake_transform(const FiniteMetricSpace& space,
                                      double alpha);

struct SeparatedSubset {
  std::vector<PointIndex> points;
  bool exact = false;
};

/// Largest subset with pairwise distances >= r (within tolerance). Exact
/// branch-and-bound when at most `exact_cap` candidates, otherwise
/// farthest-point-first greedy (exact == false marks a lower bound).
SeparatedSubset max_separated_subset(
    const FiniteMetricSpace& space, double r,
    std::optional<std::span<const PointIndex>> within = std::nullopt,
    std::size_t exact_cap = 30);

struct BallCover {
  PointIndex center = 0;
  double radius = 0.0;
  std::size_t ball_size = 0;
  std::vector<PointIndex> cover_centers;
};

struct DoublingEstimate {
  std::size_t constant = 0;
  std::vector<BallCover> scales;
};

/// Greedy covering of each closed ball B_R(x) by closed balls of radius R/2
/// centred inside B_R(x). The first centre is x itself, then repeatedly the
/// uncovered point farthest from the chosen centres (lowest index on ties).
DoublingEstimate doubling_estimate(const FiniteMetricSpace& space,
                                   std::span<const PointIndex> centers,
                                   std::span<const double> radii);

}  // namespace metrik
