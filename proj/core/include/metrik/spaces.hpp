#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "metrik/curves.hpp"
#include "metrik/graph.hpp"
#include "metrik/metric_space.hpp"

namespace metrik {

// ---------------------------------------------------------------------------
// Laakso graphs.

inline constexpr int kDefaultLaaksoCap = 6;
inline constexpr int kMaxLaaksoLevel = 8;

/// G_N: six copies of G_{N-1} scaled by 1/4, glued in series-parallel: a
/// bottom copy from the root to a junction, two parallel chains of two copies
/// each, and a top copy to the far end. Edges have length 4^-N.
///
/// Vertices 0 and 1 are the root and the far end. Every vertex with two
/// outgoing edges (directed away from the root) has its "left" edge leading
/// to the lower-numbered vertex; the left chain is always built first.
struct LaaksoGraph {
  int level = 0;
  double edge_length = 1.0;
  WeightedGraph graph;
  VertexId root = 0;
  VertexId far_end = 1;
  /// Outgoing neighbours per vertex, sorted so that [0] is left and [1] right.
  std::vector<std::vector<VertexId>> outgoing;
  /// Hop distance from the root.
  std::vector<long> depth;
};

/// Throws CapacityExceeded when level > cap (cap itself at most 8).
LaaksoGraph laakso_graph(int level, int cap = kDefaultLaaksoCap);

struct LaaksoSraPoints {
  std::vector<VertexId> x;  // x_1, ..., x_n
  std::vector<VertexId> y;  // anchors y_1, ..., y_n on the leftmost geodesic
};

/// y_i sits at arc length 1/4 + ... + 1/4^i along the geodesic from the root
/// that never turns right; x_i ends the oriented path of length 4^-i from y_i
/// that never turns left. Requires 1 <= n <= level.
LaaksoSraPoints laakso_sra_points(const LaaksoGraph& graph, int n);

/// 4^-i + (4^-(i+1) + ... + 4^-k) + 4^-k, the distance between x_i and x_k
/// for 1 <= i < k (1-based indices).
double laakso_sra_distance(int i, int k);

// ---------------------------------------------------------------------------
// Broom trees.

/// Spine [0, 1] with vertical branches of height t_i at (t_i, 0), intrinsic
/// metric, realised on {root, branch points, tips}. Point order: root, then
/// branch point i and tip i for i = 1..n.
struct BroomTree {
  std::vector<double> t;
  FiniteMetricSpace space;
  WeightedGraph graph;
  PointIndex root = 0;
  std::vector<PointIndex> branch_points;
  std::vector<PointIndex> tips;
};

enum class BroomSequence { kDyadic, kHarmonic };

/// Dyadic: t_i = 2^(1-i). Harmonic: t_i = 1/i.
std::vector<double> broom_parameters(BroomSequence sequence, std::size_t n);

/// t must be strictly decreasing in (0, 1]. Distances are evaluated in
/// closed form; tip-to-tip distances are exactly 2 max(t_i, t_j).
BroomTree broom_tree(std::vector<double> t, double tolerance = kDefaultTolerance);
BroomTree broom_tree(BroomSequence sequence, std::size_t n,
                     double tolerance = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Heisenberg group z-axis: d((0,0,s), (0,0,t)) = 2 sqrt(pi |s - t|).

double heisenberg_axis_distance(double s, double t);

/// Parameters lo + (hi - lo) i / steps for i = 0..steps (steps + 1 points).
std::vector<double> heisenberg_axis_parameters(std::size_t steps, double lo = 0.0,
                                               double hi = 1.0);

FiniteMetricSpace heisenberg_axis(std::size_t steps, double lo = 0.0, double hi = 1.0);

/// Same samples as an implicit curve, for sizes where a dense matrix is too
/// large.
DiscreteCurve heisenberg_axis_curve(std::size_t steps, double lo = 0.0, double hi = 1.0);

// ---------------------------------------------------------------------------
// Word metrics on Z^n.

using LatticePoint = std::vector<std::int64_t>;

/// Breadth-first ball around the identity of Z^n for a symmetric generating
/// set.
class WordMetricBall {
 public:
  const std::vector<LatticePoint>& generators() const noexcept { return generators_; }
  std::size_t dimension() const noexcept { return dimension_; }
  long radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return distance_.size(); }

  /// Word length of g, or -1 if g lies outside the computed ball.
  long distance(const LatticePoint& g) const;
  /// Word distance between two elements, d(g, h) = |g^-1 h|.
  long distance(const LatticePoint& g, const LatticePoint& h) const;

  const std::map<LatticePoint, long>& table() const noexcept { return distance_; }

 private:
  friend WordMetricBall cayley_ball(const std::vector<LatticePoint>&, long, std::size_t);

  std::vector<LatticePoint> generators_;
  std::size_t dimension_ = 0;
  long radius_ = 0;
  std::map<LatticePoint, long> distance_;
};

inline constexpr std::size_t kDefaultBfsBudget = 5'000'000;

/// Checks symmetry (closed under negation) and that the generators span Z^n
/// over the integers, then runs BFS to the given radius. Throws
/// CapacityExceeded if more than `budget` elements would be stored.
WordMetricBall cayley_ball(const std::vector<LatticePoint>& generators, long radius,
                           std::size_t budget = kDefaultBfsBudget);

/// Throws MalformedInput / ParameterError describing the first problem.
void check_generating_set(const std::vector<LatticePoint>& generators);

struct StableNormEstimate {
  LatticePoint g;
  std::vector<long> f;  // f[k-1] = word length of k g, k = 1..k_max
  double estimate = 0.0;
  double lower = 0.0;  // min_k f(k)/k (Fekete infimum over tested k)
  double upper = 0.0;  // f(k_max)/k_max
  double two_c = 0.0;  // max_k (f(k) - k * estimate)
  bool subadditive = true;

  double bracket_width() const noexcept { return upper - lower; }
};

/// Word lengths of g, 2g, ..., k_max g by one BFS grown until all are found.
StableNormEstimate stable_norm_estimate(const std::vector<LatticePoint>& generators,
                                        const LatticePoint& g, long k_max,
                                        std::size_t budget = kDefaultBfsBudget);

// ---------------------------------------------------------------------------

/// `count` reproducible points uniform in [0, 1]^dimension with the norm's
/// metric. Returns the coordinates through `coords` when non-null.
FiniteMetricSpace normed_sample(std::size_t dimension, const Norm& norm, std::size_t count,
                                std::uint64_t seed,
                                std::vector<std::vector<double>>* coords = nullptr);

}  // namespace metrik
