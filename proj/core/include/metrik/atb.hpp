#pragma once

#include <cstddef>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "metrik/graph.hpp"
#include "metrik/metric_space.hpp"

namespace metrik {

/// (1 - cos e) sin e / (2 (1 + sin e)) for e in (0, pi/2).
double compute_beta(double epsilon);

/// A set of points whose pairwise comparison angles at `center` are all at
/// least epsilon (within tolerance).
struct AngleSeparationWitness {
  PointIndex center = 0;
  std::vector<PointIndex> points;
  bool exact = false;

  std::size_t cardinality() const noexcept { return points.size(); }

  /// Empirical ATB(epsilon) with constant L over the supplied candidates.
  bool satisfies_atb(std::size_t L) const noexcept { return points.size() < L; }
};

/// Maximum angle-separated subset of `candidates` seen from p. When `radius`
/// is given, candidates outside the closed ball B_radius(p) are dropped.
/// Exact clique search up to `exact_cap` candidates, greedy beyond.
AngleSeparationWitness max_angle_separated(const FiniteMetricSpace& space, PointIndex p,
                                           double epsilon,
                                           std::span<const PointIndex> candidates,
                                           std::optional<double> radius = std::nullopt,
                                           std::size_t exact_cap = 30);

struct AtbStarResult {
  bool pass = false;
  /// Positions (i, j) into the target list: y_i is close to geodesic gamma_j.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  double distance = 0.0;   // min over gamma_j of d(y_i, .) for the witness
  double threshold = 0.0;  // beta(epsilon) d(p, y_i) for the witness
};

/// Geodesic variant of the angle test: passes iff some target y_i lies within
/// beta(epsilon) d(p, y_i) of the chosen geodesic from p to another target
/// y_j. A failure means the targets are mutually geodesically separated.
AtbStarResult atb_star_check(const GeodesicSet& geodesics, VertexId p, double epsilon,
                             std::span<const VertexId> targets);

struct CaLemmaFuzzReport {
  int dimension = 2;
  double epsilon = 0.0;
  double beta = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t violations = 0;
  double max_angle = 0.0;
};

/// Random Euclidean configurations p, y, x' in [p, y] and x with
/// |x - x'| <= beta(epsilon) |p - x| (rejection sampling, half of the trials
/// placed on the boundary of that region); counts samples whose comparison
/// angle at p between x and y is not below epsilon.
CaLemmaFuzzReport calemma_fuzz(int dimension, double epsilon, std::size_t trials,
                               std::uint64_t seed);

struct LrbEstimate {
  VertexId center = 0;
  double horizon = 0.0;
  double K = 1.0;
  std::size_t pairs = 0;
  std::size_t samples = 0;
  /// Start and two ends of the pair realising K, if K > 1.
  std::optional<std::array<VertexId, 3>> worst;
};

/// Smallest K >= 1 with d(g1(t L1), g2(t L2)) <= K t d(g1(L1), g2(L2)) over
/// every pair of chosen geodesics that start at a common vertex and stay in
/// the closed ball of radius `horizon` around p. t runs over a uniform grid of
/// `t_samples` points plus every vertex breakpoint of either geodesic.
LrbEstimate lrb_constant_estimate(const GeodesicSet& geodesics, VertexId p, double horizon,
                                  std::size_t t_samples = 64);

}  // namespace metrik
