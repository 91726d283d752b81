#include "metrik/atb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "clique.hpp"
#include "metrik/error.hpp"

namespace metrik {
namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < std::numbers::pi / 2)) {
    throw ParameterError("epsilon must lie in (0, pi/2)");
  }
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (const double x : v) s += x * x;
  return std::sqrt(s);
}

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Vertex path with cumulative arc lengths.
struct MeasuredPath {
  std::vector<VertexId> vertices;
  std::vector<double> arc;  // arc[k] = length up to vertices[k]

  double length() const { return arc.back(); }
};

MeasuredPath measure(const GeodesicSet& geo, std::vector<VertexId> vertices) {
  MeasuredPath mp{std::move(vertices), {}};
  mp.arc.resize(mp.vertices.size(), 0.0);
  for (std::size_t k = 1; k < mp.vertices.size(); ++k) {
    mp.arc[k] = mp.arc[k - 1] + geo.graph().edge_length(mp.vertices[k - 1], mp.vertices[k]);
  }
  return mp;
}

GraphPoint locate(const MeasuredPath& mp, double s) {
  if (s <= 0.0 || mp.vertices.size() == 1) {
    return {mp.vertices.front(), mp.vertices.front(), 0.0, 0.0};
  }
  if (s >= mp.length()) return {mp.vertices.back(), mp.vertices.back(), 0.0, 0.0};
  const auto it = std::upper_bound(mp.arc.begin(), mp.arc.end(), s);
  const auto k = static_cast<std::size_t>(it - mp.arc.begin());  // arc[k-1] <= s < arc[k]
  const double len = mp.arc[k] - mp.arc[k - 1];
  return {mp.vertices[k - 1], mp.vertices[k], s - mp.arc[k - 1], len};
}

}  // namespace

double compute_beta(double epsilon) {
  check_epsilon(epsilon);
  const double s = std::sin(epsilon);
  return (1.0 - std::cos(epsilon)) * s / (2.0 * (1.0 + s));
}

AngleSeparationWitness max_angle_separated(const FiniteMetricSpace& space, PointIndex p,
                                           double epsilon,
                                           std::span<const PointIndex> candidates,
                                           std::optional<double> radius,
                                           std::size_t exact_cap) {
  check_epsilon(epsilon);
  const PointIndex center[] = {p};
  space.check_indices(center);
  space.check_indices(candidates);
  const double tol = space.tolerance();

  std::vector<PointIndex> pool;
  for (const PointIndex c : candidates) {
    if (c == p) throw ParameterError("the centre point may not be a candidate");
    if (radius && space(p, c) > *radius + tol) continue;
    pool.push_back(c);
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  const std::size_t m = pool.size();
  auto separated = [&](std::size_t a, std::size_t b) {
    return comparison_angle(space, pool[a], p, pool[b]).radians >= epsilon - tol;
  };

  AngleSeparationWitness witness;
  witness.center = p;
  if (m <= std::min(exact_cap, detail::kMaxMaskVertices)) {
    std::vector<detail::Mask> adj(m, 0);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        if (separated(a, b)) {
          adj[a] |= detail::bit(b);
          adj[b] |= detail::bit(a);
        }
      }
    }
    for (const std::size_t a : detail::lex_first_maximum_clique(adj)) {
      witness.points.push_back(pool[a]);
    }
    witness.exact = true;
    return witness;
  }

  std::vector<std::size_t> chosen;
  for (std::size_t a = 0; a < m; ++a) {
    if (std::all_of(chosen.begin(), chosen.end(),
                    [&](std::size_t b) { return separated(a, b); })) {
      chosen.push_back(a);
    }
  }
  for (const std::size_t a : chosen) witness.points.push_back(pool[a]);
  witness.exact = false;
  return witness;
}

AtbStarResult atb_star_check(const GeodesicSet& geodesics, VertexId p, double epsilon,
                             std::span<const VertexId> targets) {
  const double beta = compute_beta(epsilon);
  const std::size_t n = geodesics.graph().vertex_count();
  if (p >= n) throw MalformedInput("centre vertex out of range");
  std::vector<std::vector<VertexId>> paths;
  paths.reserve(targets.size());
  for (const VertexId y : targets) {
    if (y >= n) throw MalformedInput("target vertex out of range");
    if (y == p) throw ParameterError("targets must exclude the centre point");
    paths.push_back(geodesics.path(p, y));
  }
  const double tol = geodesics.metric().tolerance();

  AtbStarResult result;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double threshold = beta * geodesics.distance(p, targets[i]);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if (i == j) continue;
      const double d = geodesics.distance_to_path(targets[i], paths[j]);
      if (d <= threshold + tol) {
        result.pass = true;
        result.witness = std::make_pair(i, j);
        result.distance = d;
        result.threshold = threshold;
        return result;
      }
    }
  }
  return result;
}

CaLemmaFuzzReport calemma_fuzz(int dimension, double epsilon, std::size_t trials,
                               std::uint64_t seed) {
  if (dimension < 1) throw ParameterError("dimension must be positive");
  if (trials < 1) throw ParameterError("at least one trial is required");
  CaLemmaFuzzReport report;
  report.dimension = dimension;
  report.epsilon = epsilon;
  report.beta = compute_beta(epsilon);
  report.trials = trials;
  report.seed = seed;

  const double beta = report.beta;
  const auto dim = static_cast<std::size_t>(dimension);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> cube(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> p(dim), y(dim), xp(dim), x(dim), dir(dim), w(dim);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    do {
      for (std::size_t i = 0; i < dim; ++i) {
        p[i] = cube(rng);
        y[i] = cube(rng);
      }
    } while (dist2(p, y) < 1e-6);
    double u = 0.0;
    while (u == 0.0) u = unit(rng);
    for (std::size_t i = 0; i < dim; ++i) {
      xp[i] = p[i] + u * (y[i] - p[i]);
      w[i] = xp[i] - p[i];
    }
    const double wn = norm2(w);

    const bool boundary = trial % 2 == 0;
    while (true) {
      double dn = 0.0;
      while (dn < 1e-12) {
        for (std::size_t i = 0; i < dim; ++i) dir[i] = gauss(rng);
        dn = norm2(dir);
      }
      double wu = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        dir[i] /= dn;
        wu += w[i] * dir[i];
      }
      double rho = 0.0;
      if (boundary) {
        // rho = beta |w + rho dir|, positive root.
        const double b2 = beta * beta;
        rho = (b2 * wu + std::sqrt(b2 * b2 * wu * wu + (1.0 - b2) * b2 * wn * wn)) /
              (1.0 - b2);
      } else {
        const double rho_cap = beta * wn / (1.0 - beta);
        rho = rho_cap * std::pow(unit(rng), 1.0 / static_cast<double>(dim));
      }
      for (std::size_t i = 0; i < dim; ++i) x[i] = xp[i] + rho * dir[i];
      if (boundary || dist2(x, xp) <= beta * dist2(x, p)) break;
    }

    const double angle =
        comparison_angle_from_sides(dist2(x, p), dist2(y, p), dist2(x, y)).radians;
    report.max_angle = std::max(report.max_angle, angle);
    if (!(angle < epsilon)) ++report.violations;
  }
  return report;
}

LrbEstimate lrb_constant_estimate(const GeodesicSet& geodesics, VertexId p, double horizon,
                                  std::size_t t_samples) {
  const WeightedGraph& g = geodesics.graph();
  const std::size_t n = g.vertex_count();
  if (p >= n) throw MalformedInput("centre vertex out of range");
  if (!(horizon > 0.0)) throw ParameterError("horizon must be positive");
  const double tol = geodesics.metric().tolerance();

  // Edge e lies in the closed ball iff its farthest interior point does.
  auto edge_inside = [&](VertexId a, VertexId b) {
    const double len = g.edge_length(a, b);
    return (geodesics.distance(p, a) + geodesics.distance(p, b) + len) / 2.0 <= horizon + tol;
  };

  LrbEstimate est;
  est.center = p;
  est.horizon = horizon;

  std::vector<double> grid;
  for (std::size_t k = 1; k <= t_samples; ++k) {
    grid.push_back(static_cast<double>(k) / static_cast<double>(t_samples));
  }

  for (VertexId q = 0; q < n; ++q) {
    if (geodesics.distance(p, q) > horizon + tol) continue;
    std::vector<MeasuredPath> from_q(n);
    std::vector<bool> usable(n, false);
    for (VertexId a = 0; a < n; ++a) {
      if (a == q) continue;
      MeasuredPath mp = measure(geodesics, geodesics.path(q, a));
      bool inside = true;
      for (std::size_t k = 1; k < mp.vertices.size() && inside; ++k) {
        inside = edge_inside(mp.vertices[k - 1], mp.vertices[k]);
      }
      if (!inside) continue;
      usable[a] = true;
      from_q[a] = std::move(mp);
    }
    for (VertexId a = 0; a < n; ++a) {
      if (!usable[a]) continue;
      for (VertexId b = a + 1; b < n; ++b) {
        if (!usable[b]) continue;
        const MeasuredPath& g1 = from_q[a];
        const MeasuredPath& g2 = from_q[b];
        const double ends = geodesics.distance(a, b);
        ++est.pairs;
        std::vector<double> ts = grid;
        for (const double s : g1.arc) if (s > 0.0) ts.push_back(s / g1.length());
        for (const double s : g2.arc) if (s > 0.0) ts.push_back(s / g2.length());
        for (const double t : ts) {
          ++est.samples;
          const double gap = geodesics.distance(locate(g1, t * g1.length()),
                                                locate(g2, t * g2.length()));
          const double ratio = gap / (t * ends);
          if (ratio > est.K + tol) {
            est.K = ratio;
            est.worst = std::array<VertexId, 3>{q, a, b};
          }
        }
      }
    }
  }
  if (est.pairs == 0) {
    throw ParameterError("no geodesic pairs inside the horizon");
  }
  return est;
}

}  // namespace metrik
