#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "metrik/error.hpp"
#include "metrik/spaces.hpp"

namespace metrik {

std::vector<double> broom_parameters(BroomSequence sequence, std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = sequence == BroomSequence::kDyadic
               ? std::ldexp(1.0, -static_cast<int>(i))
               : 1.0 / static_cast<double>(i + 1);
  }
  return t;
}

BroomTree broom_tree(std::vector<double> t, double tolerance) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0 && t[i] <= 1.0)) throw ParameterError("broom parameters must lie in (0, 1]");
    if (i > 0 && !(t[i] < t[i - 1])) {
      throw ParameterError("broom parameters must be strictly decreasing");
    }
  }
  const std::size_t n = t.size();
  BroomTree b;
  b.root = 0;
  std::vector<std::string> labels{"r"};
  // Each point: branch index (0 for the root), position on the spine, height.
  struct Site {
    std::size_t branch;
    double pos;
    double height;
    bool tip;
  };
  std::vector<Site> sites{{0, 0.0, 0.0, false}};
  for (std::size_t i = 0; i < n; ++i) {
    b.branch_points.push_back(sites.size());
    labels.push_back("b" + std::to_string(i + 1));
    sites.push_back({i + 1, t[i], 0.0, false});
    b.tips.push_back(sites.size());
    labels.push_back("y" + std::to_string(i + 1));
    sites.push_back({i + 1, t[i], t[i], true});
  }

  auto dist = [&](std::size_t u, std::size_t v) {
    const Site& p = sites[u];
    const Site& q = sites[v];
    if (p.tip && q.tip) return 2.0 * std::max(p.pos, q.pos);
    if (p.branch == q.branch) return std::abs(p.height - q.height);
    return p.height + std::abs(p.pos - q.pos) + q.height;
  };
  b.space = FiniteMetricSpace::from_function(sites.size(), dist, labels, tolerance);

  b.graph = WeightedGraph(sites.size(), labels);
  VertexId prev = b.root;
  double prev_pos = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    b.graph.add_edge(prev, b.branch_points[i], t[i] - prev_pos);
    b.graph.add_edge(b.branch_points[i], b.tips[i], t[i]);
    prev = b.branch_points[i];
    prev_pos = t[i];
  }
  b.t = std::move(t);
  return b;
}

BroomTree broom_tree(BroomSequence sequence, std::size_t n, double tolerance) {
  return broom_tree(broom_parameters(sequence, n), tolerance);
}

double heisenberg_axis_distance(double s, double t) {
  return 2.0 * std::sqrt(std::numbers::pi * std::abs(s - t));
}

std::vector<double> heisenberg_axis_parameters(std::size_t steps, double lo, double hi) {
  if (steps < 1) throw ParameterError("need at least one step");
  if (!(hi > lo)) throw ParameterError("axis span must satisfy lo < hi");
  std::vector<double> params(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    params[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
  }
  return params;
}

FiniteMetricSpace heisenberg_axis(std::size_t steps, double lo, double hi) {
  const std::vector<double> params = heisenberg_axis_parameters(steps, lo, hi);
  std::vector<std::string> labels;
  labels.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) labels.push_back("z" + std::to_string(i));
  return FiniteMetricSpace::from_function(
      params.size(),
      [&](std::size_t i, std::size_t j) { return heisenberg_axis_distance(params[i], params[j]); },
      std::move(labels));
}

DiscreteCurve heisenberg_axis_curve(std::size_t steps, double lo, double hi) {
  return DiscreteCurve::on_snowflaked_line(heisenberg_axis_parameters(steps, lo, hi),
                                           2.0 * std::sqrt(std::numbers::pi), 0.5);
}

FiniteMetricSpace normed_sample(std::size_t dimension, const Norm& norm, std::size_t count,
                                std::uint64_t seed, std::vector<std::vector<double>>* coords) {
  if (count < 1) throw ParameterError("sample count must be at least 1");
  if (dimension < 1) throw ParameterError("dimension must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> pts(count, std::vector<double>(dimension));
  for (auto& p : pts) {
    for (double& x : p) x = unit(rng);
  }
  FiniteMetricSpace space = FiniteMetricSpace::from_function(
      count, [&](std::size_t i, std::size_t j) { return norm.distance(pts[i], pts[j]); });
  if (coords) *coords = std::move(pts);
  return space;
}

}  // namespace metrik
