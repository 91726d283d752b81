#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "metrik/error.hpp"
#include "metrik/spaces.hpp"
#include "metrik/sra.hpp"

namespace metrik {
namespace {

double eccentricity(const WeightedGraph& g, VertexId v) {
  const auto d = shortest_distances(g, v);
  return *std::max_element(d.begin(), d.end());
}

TEST(Laakso, Counts) {
  std::size_t v = 2;
  std::size_t e = 1;
  for (int level = 0; level <= 6; ++level) {
    const auto g = laakso_graph(level);
    EXPECT_EQ(g.graph.vertex_count(), v) << "level " << level;
    EXPECT_EQ(g.graph.edge_count(), e) << "level " << level;
    EXPECT_EQ(g.edge_length, std::pow(4.0, -level));
    v = 6 * v - 6;
    e *= 6;
  }
  EXPECT_EQ(laakso_graph(0).graph.edge_length(0, 1), 1.0);
}

TEST(Laakso, DiameterIsOne) {
  for (int level = 0; level <= 4; ++level) {
    const auto g = laakso_graph(level);
    double diam = 0.0;
    for (VertexId v = 0; v < g.graph.vertex_count(); ++v) {
      diam = std::max(diam, eccentricity(g.graph, v));
    }
    EXPECT_NEAR(diam, 1.0, 1e-12) << "level " << level;
  }
  for (int level = 5; level <= 6; ++level) {
    const auto g = laakso_graph(level);
    EXPECT_NEAR(eccentricity(g.graph, g.root), 1.0, 1e-12);
    EXPECT_NEAR(shortest_distances(g.graph, g.root)[g.far_end], 1.0, 1e-12);
    std::mt19937_64 rng(static_cast<std::uint64_t>(level));
    std::uniform_int_distribution<VertexId> pick(0, g.graph.vertex_count() - 1);
    for (int s = 0; s < 60; ++s) EXPECT_LE(eccentricity(g.graph, pick(rng)), 1.0 + 1e-12);
  }
}

TEST(Laakso, Orientation) {
  const auto g = laakso_graph(3);
  for (VertexId v = 0; v < g.graph.vertex_count(); ++v) {
    EXPECT_LE(g.outgoing[v].size(), 2u);
    EXPECT_TRUE(std::is_sorted(g.outgoing[v].begin(), g.outgoing[v].end()));
    for (const VertexId w : g.outgoing[v]) EXPECT_EQ(g.depth[w], g.depth[v] + 1);
  }
  EXPECT_TRUE(g.outgoing[g.far_end].empty());
}

TEST(Laakso, LevelTwoPair) {
  const auto g = laakso_graph(2);
  const auto pts = laakso_sra_points(g, 2);
  const auto d = graph_metric(g.graph, pts.x);
  EXPECT_NEAR(d(0, 1), 0.375, 1e-12);
  EXPECT_EQ(laakso_sra_distance(1, 2), 0.25 + 0.0625 + 0.0625);
}

TEST(Laakso, ClosedFormForAllLevels) {
  for (int level = 1; level <= 6; ++level) {
    const auto g = laakso_graph(level);
    const auto pts = laakso_sra_points(g, level);
    const auto d = graph_metric(g.graph, pts.x);
    for (int i = 1; i <= level; ++i) {
      // Anchor y_i sits at arc length 1/4 + ... + 1/4^i.
      double arc = 0.0;
      for (int m = 1; m <= i; ++m) arc += std::pow(4.0, -m);
      EXPECT_NEAR(shortest_distances(g.graph, g.root)[pts.y[static_cast<std::size_t>(i - 1)]],
                  arc, 1e-12);
      for (int k = i + 1; k <= level; ++k) {
        double closed = std::pow(4.0, -i) + std::pow(4.0, -k);
        for (int m = i + 1; m <= k; ++m) closed += std::pow(4.0, -m);
        EXPECT_NEAR(d(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(k - 1)), closed,
                    1e-12)
            << "level " << level << " i " << i << " k " << k;
      }
    }
  }
}

TEST(Laakso, OrderingAndSra) {
  const auto g = laakso_graph(6);
  const auto pts = laakso_sra_points(g, 6);
  const auto d = graph_metric(g.graph, pts.x);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) {
      for (std::size_t k = j + 1; k < 6; ++k) {
        EXPECT_LT(d(j, k), d(i, k));
        EXPECT_LT(d(i, k), d(i, j));
      }
    }
  }
  EXPECT_TRUE(verify_sra_set(d, SraParameter(0.6)).pass);
}

TEST(Laakso, Errors) {
  EXPECT_THROW(laakso_graph(7), CapacityExceeded);
  EXPECT_THROW(laakso_graph(9, 9), CapacityExceeded);
  EXPECT_THROW(laakso_graph(-1), ParameterError);
  const auto g = laakso_graph(2);
  EXPECT_THROW(laakso_sra_points(g, 3), ParameterError);
  EXPECT_THROW(laakso_sra_points(g, 0), ParameterError);
  EXPECT_THROW(laakso_sra_distance(2, 2), ParameterError);
}

TEST(Broom, DyadicExample) {
  const auto b = broom_tree(BroomSequence::kDyadic, 3);
  EXPECT_EQ(b.space(b.tips[1], b.tips[0]), 2.0);
  EXPECT_EQ(b.space(b.tips[2], b.tips[1]), 1.0);
  EXPECT_EQ(b.space.size(), 7u);
  EXPECT_EQ(b.space.label(b.tips[2]), "y3");
}

TEST(Broom, TipDistancesExact) {
  const auto b = broom_tree(BroomSequence::kHarmonic, 40);
  const auto geo = graph_metric(b.graph);
  for (std::size_t i = 0; i < 40; ++i) {
    EXPECT_EQ(b.space(b.root, b.tips[i]), 2 * b.t[i]);
    for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(b.space(b.tips[i], b.tips[j]), 2 * b.t[j]);
  }
  for (std::size_t u = 0; u < b.space.size(); ++u) {
    for (std::size_t v = 0; v < b.space.size(); ++v) {
      EXPECT_NEAR(b.space(u, v), geo(u, v), 1e-12);
    }
  }
}

TEST(Broom, TipsAreUltrametric) {
  const auto b = broom_tree(BroomSequence::kDyadic, 20);
  const auto& d = b.space;
  for (std::size_t k = 0; k < 20; ++k) {
    for (std::size_t j = k + 1; j < 20; ++j) {
      for (std::size_t i = j + 1; i < 20; ++i) {
        const auto yi = b.tips[i], yj = b.tips[j], yk = b.tips[k];
        EXPECT_EQ(d(yi, yk), std::max(d(yi, yj), d(yj, yk)));
      }
    }
  }
  for (int a = 1; a <= 9; ++a) {
    EXPECT_TRUE(verify_sra_set(d, b.tips, SraParameter(a / 10.0)).pass) << a;
  }
}

TEST(Broom, Errors) {
  EXPECT_THROW(broom_tree({0.5, 0.7}), ParameterError);
  EXPECT_THROW(broom_tree({1.5}), ParameterError);
  EXPECT_THROW(broom_tree({0.5, 0.5}), ParameterError);
  EXPECT_THROW(broom_tree({0.5, 0.0}), ParameterError);
}

TEST(Heisenberg, Examples) {
  EXPECT_NEAR(heisenberg_axis_distance(0.0, 1.0), 2 * std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_NEAR(heisenberg_axis_distance(0.0, 1.0), 3.5449077, 1e-7);
  EXPECT_EQ(heisenberg_axis_distance(0.2, 0.7), heisenberg_axis_distance(0.7, 0.2));
  const auto h = heisenberg_axis(40);
  EXPECT_EQ(h.size(), 41u);
  EXPECT_THROW(heisenberg_axis(0), ParameterError);
  EXPECT_THROW(heisenberg_axis(5, 1.0, 1.0), ParameterError);
}

TEST(Heisenberg, IsScaledSnowflakeOfLine) {
  const std::size_t n = 60;
  const auto h = heisenberg_axis(n);
  const auto line = FiniteMetricSpace::from_function(n + 1, [&](std::size_t i, std::size_t j) {
    return std::abs(static_cast<double>(i) - static_cast<double>(j)) / static_cast<double>(n);
  });
  const auto snow = snowflake_transform(line, 0.5);
  const double scale = 2 * std::sqrt(std::numbers::pi);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) EXPECT_NEAR(h(i, j), scale * snow(i, j), 1e-12);
  }
}

TEST(Heisenberg, SamplesAreSelfContracted) {
  const auto h = std::make_shared<FiniteMetricSpace>(heisenberg_axis(100));
  std::vector<PointIndex> order(101);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  EXPECT_TRUE(is_self_contracted(DiscreteCurve::on_space(h, order)).pass);
}

const std::vector<LatticePoint> kStandard{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
const std::vector<LatticePoint> kSkew{{1, 0}, {-1, 0}, {1, 1}, {-1, -1}};

TEST(Cayley, Examples) {
  const auto ball = cayley_ball(kStandard, 5);
  EXPECT_EQ(ball.distance({2, 3}), 5);
  EXPECT_EQ(ball.distance({3, 3}), -1);
  EXPECT_EQ(ball.size(), 61u);  // 2r^2 + 2r + 1
  EXPECT_EQ(cayley_ball(kSkew, 6).distance({0, 1}), 2);
}

TEST(Cayley, SymmetricAndSubadditive) {
  const auto ball = cayley_ball(kSkew, 6);
  for (const auto& [g, dg] : ball.table()) {
    EXPECT_EQ(ball.distance({-g[0], -g[1]}), dg);
    for (const auto& [h, dh] : ball.table()) {
      const long dsum = ball.distance({g[0] + h[0], g[1] + h[1]});
      if (dsum >= 0) EXPECT_LE(dsum, dg + dh);
    }
  }
  // The generators form a basis, so (a, b) = (a - b) e1 + b (1, 1) is the
  // only word up to cancellation.
  for (const auto& [g, dg] : ball.table()) {
    EXPECT_EQ(dg, std::abs(g[0] - g[1]) + std::abs(g[1]));
  }
}

TEST(Cayley, Errors) {
  EXPECT_THROW(cayley_ball({{1, 0}, {0, 1}}, 3), ParameterError);
  EXPECT_THROW(cayley_ball({{2, 0}, {-2, 0}, {0, 1}, {0, -1}}, 3), ParameterError);
  EXPECT_THROW(cayley_ball({{1, 0}, {-1, 0}}, 3), ParameterError);
  EXPECT_THROW(cayley_ball({}, 3), MalformedInput);
  EXPECT_THROW(cayley_ball({{1}, {-1}, {0, 1}, {0, -1}}, 3), MalformedInput);
  EXPECT_THROW(cayley_ball(kStandard, 1000, 100), CapacityExceeded);
  EXPECT_NO_THROW(cayley_ball({{2, 0}, {-2, 0}, {3, 0}, {-3, 0}, {0, 1}, {0, -1}}, 2));
}

TEST(StableNorm, Examples) {
  const auto diag = stable_norm_estimate(kStandard, {1, 1}, 32);
  EXPECT_EQ(diag.estimate, 2.0);
  EXPECT_EQ(diag.bracket_width(), 0.0);
  for (long k = 1; k <= 32; ++k) EXPECT_EQ(diag.f[static_cast<std::size_t>(k - 1)], 2 * k);
  EXPECT_EQ(stable_norm_estimate(kStandard, {1, 0}, 32).estimate, 1.0);
  const auto skew = stable_norm_estimate(kSkew, {0, 1}, 32);
  EXPECT_EQ(skew.estimate, 2.0);
  EXPECT_TRUE(skew.subadditive);
  EXPECT_LE(skew.lower, skew.estimate);
  EXPECT_LE(skew.estimate, skew.upper);
}

TEST(StableNorm, FeketeBracket) {
  const std::vector<LatticePoint> gens{{2, 1}, {-2, -1}, {0, 1}, {0, -1}, {1, 0}, {-1, 0}};
  const auto est = stable_norm_estimate(gens, {1, 2}, 24);
  EXPECT_TRUE(est.subadditive);
  EXPECT_LE(est.lower, est.upper);
  for (long k = 1; k <= 24; ++k) {
    const double fk = static_cast<double>(est.f[static_cast<std::size_t>(k - 1)]);
    EXPECT_LE(fk - static_cast<double>(k) * est.estimate, est.two_c + 1e-12);
    EXPECT_GE(fk / static_cast<double>(k), est.lower - 1e-12);
  }
}

TEST(StableNorm, Errors) {
  EXPECT_THROW(stable_norm_estimate(kStandard, {0, 0}, 4), ParameterError);
  EXPECT_THROW(stable_norm_estimate(kStandard, {1, 0}, 0), ParameterError);
  EXPECT_THROW(stable_norm_estimate(kStandard, {1, 0, 0}, 4), MalformedInput);
  EXPECT_THROW(stable_norm_estimate(kStandard, {1000, 1000}, 32, 1000), CapacityExceeded);
}

TEST(NormedSample, Examples) {
  std::vector<std::vector<double>> coords;
  for (const char* tag : {"l1", "l2", "linf", "lp:3"}) {
    const Norm norm = Norm::parse(tag);
    const auto s = normed_sample(3, norm, 2, 11, &coords);
    double direct = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double g = std::abs(coords[0][static_cast<std::size_t>(i)] -
                                coords[1][static_cast<std::size_t>(i)]);
      if (norm.kind == NormKind::kL1) direct += g;
      else if (norm.kind == NormKind::kL2) direct += g * g;
      else if (norm.kind == NormKind::kLinf) direct = std::max(direct, g);
      else direct += g * g * g;
    }
    if (norm.kind == NormKind::kL2) direct = std::sqrt(direct);
    if (norm.kind == NormKind::kP) direct = std::cbrt(direct);
    EXPECT_NEAR(s(0, 1), direct, 1e-12) << tag;
  }
}

TEST(NormedSample, DeterministicAndOrdered) {
  const auto a = normed_sample(2, Norm::l2(), 100, 5);
  const auto b = normed_sample(2, Norm::l2(), 100, 5);
  EXPECT_TRUE(std::equal(a.flat().begin(), a.flat().end(), b.flat().begin()));
  const auto inf = normed_sample(2, Norm::linf(), 100, 5);
  for (std::size_t i = 0; i < a.flat().size(); ++i) EXPECT_LE(inf.flat()[i], a.flat()[i]);
  EXPECT_THROW(normed_sample(2, Norm::l2(), 0, 5), ParameterError);
  EXPECT_THROW(normed_sample(0, Norm::l2(), 3, 5), ParameterError);
}

}  // namespace
}  // namespace metrik
