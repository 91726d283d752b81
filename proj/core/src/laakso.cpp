#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "metrik/error.hpp"
#include "metrik/spaces.hpp"

namespace metrik {
namespace {

struct Skeleton {
  std::size_t vertices = 2;
  std::vector<std::pair<VertexId, VertexId>> edges{{0, 1}};
};

// Junction layout of G_N: 0 root, 1 far end, 2 lower junction, 3 upper
// junction, 4 middle of the left chain, 5 middle of the right chain.
Skeleton refine(const Skeleton& cell) {
  constexpr VertexId kRoot = 0, kEnd = 1, kLow = 2, kHigh = 3, kLeftMid = 4, kRightMid = 5;
  // Left chain copies precede right chain copies so that internal vertex ids
  // on the left are always smaller.
  const std::pair<VertexId, VertexId> copies[] = {
      {kRoot, kLow},     {kLow, kLeftMid},  {kLeftMid, kHigh},
      {kLow, kRightMid}, {kRightMid, kHigh}, {kHigh, kEnd},
  };
  Skeleton out;
  out.vertices = 6;
  out.edges.clear();
  out.edges.reserve(6 * cell.edges.size());
  for (const auto& [bottom, top] : copies) {
    const std::size_t offset = out.vertices;
    auto map = [&](VertexId v) -> VertexId {
      if (v == 0) return bottom;
      if (v == 1) return top;
      return offset + (v - 2);
    };
    for (const auto& [u, v] : cell.edges) out.edges.emplace_back(map(u), map(v));
    out.vertices += cell.vertices - 2;
  }
  return out;
}

}  // namespace

LaaksoGraph laakso_graph(int level, int cap) {
  if (cap > kMaxLaaksoLevel) cap = kMaxLaaksoLevel;
  if (level < 0) throw ParameterError("Laakso level must be nonnegative");
  if (level > cap) {
    throw CapacityExceeded("Laakso level " + std::to_string(level) + " exceeds cap " +
                           std::to_string(cap));
  }
  Skeleton sk;
  for (int i = 0; i < level; ++i) sk = refine(sk);

  LaaksoGraph g;
  g.level = level;
  g.edge_length = std::ldexp(1.0, -2 * level);
  std::vector<std::string> labels;
  labels.reserve(sk.vertices);
  labels.emplace_back("r");
  labels.emplace_back("end");
  for (std::size_t v = 2; v < sk.vertices; ++v) labels.push_back("v" + std::to_string(v));
  g.graph = WeightedGraph(sk.vertices, std::move(labels));
  for (const auto& [u, v] : sk.edges) g.graph.add_edge(u, v, g.edge_length);
  g.root = 0;
  g.far_end = 1;

  g.depth = hop_distances(g.graph, g.root);
  g.outgoing.assign(sk.vertices, {});
  for (const auto& [u, v] : sk.edges) {
    if (g.depth[u] == g.depth[v]) {
      throw MalformedInput("Laakso edge with endpoints equidistant from the root");
    }
    if (g.depth[u] < g.depth[v]) g.outgoing[u].push_back(v);
    else g.outgoing[v].push_back(u);
  }
  for (auto& out : g.outgoing) std::sort(out.begin(), out.end());
  return g;
}

LaaksoSraPoints laakso_sra_points(const LaaksoGraph& g, int n) {
  if (n < 1 || n > g.level) {
    throw ParameterError("need 1 <= n <= level for Laakso SRA points (n = " +
                         std::to_string(n) + ", level = " + std::to_string(g.level) + ")");
  }
  auto walk = [&](VertexId from, long steps, bool turn_right) {
    VertexId v = from;
    for (long s = 0; s < steps; ++s) {
      const auto& out = g.outgoing[v];
      if (out.empty()) throw MalformedInput("oriented path left the Laakso graph");
      v = turn_right ? out.back() : out.front();
    }
    return v;
  };
  auto hops = [&](int i) { return 1L << (2 * (g.level - i)); };  // 4^(N-i)

  LaaksoSraPoints pts;
  VertexId y = g.root;
  for (int i = 1; i <= n; ++i) {
    y = walk(y, hops(i), /*turn_right=*/false);
    pts.y.push_back(y);
    pts.x.push_back(walk(y, hops(i), /*turn_right=*/true));
  }
  return pts;
}

double laakso_sra_distance(int i, int k) {
  if (i < 1 || k <= i) throw ParameterError("need 1 <= i < k");
  double d = std::ldexp(1.0, -2 * i);
  for (int m = i + 1; m <= k; ++m) d += std::ldexp(1.0, -2 * m);
  return d + std::ldexp(1.0, -2 * k);
}

}  // namespace metrik
