#include "metrik/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>

#include "metrik/error.hpp"

namespace metrik {

WeightedGraph::WeightedGraph(std::size_t vertex_count, std::vector<std::string> labels)
    : adjacency_(vertex_count), labels_(std::move(labels)) {
  if (labels_.empty()) {
    labels_.reserve(vertex_count);
    for (std::size_t i = 0; i < vertex_count; ++i) labels_.push_back(std::to_string(i));
  } else if (labels_.size() != vertex_count) {
    throw MalformedInput("graph label count does not match vertex count");
  }
}

void WeightedGraph::add_edge(VertexId u, VertexId v, double length) {
  if (u >= vertex_count() || v >= vertex_count()) {
    throw MalformedInput("edge endpoint out of range");
  }
  if (u == v) throw MalformedInput("self-loops are not allowed");
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw MalformedInput("edge lengths must be positive and finite");
  }
  adjacency_[u].push_back({v, length});
  adjacency_[v].push_back({u, length});
  edges_.push_back({u, v, length});
}

double WeightedGraph::edge_length(VertexId u, VertexId v) const {
  double best = -1.0;
  for (const Neighbor& nb : adjacency_.at(u)) {
    if (nb.vertex == v && (best < 0.0 || nb.length < best)) best = nb.length;
  }
  return best;
}

std::vector<double> shortest_distances(const WeightedGraph& graph, VertexId source) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(graph.vertex_count(), inf);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist.at(source) = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const Neighbor& nb : graph.neighbors(u)) {
      const double cand = d + nb.length;
      if (cand < dist[nb.vertex]) {
        dist[nb.vertex] = cand;
        heap.emplace(cand, nb.vertex);
      }
    }
  }
  return dist;
}

std::vector<long> hop_distances(const WeightedGraph& graph, VertexId source) {
  std::vector<long> hops(graph.vertex_count(), -1);
  std::deque<VertexId> queue{source};
  hops.at(source) = 0;
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop_front();
    for (const Neighbor& nb : graph.neighbors(u)) {
      if (hops[nb.vertex] < 0) {
        hops[nb.vertex] = hops[u] + 1;
        queue.push_back(nb.vertex);
      }
    }
  }
  return hops;
}

FiniteMetricSpace graph_metric(const WeightedGraph& graph, double tolerance) {
  std::vector<VertexId> all(graph.vertex_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return graph_metric(graph, all, tolerance);
}

FiniteMetricSpace graph_metric(const WeightedGraph& graph, std::span<const VertexId> points,
                               double tolerance) {
  const std::size_t m = points.size();
  std::vector<double> flat(m * m, 0.0);
  std::vector<std::string> labels;
  labels.reserve(m);
  for (std::size_t a = 0; a < m; ++a) {
    if (points[a] >= graph.vertex_count()) throw MalformedInput("vertex out of range");
    labels.push_back(graph.labels()[points[a]]);
    const std::vector<double> dist = shortest_distances(graph, points[a]);
    for (std::size_t b = 0; b < m; ++b) {
      const double v = dist[points[b]];
      if (!std::isfinite(v)) throw MalformedInput("graph is disconnected");
      flat[a * m + b] = v;
    }
  }
  // Dijkstra from both ends can differ in the last bit; keep the upper triangle.
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < a; ++b) flat[a * m + b] = flat[b * m + a];
  }
  return FiniteMetricSpace(std::move(labels), std::move(flat), m, tolerance);
}

GeodesicSet::GeodesicSet(WeightedGraph graph, double tolerance)
    : graph_(std::move(graph)), metric_(graph_metric(graph_, tolerance)) {}

std::vector<VertexId> GeodesicSet::path(VertexId from, VertexId to) const {
  if (from >= graph_.vertex_count() || to >= graph_.vertex_count()) {
    throw MalformedInput("geodesic endpoint out of range");
  }
  const double tol = metric_.tolerance();
  std::vector<VertexId> out{from};
  VertexId cur = from;
  while (cur != to) {
    VertexId next = graph_.vertex_count();
    for (const Neighbor& nb : graph_.neighbors(cur)) {
      if (nb.vertex < next &&
          nb.length + metric_(nb.vertex, to) <= metric_(cur, to) + tol &&
          metric_(nb.vertex, to) < metric_(cur, to)) {
        next = nb.vertex;
      }
    }
    if (next == graph_.vertex_count()) {
      throw MalformedInput("no geodesic continuation found");
    }
    out.push_back(next);
    cur = next;
  }
  return out;
}

double GeodesicSet::path_length(std::span<const VertexId> path) const {
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double len = graph_.edge_length(path[i - 1], path[i]);
    if (len < 0.0) throw MalformedInput("path uses a missing edge");
    total += len;
  }
  return total;
}

double GeodesicSet::distance_to_path(VertexId y, std::span<const VertexId> path) const {
  // For a point at offset s inside edge (a, b) the distance to y is
  // min(d(y,a) + s, d(y,b) + len - s), a minimum of two affine functions of s,
  // so its minimum over the edge is attained at an endpoint. Vertices suffice.
  double best = std::numeric_limits<double>::infinity();
  for (const VertexId v : path) best = std::min(best, metric_(y, v));
  return best;
}

GraphPoint GeodesicSet::point_at(std::span<const VertexId> path, double s) const {
  if (path.empty()) throw MalformedInput("empty path");
  if (path.size() == 1 || s <= 0.0) {
    const VertexId v = path.front();
    return {v, v, 0.0, 0.0};
  }
  double walked = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double len = graph_.edge_length(path[i - 1], path[i]);
    if (s <= walked + len) {
      return {path[i - 1], path[i], std::clamp(s - walked, 0.0, len), len};
    }
    walked += len;
  }
  const VertexId v = path.back();
  return {v, v, 0.0, 0.0};
}

double GeodesicSet::distance(const GraphPoint& a, const GraphPoint& b) const {
  const double a_back = a.offset;
  const double a_fwd = a.edge_length - a.offset;
  const double b_back = b.offset;
  const double b_fwd = b.edge_length - b.offset;
  double best = std::min({a_back + metric_(a.from, b.from) + b_back,
                          a_back + metric_(a.from, b.to) + b_fwd,
                          a_fwd + metric_(a.to, b.from) + b_back,
                          a_fwd + metric_(a.to, b.to) + b_fwd});
  if (a.edge_length > 0.0 && b.edge_length > 0.0) {
    if (a.from == b.from && a.to == b.to) {
      best = std::min(best, std::abs(a.offset - b.offset));
    } else if (a.from == b.to && a.to == b.from) {
      best = std::min(best, std::abs(a.offset - (b.edge_length - b.offset)));
    }
  }
  return best;
}

}  // namespace metrik
