#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "metrik/metric_space.hpp"

namespace metrik {

using VertexId = std::size_t;

struct Edge {
  VertexId from = 0;
  VertexId to = 0;
  double length = 0.0;
};

struct Neighbor {
  VertexId vertex = 0;
  double length = 0.0;
};

/// Undirected graph with positive edge lengths.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t vertex_count, std::vector<std::string> labels = {});

  void add_edge(VertexId u, VertexId v, double length);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(VertexId v) const { return adjacency_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Shortest edge joining u and v, or a negative value if none.
  double edge_length(VertexId u, VertexId v) const;

 private:
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
};

/// Single-source shortest-path distances (Dijkstra). Unreachable vertices
/// get +infinity.
std::vector<double> shortest_distances(const WeightedGraph& graph, VertexId source);

/// Hop counts from `source` (breadth-first search); -1 when unreachable.
std::vector<long> hop_distances(const WeightedGraph& graph, VertexId source);

/// Intrinsic metric of a connected graph on all vertices, by one Dijkstra run
/// per vertex. Throws MalformedInput if the graph is disconnected.
FiniteMetricSpace graph_metric(const WeightedGraph& graph,
                               double tolerance = kDefaultTolerance);

/// Intrinsic metric restricted to `points` (one Dijkstra run per point).
FiniteMetricSpace graph_metric(const WeightedGraph& graph,
                               std::span<const VertexId> points,
                               double tolerance = kDefaultTolerance);

/// A point on a graph geodesic: `offset` along the edge from `from` towards
/// `to` (offset == 0 is the vertex `from`).
struct GraphPoint {
  VertexId from = 0;
  VertexId to = 0;
  double offset = 0.0;
  double edge_length = 0.0;
};

/// Quasi-bicombing on a graph: one shortest vertex path per ordered pair,
/// chosen as the lexicographically smallest vertex sequence. Owns the graph
/// and its all-pairs distance matrix.
class GeodesicSet {
 public:
  explicit GeodesicSet(WeightedGraph graph, double tolerance = kDefaultTolerance);

  const WeightedGraph& graph() const noexcept { return graph_; }
  const FiniteMetricSpace& metric() const noexcept { return metric_; }
  double distance(VertexId u, VertexId v) const { return metric_(u, v); }

  std::vector<VertexId> path(VertexId from, VertexId to) const;

  /// Length of a vertex path measured edge by edge.
  double path_length(std::span<const VertexId> path) const;

  /// min over the whole image of the path (vertices and edge interiors) of
  /// the distance to vertex y.
  double distance_to_path(VertexId y, std::span<const VertexId> path) const;

  /// Point at arc length s along a vertex path (clamped to its ends).
  GraphPoint point_at(std::span<const VertexId> path, double s) const;

  /// Intrinsic distance between two points on edges.
  double distance(const GraphPoint& a, const GraphPoint& b) const;

 private:
  WeightedGraph graph_;
  FiniteMetricSpace metric_;
};

}  // namespace metrik
