#pragma once

#include <vector>

#include "ecss/metric.hpp"

namespace ecss {

/// Undirected edge between two points; stored with u < v when normalized.
struct Edge {
  PointId u = 0;
  PointId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct WeightedEdge {
  PointId u = 0;
  PointId v = 0;
  double w = 0.0;
};

/// Edge list; may hold parallel edges when used as a multigraph.
using EdgeList = std::vector<Edge>;

inline Edge make_edge(PointId a, PointId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

double edge_weight(const MetricInstance& instance, const EdgeList& edges);

/// Sorts, normalizes (u < v) and removes duplicates.
EdgeList normalized(EdgeList edges);

struct Certificate {
  bool spanning = false;
  bool bridgeless = false;
};

struct SubgraphSolution {
  EdgeList edges;
  double weight = 0.0;
  bool feasible = false;
  Certificate certificate;
  /// n < 3 cannot host a simple 2-edge-connected spanning subgraph.
  bool infeasible_by_size = false;
};

/// Builds a solution record, recomputing weight and certificate from scratch.
SubgraphSolution make_solution(const MetricInstance& instance, EdgeList edges);

struct SpanningTree {
  EdgeList edges;
  double weight = 0.0;
};

/// MST of the complete metric graph on `subset` (Kruskal, ties broken by
/// lexicographic (u, v)).
SpanningTree minimum_spanning_tree(const MetricInstance& instance,
                                   const PointSet& subset);
SpanningTree minimum_spanning_tree(const MetricInstance& instance);

/// Bridges of a multigraph on n vertices. Parallel copies of an edge are never
/// bridges. Returned normalized and sorted.
EdgeList find_bridges(const EdgeList& edges, std::size_t n);

/// spanning: connected and every one of the n points is touched (n = 1 is
/// spanning with no edges). bridgeless: find_bridges is empty.
Certificate certify_2ecss(const EdgeList& edges, std::size_t n);

/// Component label per vertex for the multigraph (vertices without edges get
/// their own component).
std::vector<int> connected_components(const EdgeList& edges, std::size_t n,
                                      int* count = nullptr);

class NotEulerian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Euler tour of a connected even-degree multigraph starting at its smallest
/// vertex, shortcut to first visits. Returns the Hamiltonian cycle on the
/// touched vertices (a single vertex yields no edges, two vertices one edge).
EdgeList shortcut_euler_tour(const MetricInstance& instance, const EdgeList& multigraph);

/// Vertex sequence of the shortcut tour (no repeated closing vertex).
std::vector<PointId> euler_visit_order(const EdgeList& multigraph);

/// Cycle edges closing the given vertex order.
EdgeList cycle_edges(const std::vector<PointId>& order);

}  // namespace ecss
