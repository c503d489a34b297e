#pragma once

#include <cstddef>

#include "ecss/graph.hpp"
#include "ecss/hierarchy.hpp"
#include "ecss/metric.hpp"

namespace ecss {

/// Number of edges with exactly one endpoint in `cluster` (sorted).
std::size_t count_crossings(const EdgeList& edges, const PointSet& cluster);

struct PatchResult {
  EdgeList edges;  ///< may contain parallel edges
  double added_weight = 0.0;
  double removed_weight = 0.0;
  double mst_bound = 0.0;  ///< 4 w(MST(P))
  std::size_t crossings_before = 0;
  std::size_t crossings_after = 0;
  bool connected = true;  ///< no component split among the input's vertices

  bool within_bound() const;
};

/// Reduces the boundary crossings of `cluster` to two (one when the count is
/// odd). P is the set of crossing endpoints; the removed crossings' inside
/// endpoints are paired along a depth-first order of MST(P), and likewise the
/// outside endpoints, so each side costs at most 2 w(MST(P)). Every keep choice
/// and both pairing phases are tried; the cheapest candidate that keeps the
/// graph connected wins. Degree parity is preserved at every point.
PatchResult patch_crossings(const MetricInstance& instance, const EdgeList& edges,
                            const PointSet& cluster);

struct WellBehavedResult {
  EdgeList edges;  ///< may contain parallel edges
  double input_weight = 0.0;
  double output_weight = 0.0;
  double bound = 0.0;  ///< (1 + 6 eps) input_weight
  std::size_t rerouted = 0;

  bool within_bound() const { return output_weight <= bound + kDistEps; }
};

/// Reroutes every edge (x, y) whose endpoints are not portals of the two
/// children of their lowest common cluster: x climbs through its enclosing
/// clusters, hopping to the nearest portal at each level, up to the child of
/// the common cluster; y does the same; the edge is replaced by the hop paths
/// and the edge between the two final portals. Degree parity is preserved.
WellBehavedResult make_well_behaved(const MetricInstance& instance, const ClusterTree& tree,
                                    const EdgeList& edges, double epsilon);

/// Edges that cross some cluster boundary at a non-portal endpoint.
std::size_t count_non_portal_crossings(const ClusterTree& tree, const EdgeList& edges);

}  // namespace ecss
