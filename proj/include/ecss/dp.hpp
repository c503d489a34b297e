#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>

#include "ecss/graph.hpp"
#include "ecss/hierarchy.hpp"
#include "ecss/metric.hpp"

namespace ecss {

class NoFeasibleConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DpParams {
  int crossing_limit = 6;  ///< r: max boundary crossings per cluster
  int usage_cap = 2;       ///< max degree of a point in the solution
  std::size_t table_limit = 48;  ///< states kept per table (0 = all)
  /// Weight of any known 2-ECSS. States whose lower bound exceeds it are
  /// dropped, which keeps exhaustive runs exact.
  double upper_bound = std::numeric_limits<double>::infinity();
};

struct DpStats {
  std::size_t configs_enumerated = 0;
  std::size_t max_table_size = 0;
  std::size_t clusters = 0;
};

struct DpResult {
  SubgraphSolution solution;
  DpStats stats;
};

/// Bottom-up portal-respecting DP. Every solution edge joins portals of two
/// different children of the edge's lowest common cluster. A table entry
/// records the open boundary stubs (portal, multiplicity) and the bridge
/// forest of the partial subgraph reduced to what the outside can still
/// influence: 2-edge-connected pieces holding stubs, branch nodes of degree
/// at least 3, and the bridges between them. Pieces that can never be made
/// 2-edge-connected are discarded. With all points as portals, crossing
/// limit >= 2n, usage cap n - 1 and no table limit the result is optimal.
DpResult solve_sparse_dp(const MetricInstance& instance, const ClusterTree& tree,
                         const DpParams& params);

}  // namespace ecss
