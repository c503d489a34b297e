#pragma once

#include <string>

#include "ecss/graph.hpp"
#include "ecss/metric.hpp"

namespace ecss {

struct OracleResult {
  double weight = 0.0;
  EdgeList edges;
  std::string method;  ///< "brute-2ecss", "held-karp-tsp" or "double-mst"
};

/// Exact minimum 2-ECSS by branch and bound (3 <= n <= 10). Branches on an
/// unmet constraint (a point of degree < 2, a disconnected side or a bridge
/// cut) over the edges that could fix it. Among optimal edge sets the
/// lexicographically smallest is returned.
OracleResult brute_force_2ecss(const MetricInstance& instance);

/// Optimal Hamiltonian cycle by the subset dynamic program (3 <= n <= 15).
OracleResult held_karp_tsp(const MetricInstance& instance);

/// Doubled MST, Euler tour, shortcut (n >= 3).
OracleResult double_mst_baseline(const MetricInstance& instance);

}  // namespace ecss
