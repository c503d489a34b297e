#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecss/dp.hpp"
#include "ecss/graph.hpp"
#include "ecss/metric.hpp"
#include "ecss/sparsity.hpp"

namespace ecss {

struct SolverParams {
  double epsilon = 0.25;
  int k = -1;       ///< dimension parameter; negative means estimate it
  double q = 0.0;   ///< sparsity threshold; 0 means the derived default
  int r_cap = 6;    ///< practical cap on the crossing limit
  std::size_t portal_cap = 8;
  double portal_alpha_factor = -1.0;  ///< negative means eps / (4L)
  int best_of = 5;
  bool fallback_baseline = true;
  int usage_cap = 2;              ///< max solution degree explored by the DP
  std::size_t table_limit = 48;   ///< DP states kept per cluster (0 = all)
};

/// r = r' + r'' with r' = max(2^{4k} 10 q k log_s log n, (2k/eps)^k) and
/// r'' = (s/eps)^{2k}, capped at r_cap and at least 2.
int crossing_limit(const SolverParams& params, std::size_t n, double s, int k, double q);

/// Makes an edge set spanning and bridgeless: components are joined by their
/// cheapest connecting edge, then each remaining bridge gets the cheapest
/// absent edge across its cut.
EdgeList repair_bridges(const MetricInstance& instance, EdgeList edges);

struct RunReport {
  double weight = 0.0;
  double baseline_weight = 0.0;
  double mst_weight = 0.0;
  bool feasible = false;
  std::uint64_t seed = 0;
  SolverParams params;
  int k = 0;
  int crossing_limit = 0;
  std::string source;  ///< "dp", "incumbent" or "baseline"
  std::vector<SparsityStep> sparsity;
  std::size_t configs_enumerated = 0;
  std::size_t max_table_size = 0;
  std::size_t dp_failures = 0;  ///< trees redrawn after an infeasible DP
  std::size_t patch_calls = 0;
  std::size_t patch_violations = 0;
  std::size_t well_behaved_calls = 0;
  std::size_t well_behaved_violations = 0;
  double repair_weight = 0.0;
  std::size_t repair_checks = 0;
  std::size_t repair_violations = 0;
  double wall_ms = 0.0;
};

struct SolveResult {
  SubgraphSolution solution;
  RunReport report;
};

/// Full pipeline over best_of independent seeds: hierarchy with portals,
/// sparse/dense split, DP per part, join and bridge repair. With the fallback
/// enabled the double-MST tour and a portal-respecting rewrite of it compete
/// as well, so the result never exceeds the baseline.
SolveResult solve_2ecss(const MetricInstance& instance, const SolverParams& params,
                        std::uint64_t seed);

}  // namespace ecss
