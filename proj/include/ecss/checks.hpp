#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecss/metric.hpp"
#include "ecss/solver.hpp"

namespace ecss {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  std::size_t violations = 0;
  std::string detail;
};

/// Patching calls observed while solving, for the patching bound check.
struct PatchTally {
  std::size_t calls = 0;
  std::size_t violations = 0;
  void add(const RunReport& r) {
    calls += r.patch_calls;
    violations += r.patch_violations;
  }
};

/// `count` instances cycling through the generators, n uniform in [n_lo, n_hi],
/// dimensions 1 to 3.
std::vector<MetricInstance> mixed_instances(std::size_t count, std::size_t n_lo,
                                            std::size_t n_hi, std::uint64_t seed);

/// Every solve_2ecss output is spanning and bridgeless, never above the
/// baseline and never below the MST.
CheckResult check_feasibility(const std::vector<MetricInstance>& instances,
                              const SolverParams& params, std::uint64_t seed,
                              PatchTally* tally = nullptr);

/// DP with every point a portal, r >= 2n, full usage and no table limit
/// matches the branch-and-bound optimum. The double-MST tour serves as the
/// DP upper bound.
CheckResult check_oracle_equivalence(std::size_t instances, std::size_t seeds,
                                     std::uint64_t seed);

/// Ratio to the exact optimum on uniform instances: at most 1 + eps in at
/// least 90% of them and never above the baseline ratio.
CheckResult check_approximation(std::size_t instances, std::size_t n,
                                const SolverParams& params, std::uint64_t seed,
                                PatchTally* tally = nullptr);

/// MST weight against 4 |X'|^{1-1/k} diam(X') on random subsets, and net
/// sizes against (2 aspect)^k for nets of those subsets. Returns both results.
std::vector<CheckResult> check_spanning_tree_and_packing(std::size_t instances,
                                                         std::size_t subsets,
                                                         std::uint64_t seed);

/// Weight factor at most 1 + 6 eps and portal-only crossings after
/// make_well_behaved on random tours, half at each eps.
CheckResult check_well_behaved(std::size_t tours, const std::vector<double>& epsilons,
                               std::uint64_t seed);

CheckResult check_patching(const PatchTally& tally);

/// Cut probability against C k d / scale with C fitted by least squares
/// through the origin; a pair fails when it exceeds the fit by more than
/// three binomial standard deviations.
CheckResult check_cut_property(std::size_t n, std::size_t trees, std::size_t pairs,
                               std::uint64_t seed);

/// Disjoint cover, q* > q and a clean rescan of X1 at q' on instances built
/// from a dense unit grid and a sparse far background.
CheckResult check_sparse_decomposition(std::size_t instances, std::uint64_t seed);

/// MST <= optimum 2-ECSS <= optimal tour <= double-MST tour <= 2 MST.
CheckResult check_oracle_sandwich(std::size_t instances, std::size_t n_max,
                                  std::uint64_t seed);

/// Median wall time at 2n over median at n stays below `max_ratio`.
CheckResult check_timing(std::size_t n, std::size_t samples, double max_ratio,
                         const SolverParams& params, std::uint64_t seed);

}  // namespace ecss
