#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ecss/metric.hpp"
#include "ecss/random.hpp"

namespace ecss {

/// Parameters of the randomized hierarchical partition.
struct PartitionParams {
  int k = 1;                   ///< dimension parameter
  double s = 2.0;              ///< scale factor between consecutive levels
  int levels = 1;              ///< L: level 0 is the root, level L the singletons
  double epsilon = 0.25;
  std::uint64_t seed = 0;
  double portal_alpha_factor = 0.0;  ///< portal net radius as a fraction of the level scale
  std::size_t portal_cap = 8;        ///< max portals per cluster (0 = unlimited)
};

/// Derived defaults: s = max(2, (log2 n)^{1/(32k)}), L = ceil(log_s aspect) + 1,
/// portal_alpha_factor = epsilon / (4L).
PartitionParams default_partition_params(const MetricInstance& instance, int k,
                                         double epsilon, std::uint64_t seed);

/// Same parameters re-fitted to another (sub-)instance: the level count
/// follows its aspect ratio and the portal factor keeps its per-level share.
PartitionParams adapt_partition_params(const MetricInstance& instance,
                                       PartitionParams base);

/// Level count for a given aspect ratio and scale factor.
int level_count(double aspect_ratio, double s);

struct Cluster {
  int id = 0;
  int level = 0;
  PointId center = 0;
  double radius = 0.0;
  double scale = 0.0;  ///< s^i in instance units; radius is drawn from [scale, 2 scale]
  PointSet members;
  int parent = -1;
  std::vector<int> children;
  PointSet portals;
  double portal_alpha = 0.0;  ///< covering radius actually achieved by `portals`
};

class ClusterTree {
 public:
  std::vector<Cluster> clusters;
  std::vector<std::vector<int>> levels;     ///< cluster ids per level
  std::vector<std::vector<int>> cluster_of;  ///< [level][point] -> cluster id
  double unit = 1.0;  ///< minimum interpoint distance (normalization)
  double s = 2.0;
  int depth = 0;  ///< L

  int root() const { return levels.front().front(); }
  const Cluster& operator[](int id) const { return clusters[id]; }
  Cluster& operator[](int id) { return clusters[id]; }

  /// Scale s^{L-1-level} in instance units.
  double scale_at(int level) const;

  /// Deepest level at which a and b share a cluster.
  int lca_level(PointId a, PointId b) const;

  /// Cluster at `level` containing p.
  int cluster_at(int level, PointId p) const { return cluster_of[level][p]; }

  bool is_portal(int cluster, PointId p) const;

  std::size_t max_portal_count() const;
};

/// Top-down randomized construction: at each level a fresh random permutation
/// chooses centers among the unassigned members of each parent cluster; each
/// center draws its radius from the truncated exponential density
/// proportional to 2^{(8k/S) r} on [S, 2S] and claims every unassigned member
/// within that radius. The last level holds singletons.
ClusterTree build_cluster_tree(const MetricInstance& instance,
                               const PartitionParams& params, Rng& rng);

/// Inverse-CDF sample of the radius density on [scale, 2 scale].
double sample_radius(double scale, int k, double u);

/// Partition conditions, nesting and radius containment. Each entry starts
/// with one of: "disjointness", "cover", "root", "leaves", "containment",
/// "nesting".
std::vector<std::string> validate_cluster_tree(const ClusterTree& tree,
                                               const MetricInstance& instance);

/// Portal nets per cluster, top-down. Each cluster's net is seeded with the
/// parent's portals that fall inside it (so a portal stays a portal all the
/// way down) and completed by the greedy ascending-id rule at radius
/// portal_alpha_factor * scale. When portal_cap binds, the radius is doubled
/// until the net fits.
std::vector<PointSet> assign_portals(const ClusterTree& tree,
                                     const MetricInstance& instance,
                                     const PartitionParams& params);

/// Builds the tree and fills in its portals.
ClusterTree build_tree_with_portals(const MetricInstance& instance,
                                    const PartitionParams& params, Rng& rng);

/// Monte Carlo fraction of independent trees separating u and v at `level`.
double estimate_cut_probability(const MetricInstance& instance,
                                const PartitionParams& params, PointId u, PointId v,
                                int level, int trials);

/// Batch form: one tree per trial, evaluated for every pair.
std::vector<double> estimate_cut_probabilities(
    const MetricInstance& instance, const PartitionParams& params,
    const std::vector<std::pair<PointId, PointId>>& pairs, int level, int trials);

}  // namespace ecss
