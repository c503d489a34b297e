#include "ecss/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "ecss/graph.hpp"

namespace ecss {

SparsityParams default_sparsity_params(std::size_t n, double s, int k, double epsilon) {
  SparsityParams p;
  const double log2_q = 2.0 * k * std::log2(s / epsilon) + static_cast<double>(k) * k;
  p.q = log2_q > 1000.0 ? 1e300 : std::exp2(log2_q);
  p.q_prime = relaxed_threshold(p.q, n);
  p.delta = epsilon / std::exp2(10.0 * k);
  return p;
}

double relaxed_threshold(double q, std::size_t n) {
  const double log_factor =
      std::max(1.0, std::pow(std::log2(static_cast<double>(std::max<std::size_t>(n, 2))), 0.125));
  return std::ceil(13.0 * q * log_factor);
}

double mst_ball_weight(const MetricInstance& instance, const PointSet& within,
                       PointId center, double radius) {
  const PointSet members = ball_members(instance, within, Ball{center, radius});
  if (members.size() < 2) return 0.0;
  return minimum_spanning_tree(instance, members).weight;
}

double mst_ball_weight(const MetricInstance& instance, PointId center, double radius) {
  return mst_ball_weight(instance, instance.all_points(), center, radius);
}

std::optional<SparsityViolation> find_sparsity_violation(const MetricInstance& instance,
                                                         const ClusterTree& tree,
                                                         double q) {
  if (instance.size() < 2) return std::nullopt;
  const PointSet all = instance.all_points();
  for (int level = tree.depth; level >= 0; --level) {
    const double scale = tree.scale_at(level);
    std::optional<SparsityViolation> densest;
    double densest_weight = 0.0;
    for (int id : tree.levels[level]) {
      const PointId v = tree[id].center;
      const double w = mst_ball_weight(instance, all, v, 3.0 * scale);
      if (w > 2.0 * q * scale &&
          (!densest || w > densest_weight || (w == densest_weight && v < densest->center))) {
        densest = SparsityViolation{v, level, w / (2.0 * scale)};
        densest_weight = w;
      }
    }
    if (densest) return densest;
  }
  return std::nullopt;
}

double choose_cut_radius(const MetricInstance& instance, const ClusterTree& tree,
                         const SparsityViolation& violation, const SparsityParams& params) {
  const double scale = tree.scale_at(violation.level);
  const double slack = params.delta * scale;
  int fine_level = tree.depth;
  for (int level = 0; level <= tree.depth; ++level) {
    if (tree.scale_at(level) <= slack) {
      fine_level = level;
      break;
    }
  }
  PointSet portals;
  for (int id : tree.levels[fine_level]) {
    portals.insert(portals.end(), tree[id].portals.begin(), tree[id].portals.end());
  }
  std::sort(portals.begin(), portals.end());
  const double probe = 4.0 * tree.scale_at(fine_level);
  const PointSet all = instance.all_points();
  std::unordered_map<PointId, double> cache;
  auto probe_weight = [&](PointId u) {
    auto it = cache.find(u);
    if (it != cache.end()) return it->second;
    const double w = mst_ball_weight(instance, all, u, probe);
    cache.emplace(u, w);
    return w;
  };

  const int candidates = std::max(params.h_candidates, 1);
  double best_h = 12.0 * scale;
  double best_score = std::numeric_limits<double>::infinity();
  for (int j = 0; j < candidates; ++j) {
    const double h = candidates == 1 ? 12.0 * scale : scale * (12.0 + static_cast<double>(j) / (candidates - 1));
    double score = 0.0;
    for (PointId u : portals) {
      if (std::abs(instance(violation.center, u) - h) < 5.0 * slack) score += probe_weight(u);
    }
    if (score < best_score) {
      best_score = score;
      best_h = h;
    }
  }
  return best_h;
}

SparsityReport decompose_sparse_dense(const MetricInstance& instance,
                                      const ClusterTree& tree,
                                      const SparsityParams& params,
                                      const PartitionParams& partition, Rng& rng) {
  SparsityReport report;
  const PointSet all = instance.all_points();
  std::optional<SparsityViolation> violation = find_sparsity_violation(instance, tree, params.q);
  if (!violation) {
    report.sparse_part = all;
    report.parts.push_back(all);
    return report;
  }
  report.violating = violation;

  // `ids` maps the current sub-instance back to the caller's ids.
  PointSet ids = all;
  MetricInstance current = instance;
  ClusterTree current_tree = tree;
  while (true) {
    const double h = choose_cut_radius(current, current_tree, *violation, params);
    const PointSet dense_local = ball_members(current, Ball{violation->center, h});
    PointSet dense, sparse;
    {
      std::size_t j = 0;
      for (PointId local = 0; local < current.size(); ++local) {
        if (j < dense_local.size() && dense_local[j] == local) {
          dense.push_back(ids[local]);
          ++j;
        } else {
          sparse.push_back(ids[local]);
        }
      }
    }
    report.steps.push_back(SparsityStep{ids[violation->center], violation->level,
                                        violation->q_star, h, sparse.size(), dense.size()});
    if (report.steps.size() == 1) {
      report.chosen_h = h;
      report.sparse_part = sparse;
      report.dense_part = dense;
    }
    if (!sparse.empty()) report.parts.push_back(sparse);
    // No shrink (or nothing left to split): the dense core is final.
    if (sparse.empty() || dense.size() < 2) {
      report.parts.push_back(dense);
      break;
    }
    ids = dense;
    current = instance.restrict(ids);
    current_tree = build_tree_with_portals(current, adapt_partition_params(current, partition), rng);
    violation = find_sparsity_violation(current, current_tree, params.q);
    if (!violation) {
      report.parts.push_back(ids);
      break;
    }
  }
  return report;
}

}  // namespace ecss
