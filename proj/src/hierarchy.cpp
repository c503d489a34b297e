#include "ecss/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ecss {

int level_count(double aspect_ratio, double s) {
  int e = 0;
  double reach = 1.0;
  while (reach < aspect_ratio * (1.0 - 1e-12)) {
    reach *= s;
    ++e;
  }
  return e + 1;
}

PartitionParams default_partition_params(const MetricInstance& instance, int k,
                                         double epsilon, std::uint64_t seed) {
  PartitionParams p;
  p.k = std::max(k, 0);
  const double n = static_cast<double>(std::max<std::size_t>(instance.size(), 2));
  const double c = 32.0;
  p.s = std::max(2.0, std::pow(std::log2(n), 1.0 / (c * std::max(p.k, 1))));
  p.levels = level_count(metric_stats(instance).aspect_ratio, p.s);
  p.epsilon = epsilon;
  p.seed = seed;
  p.portal_alpha_factor = epsilon / (4.0 * p.levels);
  return p;
}

PartitionParams adapt_partition_params(const MetricInstance& instance,
                                       PartitionParams base) {
  const int levels = level_count(metric_stats(instance).aspect_ratio, base.s);
  base.portal_alpha_factor *= static_cast<double>(base.levels) / levels;
  base.levels = levels;
  return base;
}

double ClusterTree::scale_at(int level) const {
  return unit * std::pow(s, static_cast<double>(depth - 1 - level));
}

int ClusterTree::lca_level(PointId a, PointId b) const {
  int level = 0;
  while (level + 1 <= depth && cluster_of[level + 1][a] == cluster_of[level + 1][b]) ++level;
  return level;
}

bool ClusterTree::is_portal(int cluster, PointId p) const {
  const PointSet& ports = clusters[cluster].portals;
  return std::binary_search(ports.begin(), ports.end(), p);
}

std::size_t ClusterTree::max_portal_count() const {
  std::size_t m = 0;
  for (const Cluster& c : clusters) m = std::max(m, c.portals.size());
  return m;
}

double sample_radius(double scale, int k, double u) {
  if (k <= 0) return scale + u * scale;
  // Density on [S, 2S] proportional to exp(a r) with a = 8k ln2 / S.
  const double a = 8.0 * k * std::log(2.0) / scale;
  const double tail = std::exp(-a * scale);  // = 2^{-8k}, may underflow to 0
  const double v = std::max(u, 1e-300);
  const double r = 2.0 * scale + std::log(v + (1.0 - v) * tail) / a;
  return std::clamp(r, scale, 2.0 * scale);
}

ClusterTree build_cluster_tree(const MetricInstance& instance,
                               const PartitionParams& params, Rng& rng) {
  const std::size_t n = instance.size();
  const MetricStats stats = metric_stats(instance);
  ClusterTree tree;
  tree.unit = n >= 2 ? stats.min_interpoint : 1.0;
  tree.s = params.s;
  tree.depth = std::max(params.levels, 1);
  tree.levels.assign(tree.depth + 1, {});
  tree.cluster_of.assign(tree.depth + 1, std::vector<int>(n, -1));

  auto add_cluster = [&](int level, PointId center, double radius, PointSet members,
                         int parent) {
    Cluster c;
    c.id = static_cast<int>(tree.clusters.size());
    c.level = level;
    c.center = center;
    c.radius = radius;
    c.scale = tree.scale_at(level);
    c.members = std::move(members);
    c.parent = parent;
    for (PointId p : c.members) tree.cluster_of[level][p] = c.id;
    tree.levels[level].push_back(c.id);
    if (parent >= 0) tree.clusters[parent].children.push_back(c.id);
    tree.clusters.push_back(std::move(c));
  };

  std::vector<PointId> perm = instance.all_points();
  std::vector<std::size_t> rank(n);

  // Root: the whole space; its scale already dominates the diameter.
  rng.shuffle(perm);
  const double root_scale = tree.scale_at(0);
  add_cluster(0, perm.front(), sample_radius(root_scale, params.k, rng.uniform()),
              instance.all_points(), -1);

  std::vector<bool> assigned(n);
  for (int level = 1; level < tree.depth; ++level) {
    rng.shuffle(perm);
    for (std::size_t i = 0; i < n; ++i) rank[perm[i]] = i;
    const double scale = tree.scale_at(level);
    std::fill(assigned.begin(), assigned.end(), false);
    for (int parent_id : tree.levels[level - 1]) {
      PointSet order = tree.clusters[parent_id].members;
      std::sort(order.begin(), order.end(),
                [&](PointId a, PointId b) { return rank[a] < rank[b]; });
      for (PointId center : order) {
        if (assigned[center]) continue;
        const double radius = sample_radius(scale, params.k, rng.uniform());
        PointSet members;
        for (PointId p : tree.clusters[parent_id].members) {
          if (!assigned[p] && instance(center, p) <= radius) {
            assigned[p] = true;
            members.push_back(p);
          }
        }
        add_cluster(level, center, radius, std::move(members), parent_id);
      }
    }
  }
  for (PointId p = 0; p < n; ++p) {
    add_cluster(tree.depth, p, 0.0, PointSet{p}, tree.cluster_of[tree.depth - 1][p]);
  }
  return tree;
}

std::vector<std::string> validate_cluster_tree(const ClusterTree& tree,
                                               const MetricInstance& instance) {
  std::vector<std::string> violations;
  const std::size_t n = instance.size();
  if (tree.levels.empty() || tree.levels.front().size() != 1 ||
      tree.clusters[tree.root()].members.size() != n) {
    violations.push_back("root: level 0 is not a single cluster holding every point");
  }
  for (std::size_t level = 0; level < tree.levels.size(); ++level) {
    std::vector<int> seen(n, 0);
    for (int id : tree.levels[level]) {
      for (PointId p : tree.clusters[id].members) {
        if (p < n) ++seen[p];
      }
    }
    for (PointId p = 0; p < n; ++p) {
      if (seen[p] > 1) {
        violations.push_back("disjointness: point " + std::to_string(p) + " appears " +
                             std::to_string(seen[p]) + " times at level " +
                             std::to_string(level));
      } else if (seen[p] == 0) {
        violations.push_back("cover: point " + std::to_string(p) + " missing at level " +
                             std::to_string(level));
      }
    }
  }
  for (int id : tree.levels.back()) {
    if (tree.clusters[id].members.size() != 1) {
      violations.push_back("leaves: cluster " + std::to_string(id) + " is not a singleton");
    }
  }
  for (const Cluster& c : tree.clusters) {
    for (PointId p : c.members) {
      if (instance(c.center, p) > c.radius + kDistEps) {
        violations.push_back("containment: point " + std::to_string(p) +
                             " outside ball of cluster " + std::to_string(c.id));
        break;
      }
    }
    if (!c.children.empty()) {
      PointSet merged;
      for (int child : c.children) {
        const Cluster& ch = tree.clusters[child];
        if (ch.parent != c.id || ch.level != c.level + 1) {
          violations.push_back("nesting: cluster " + std::to_string(child) +
                               " has inconsistent parent link");
        }
        merged.insert(merged.end(), ch.members.begin(), ch.members.end());
      }
      std::sort(merged.begin(), merged.end());
      if (merged != c.members) {
        violations.push_back("nesting: children of cluster " + std::to_string(c.id) +
                             " do not partition it");
      }
    } else if (c.level != static_cast<int>(tree.levels.size()) - 1) {
      violations.push_back("nesting: inner cluster " + std::to_string(c.id) +
                           " has no children");
    }
  }
  return violations;
}

std::vector<PointSet> assign_portals(const ClusterTree& tree,
                                     const MetricInstance& instance,
                                     const PartitionParams& params) {
  std::vector<PointSet> portals(tree.clusters.size());
  for (const auto& level_ids : tree.levels) {
    for (int id : level_ids) {
      const Cluster& c = tree.clusters[id];
      PointSet seeds;
      if (c.parent >= 0) {
        for (PointId p : portals[c.parent]) {
          if (std::binary_search(c.members.begin(), c.members.end(), p)) seeds.push_back(p);
        }
      }
      double alpha = params.portal_alpha_factor * c.scale;
      PointSet net = build_net_seeded(instance, c.members, seeds, alpha);
      if (params.portal_cap > 0) {
        const double diam = metric_stats(instance, c.members).diameter;
        while (net.size() > params.portal_cap && alpha <= diam) {
          alpha = alpha > 0.0 ? 2.0 * alpha : tree.unit;
          net = build_net_seeded(instance, c.members, seeds, alpha);
        }
        if (net.size() > params.portal_cap) {
          net = seeds.empty() ? PointSet{c.members.front()} : seeds;
        }
      }
      portals[id] = std::move(net);
    }
  }
  return portals;
}

ClusterTree build_tree_with_portals(const MetricInstance& instance,
                                    const PartitionParams& params, Rng& rng) {
  ClusterTree tree = build_cluster_tree(instance, params, rng);
  std::vector<PointSet> portals = assign_portals(tree, instance, params);
  for (Cluster& c : tree.clusters) {
    c.portals = std::move(portals[c.id]);
    double cover = 0.0;
    for (PointId p : c.members) {
      double nearest = std::numeric_limits<double>::infinity();
      for (PointId q : c.portals) nearest = std::min(nearest, instance(p, q));
      cover = std::max(cover, nearest);
    }
    c.portal_alpha = std::max(params.portal_alpha_factor * c.scale, cover);
  }
  return tree;
}

double estimate_cut_probability(const MetricInstance& instance,
                                const PartitionParams& params, PointId u, PointId v,
                                int level, int trials) {
  return estimate_cut_probabilities(instance, params, {{u, v}}, level, trials).front();
}

std::vector<double> estimate_cut_probabilities(
    const MetricInstance& instance, const PartitionParams& params,
    const std::vector<std::pair<PointId, PointId>>& pairs, int level, int trials) {
  std::vector<long> cuts(pairs.size(), 0);
  Rng rng(params.seed);
  for (int t = 0; t < trials; ++t) {
    const ClusterTree tree = build_cluster_tree(instance, params, rng);
    const int lv = std::clamp(level, 0, tree.depth);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (tree.cluster_of[lv][pairs[i].first] != tree.cluster_of[lv][pairs[i].second]) {
        ++cuts[i];
      }
    }
  }
  std::vector<double> prob(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    prob[i] = static_cast<double>(cuts[i]) / std::max(trials, 1);
  }
  return prob;
}

}  // namespace ecss
