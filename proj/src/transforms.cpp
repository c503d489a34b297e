#include "ecss/transforms.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace ecss {

namespace {

bool contains(const PointSet& set, PointId p) {
  return std::binary_search(set.begin(), set.end(), p);
}

// Components among the given vertices (those touched by the reference graph).
int components_among(const EdgeList& edges, std::size_t n, const std::vector<PointId>& vertices) {
  const std::vector<int> label = connected_components(edges, n);
  std::set<int> seen;
  for (PointId v : vertices) seen.insert(label[v]);
  return static_cast<int>(seen.size());
}

// Depth-first preorder rank of each point of P along MST(P).
std::map<PointId, int> mst_preorder(const MetricInstance& instance, const PointSet& points) {
  const SpanningTree mst = minimum_spanning_tree(instance, points);
  std::map<PointId, std::vector<PointId>> adj;
  for (const Edge& e : mst.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& [p, nb] : adj) std::sort(nb.begin(), nb.end());
  std::map<PointId, int> rank;
  std::vector<PointId> stack{points.front()};
  while (!stack.empty()) {
    const PointId p = stack.back();
    stack.pop_back();
    if (rank.count(p)) continue;
    rank.emplace(p, static_cast<int>(rank.size()));
    const auto& nb = adj[p];
    for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
      if (!rank.count(*it)) stack.push_back(*it);
    }
  }
  return rank;
}

EdgeList pair_up(std::vector<PointId> ends, const std::map<PointId, int>& rank, bool offset) {
  std::stable_sort(ends.begin(), ends.end(),
                   [&](PointId a, PointId b) { return rank.at(a) < rank.at(b); });
  EdgeList out;
  const std::size_t k = ends.size();
  for (std::size_t i = 0; i + 1 < k; i += 2) {
    const PointId a = ends[(i + (offset ? 1 : 0)) % k];
    const PointId b = ends[(i + 1 + (offset ? 1 : 0)) % k];
    if (a != b) out.push_back(make_edge(a, b));
  }
  return out;
}

}  // namespace

std::size_t count_crossings(const EdgeList& edges, const PointSet& cluster) {
  std::size_t count = 0;
  for (const Edge& e : edges) {
    if (contains(cluster, e.u) != contains(cluster, e.v)) ++count;
  }
  return count;
}

bool PatchResult::within_bound() const {
  return crossings_after <= std::min<std::size_t>(crossings_before, 2) &&
         added_weight <= mst_bound + kDistEps;
}

PatchResult patch_crossings(const MetricInstance& instance, const EdgeList& edges,
                            const PointSet& cluster) {
  PatchResult result;
  result.edges = edges;
  std::vector<std::size_t> crossing;
  PointSet ends;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (contains(cluster, edges[i].u) != contains(cluster, edges[i].v)) {
      crossing.push_back(i);
      ends.push_back(edges[i].u);
      ends.push_back(edges[i].v);
    }
  }
  result.crossings_before = result.crossings_after = crossing.size();
  if (crossing.size() <= 2) return result;

  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  result.mst_bound = 4.0 * minimum_spanning_tree(instance, ends).weight;
  const std::map<PointId, int> rank = mst_preorder(instance, ends);

  std::vector<PointId> touched;
  for (const Edge& e : edges) {
    touched.push_back(e.u);
    touched.push_back(e.v);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  const std::size_t n = instance.size();
  const int base_components = components_among(edges, n, touched);

  const std::size_t t = crossing.size();
  const std::size_t keep = t % 2 == 0 ? 2 : 1;
  std::vector<std::vector<std::size_t>> keep_choices;
  for (std::size_t i = 0; i < t; ++i) {
    if (keep == 1) {
      keep_choices.push_back({i});
    } else {
      for (std::size_t j = i + 1; j < t; ++j) keep_choices.push_back({i, j});
    }
  }

  double best_delta = std::numeric_limits<double>::infinity();
  bool best_connected = false;
  for (const auto& kept : keep_choices) {
    std::vector<bool> removed(edges.size(), false);
    std::vector<PointId> in_ends, out_ends;
    double removed_weight = 0.0;
    for (std::size_t c = 0; c < t; ++c) {
      if (std::find(kept.begin(), kept.end(), c) != kept.end()) continue;
      const Edge& e = edges[crossing[c]];
      removed[crossing[c]] = true;
      removed_weight += instance(e.u, e.v);
      const bool u_in = contains(cluster, e.u);
      in_ends.push_back(u_in ? e.u : e.v);
      out_ends.push_back(u_in ? e.v : e.u);
    }
    EdgeList base;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!removed[i]) base.push_back(edges[i]);
    }
    for (int in_phase = 0; in_phase < 2; ++in_phase) {
      if (in_phase == 1 && in_ends.size() <= 2) continue;
      const EdgeList in_pairs = pair_up(in_ends, rank, in_phase == 1);
      for (int out_phase = 0; out_phase < 2; ++out_phase) {
        if (out_phase == 1 && out_ends.size() <= 2) continue;
        const EdgeList out_pairs = pair_up(out_ends, rank, out_phase == 1);
        EdgeList candidate = base;
        double added = 0.0;
        for (const Edge& e : in_pairs) {
          candidate.push_back(e);
          added += instance(e.u, e.v);
        }
        for (const Edge& e : out_pairs) {
          candidate.push_back(e);
          added += instance(e.u, e.v);
        }
        const bool connected = components_among(candidate, n, touched) <= base_components;
        const double delta = added - removed_weight;
        const bool better = (connected && !best_connected) ||
                            (connected == best_connected && delta < best_delta - kDistEps);
        if (better) {
          best_delta = delta;
          best_connected = connected;
          result.edges = std::move(candidate);
          result.added_weight = added;
          result.removed_weight = removed_weight;
        }
      }
    }
  }
  result.connected = best_connected;
  result.crossings_after = count_crossings(result.edges, cluster);
  return result;
}

WellBehavedResult make_well_behaved(const MetricInstance& instance, const ClusterTree& tree,
                                    const EdgeList& edges, double epsilon) {
  WellBehavedResult result;
  result.input_weight = edge_weight(instance, edges);
  result.bound = (1.0 + 6.0 * epsilon) * result.input_weight;

  // Climbs from p (a leaf) to a portal of p's cluster at `top`, hopping to the
  // nearest portal whenever the current point is not one.
  auto climb = [&](PointId p, int top, EdgeList& out) {
    PointId cur = p;
    for (int level = tree.depth - 1; level >= top; --level) {
      const int id = tree.cluster_at(level, cur);
      if (tree.is_portal(id, cur)) continue;
      PointId best = cur;
      double best_d = std::numeric_limits<double>::infinity();
      for (PointId q : tree[id].portals) {
        const double d = instance(cur, q);
        if (d < best_d) {
          best_d = d;
          best = q;
        }
      }
      out.push_back(make_edge(cur, best));
      cur = best;
    }
    return cur;
  };

  for (const Edge& e : edges) {
    if (e.u == e.v) {
      result.edges.push_back(e);
      continue;
    }
    const int child_level = tree.lca_level(e.u, e.v) + 1;
    const bool u_ok = tree.is_portal(tree.cluster_at(child_level, e.u), e.u);
    const bool v_ok = tree.is_portal(tree.cluster_at(child_level, e.v), e.v);
    if (u_ok && v_ok) {
      result.edges.push_back(e);
      continue;
    }
    ++result.rerouted;
    const PointId x = climb(e.u, child_level, result.edges);
    const PointId y = climb(e.v, child_level, result.edges);
    result.edges.push_back(make_edge(x, y));
  }
  result.output_weight = edge_weight(instance, result.edges);
  return result;
}

std::size_t count_non_portal_crossings(const ClusterTree& tree, const EdgeList& edges) {
  std::size_t bad = 0;
  for (const Edge& e : edges) {
    if (e.u == e.v) continue;
    const int lca = tree.lca_level(e.u, e.v);
    for (int level = lca + 1; level <= tree.depth; ++level) {
      if (!tree.is_portal(tree.cluster_at(level, e.u), e.u) ||
          !tree.is_portal(tree.cluster_at(level, e.v), e.v)) {
        ++bad;
        break;
      }
    }
  }
  return bad;
}

}  // namespace ecss
