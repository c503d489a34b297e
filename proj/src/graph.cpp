#include "ecss/graph.hpp"

#include <algorithm>
#include <numeric>

namespace ecss {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

}  // namespace

double edge_weight(const MetricInstance& instance, const EdgeList& edges) {
  double w = 0.0;
  for (const Edge& e : edges) w += instance(e.u, e.v);
  return w;
}

EdgeList normalized(EdgeList edges) {
  for (Edge& e : edges) e = make_edge(e.u, e.v);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

SubgraphSolution make_solution(const MetricInstance& instance, EdgeList edges) {
  SubgraphSolution s;
  s.edges = normalized(std::move(edges));
  s.weight = edge_weight(instance, s.edges);
  s.certificate = certify_2ecss(s.edges, instance.size());
  s.infeasible_by_size = instance.size() < 3;
  s.feasible = !s.infeasible_by_size && s.certificate.spanning && s.certificate.bridgeless;
  return s;
}

SpanningTree minimum_spanning_tree(const MetricInstance& instance,
                                   const PointSet& subset) {
  SpanningTree tree;
  if (subset.size() < 2) return tree;
  std::vector<WeightedEdge> candidates;
  candidates.reserve(subset.size() * (subset.size() - 1) / 2);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      const Edge e = make_edge(subset[i], subset[j]);
      candidates.push_back({e.u, e.v, instance(e.u, e.v)});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) {
              if (a.w != b.w) return a.w < b.w;
              if (a.u != b.u) return a.u < b.u;
              return a.v < b.v;
            });
  // Union-find over local indices.
  std::vector<PointId> local(instance.size(), 0);
  for (std::size_t i = 0; i < subset.size(); ++i) local[subset[i]] = static_cast<PointId>(i);
  DisjointSets sets(subset.size());
  for (const WeightedEdge& c : candidates) {
    if (sets.unite(local[c.u], local[c.v])) {
      tree.edges.push_back({c.u, c.v});
      tree.weight += c.w;
      if (tree.edges.size() + 1 == subset.size()) break;
    }
  }
  return tree;
}

SpanningTree minimum_spanning_tree(const MetricInstance& instance) {
  return minimum_spanning_tree(instance, instance.all_points());
}

EdgeList find_bridges(const EdgeList& edges, std::size_t n) {
  std::vector<std::vector<std::pair<PointId, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].u == edges[i].v) continue;
    adj[edges[i].u].push_back({edges[i].v, i});
    adj[edges[i].v].push_back({edges[i].u, i});
  }
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::size_t> next_arc(n, 0);
  // Stack of (vertex, edge id used to enter it).
  std::vector<std::pair<PointId, std::size_t>> stack;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  EdgeList bridges;
  int timer = 0;
  for (PointId root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    disc[root] = low[root] = timer++;
    stack.push_back({root, kNone});
    while (!stack.empty()) {
      auto [v, via] = stack.back();
      if (next_arc[v] < adj[v].size()) {
        auto [w, id] = adj[v][next_arc[v]++];
        if (id == via) continue;
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, id});
        } else {
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          PointId parent = stack.back().first;
          low[parent] = std::min(low[parent], low[v]);
          if (low[v] > disc[parent]) bridges.push_back(make_edge(parent, v));
        }
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

std::vector<int> connected_components(const EdgeList& edges, std::size_t n, int* count) {
  DisjointSets sets(n);
  for (const Edge& e : edges) sets.unite(e.u, e.v);
  std::vector<int> label(n, -1);
  std::vector<int> root_label(n, -1);
  int next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = sets.find(v);
    if (root_label[r] == -1) root_label[r] = next++;
    label[v] = root_label[r];
  }
  if (count) *count = next;
  return label;
}

Certificate certify_2ecss(const EdgeList& edges, std::size_t n) {
  Certificate c;
  int components = 0;
  connected_components(edges, n, &components);
  c.spanning = components == 1;
  c.bridgeless = find_bridges(edges, n).empty();
  return c;
}

std::vector<PointId> euler_visit_order(const EdgeList& multigraph) {
  if (multigraph.empty()) return {};
  PointId max_v = 0;
  for (const Edge& e : multigraph) max_v = std::max({max_v, e.u, e.v});
  const std::size_t n = max_v + 1;
  std::vector<std::vector<std::pair<PointId, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < multigraph.size(); ++i) {
    const Edge& e = multigraph[i];
    adj[e.u].push_back({e.v, i});
    if (e.u != e.v) adj[e.v].push_back({e.u, i});
  }
  PointId start = max_v;
  for (std::size_t v = 0; v < n; ++v) {
    if (!adj[v].empty()) start = std::min<PointId>(start, static_cast<PointId>(v));
    std::sort(adj[v].begin(), adj[v].end());
    // Self-loops count twice.
    std::size_t degree = 0;
    for (auto [w, id] : adj[v]) degree += (w == v) ? 2 : 1;
    if (degree % 2 != 0) {
      throw NotEulerian("vertex " + std::to_string(v) + " has odd degree " +
                        std::to_string(degree));
    }
  }
  std::vector<bool> used(multigraph.size(), false);
  std::vector<std::size_t> next_arc(n, 0);
  std::vector<PointId> stack{start};
  std::vector<PointId> circuit;
  while (!stack.empty()) {
    const PointId v = stack.back();
    auto& arcs = adj[v];
    while (next_arc[v] < arcs.size() && used[arcs[next_arc[v]].second]) ++next_arc[v];
    if (next_arc[v] == arcs.size()) {
      circuit.push_back(v);
      stack.pop_back();
    } else {
      auto [w, id] = arcs[next_arc[v]];
      used[id] = true;
      stack.push_back(w);
    }
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw NotEulerian("multigraph is not connected");
  }
  std::reverse(circuit.begin(), circuit.end());
  std::vector<bool> seen(n, false);
  std::vector<PointId> order;
  for (PointId v : circuit) {
    if (!seen[v]) {
      seen[v] = true;
      order.push_back(v);
    }
  }
  return order;
}

EdgeList cycle_edges(const std::vector<PointId>& order) {
  EdgeList cycle;
  if (order.size() < 2) return cycle;
  if (order.size() == 2) return {make_edge(order[0], order[1])};
  for (std::size_t i = 0; i < order.size(); ++i) {
    cycle.push_back(make_edge(order[i], order[(i + 1) % order.size()]));
  }
  return cycle;
}

EdgeList shortcut_euler_tour(const MetricInstance& instance, const EdgeList& multigraph) {
  for (const Edge& e : multigraph) {
    if (e.u >= instance.size() || e.v >= instance.size()) {
      throw std::out_of_range("edge endpoint outside instance");
    }
  }
  return cycle_edges(euler_visit_order(multigraph));
}

}  // namespace ecss
