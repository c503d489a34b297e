#include "ecss/dp.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>

namespace ecss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Trail {
  EdgeList edges;
  std::shared_ptr<const Trail> left;
  std::shared_ptr<const Trail> right;
};

struct Stub {
  PointId p = 0;
  int count = 0;
  int node = 0;
};

// Partial solution inside a cluster (or a prefix of its children).
struct State {
  std::vector<Stub> stubs;  // sorted by point
  int nodes = 0;
  std::vector<std::pair<int, int>> links;  // bridges once reduced
  double w = 0.0;
  double priority = 0.0;
  std::shared_ptr<const Trail> trail;
  std::string key;
};

using Table = std::vector<State>;

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Reused per thread; the DP calls these helpers millions of times on graphs
// with a handful of nodes.
struct Scratch {
  std::vector<int> start, to, eid, tin, low, comp, stack, iter;
  std::vector<char> seen;
  std::vector<std::uint64_t> node_mask, comp_mask, splits;

  // Flat adjacency of a small multigraph.
  void build(int n, const std::vector<std::pair<int, int>>& links) {
    start.assign(n + 2, 0);
    for (auto [x, y] : links) {
      ++start[x + 2];
      ++start[y + 2];
    }
    for (int v = 2; v < n + 2; ++v) start[v] += start[v - 1];
    to.resize(2 * links.size());
    eid.resize(2 * links.size());
    for (int e = 0; e < static_cast<int>(links.size()); ++e) {
      const auto [x, y] = links[e];
      to[start[x + 1]] = y;
      eid[start[x + 1]++] = e;
      to[start[y + 1]] = x;
      eid[start[y + 1]++] = e;
    }
  }
  int begin(int v) const { return start[v]; }
  int end(int v) const { return start[v + 1]; }
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

void small_bridges(int n, const std::vector<std::pair<int, int>>& links, std::vector<char>& bridge) {
  Scratch& sc = scratch();
  sc.build(n, links);
  sc.tin.assign(n, -1);
  sc.low.assign(n, 0);
  bridge.assign(links.size(), 0);
  int timer = 0;
  auto dfs = [&](auto&& self, int v, int via) -> void {
    sc.tin[v] = sc.low[v] = timer++;
    for (int k = sc.begin(v); k < sc.end(v); ++k) {
      const int w = sc.to[k], e = sc.eid[k];
      if (e == via) continue;
      if (sc.tin[w] >= 0) {
        sc.low[v] = std::min(sc.low[v], sc.tin[w]);
      } else {
        self(self, w, e);
        sc.low[v] = std::min(sc.low[v], sc.low[w]);
        if (sc.low[w] > sc.tin[v]) bridge[e] = 1;
      }
    }
  };
  for (int v = 0; v < n; ++v) {
    if (sc.tin[v] < 0) dfs(dfs, v, -1);
  }
}

template <typename T>
void append_raw(std::string& key, T value) {
  key.append(reinterpret_cast<const char*>(&value), sizeof(T));
}

// Canonical key: stubs with their node and component, then the bridge splits
// as stub masks taken on the side away from the component's first stub.
void build_key(State& s) {
  if (s.stubs.size() > 64) throw std::length_error("too many open stubs in a DP state");
  const int n = s.nodes;
  Scratch& sc = scratch();
  sc.build(n, s.links);
  sc.node_mask.assign(n, 0);
  for (std::size_t i = 0; i < s.stubs.size(); ++i) sc.node_mask[s.stubs[i].node] |= 1ULL << i;
  sc.comp.assign(n, -1);
  sc.comp_mask.clear();
  for (int v = 0; v < n; ++v) {
    if (sc.comp[v] >= 0) continue;
    const int c = static_cast<int>(sc.comp_mask.size());
    sc.comp_mask.push_back(0);
    sc.comp[v] = c;
    sc.stack.assign(1, v);
    while (!sc.stack.empty()) {
      const int x = sc.stack.back();
      sc.stack.pop_back();
      sc.comp_mask[c] |= sc.node_mask[x];
      for (int k = sc.begin(x); k < sc.end(x); ++k) {
        if (sc.comp[sc.to[k]] < 0) {
          sc.comp[sc.to[k]] = c;
          sc.stack.push_back(sc.to[k]);
        }
      }
    }
  }
  sc.splits.clear();
  for (int e = 0; e < static_cast<int>(s.links.size()); ++e) {
    sc.seen.assign(n, 0);
    const int root = s.links[e].second;
    std::uint64_t mask = 0;
    sc.stack.assign(1, root);
    sc.seen[root] = 1;
    while (!sc.stack.empty()) {
      const int x = sc.stack.back();
      sc.stack.pop_back();
      mask |= sc.node_mask[x];
      for (int k = sc.begin(x); k < sc.end(x); ++k) {
        if (sc.eid[k] != e && !sc.seen[sc.to[k]]) {
          sc.seen[sc.to[k]] = 1;
          sc.stack.push_back(sc.to[k]);
        }
      }
    }
    const std::uint64_t whole = sc.comp_mask[sc.comp[root]];
    if (mask & whole & (~whole + 1)) mask = whole ^ mask;
    sc.splits.push_back(mask);
  }
  std::sort(sc.splits.begin(), sc.splits.end());
  s.key.clear();
  s.key.reserve(s.stubs.size() * 8 + sc.splits.size() * 8 + 1);
  for (const Stub& st : s.stubs) {
    append_raw(s.key, st.p);
    append_raw(s.key, static_cast<std::uint16_t>(st.count));
    append_raw(s.key, static_cast<std::uint8_t>(st.node));
    append_raw(s.key, static_cast<std::uint8_t>(sc.comp[st.node]));
  }
  s.key.push_back('|');
  for (std::uint64_t m : sc.splits) append_raw(s.key, m);
}

// Contracts 2-edge-connected pieces, drops dead ends and suppresses
// pass-through branch nodes. Returns false when the partial solution can no
// longer be completed. In final mode only a single bridgeless piece with no
// stubs survives.
bool reduce(State& s, bool final_mode) {
  const int n = s.nodes;
  struct Work {
    std::vector<char> is_bridge, term, alive;
    std::vector<int> parent, id_of_root, cls, deg, nid;
    std::vector<std::pair<int, int>> br;
  };
  thread_local Work wk;
  std::vector<char>& is_bridge = wk.is_bridge;
  small_bridges(n, s.links, is_bridge);
  std::vector<int>& parent = wk.parent;
  parent.resize(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t e = 0; e < s.links.size(); ++e) {
    if (!is_bridge[e]) {
      parent[find_root(parent, s.links[e].first)] = find_root(parent, s.links[e].second);
    }
  }
  std::vector<int>& id_of_root = wk.id_of_root;
  std::vector<int>& cls = wk.cls;
  id_of_root.assign(n, -1);
  cls.resize(n);
  int m = 0;
  for (int v = 0; v < n; ++v) {
    const int r = find_root(parent, v);
    if (id_of_root[r] < 0) id_of_root[r] = m++;
    cls[v] = id_of_root[r];
  }
  std::vector<std::pair<int, int>>& br = wk.br;
  br.clear();
  for (std::size_t e = 0; e < s.links.size(); ++e) {
    if (is_bridge[e]) br.push_back({cls[s.links[e].first], cls[s.links[e].second]});
  }
  for (Stub& st : s.stubs) st.node = cls[st.node];
  if (final_mode) {
    if (!s.stubs.empty() || m != 1 || !br.empty()) return false;
    s.nodes = 1;
    s.links.clear();
    s.key = "closed";
    return true;
  }

  std::vector<char>& term = wk.term;
  std::vector<char>& alive = wk.alive;
  term.assign(m, 0);
  alive.assign(m, 1);
  for (const Stub& st : s.stubs) term[st.node] = 1;
  std::vector<int>& deg = wk.deg;
  deg.assign(m, 0);
  for (auto [a, b] : br) {
    ++deg[a];
    ++deg[b];
  }
  for (int v = 0; v < m; ++v) {
    if (term[v]) continue;
    if (deg[v] <= 1) return false;
    if (deg[v] == 2) {
      int e1 = -1, e2 = -1;
      for (int i = 0; i < static_cast<int>(br.size()); ++i) {
        if (br[i].first == v || br[i].second == v) (e1 < 0 ? e1 : e2) = i;
      }
      const int a = br[e1].first == v ? br[e1].second : br[e1].first;
      const int b = br[e2].first == v ? br[e2].second : br[e2].first;
      br[e1] = {a, b};
      br[e2] = {-1, -1};
      alive[v] = 0;
    }
  }
  std::vector<int>& nid = wk.nid;
  nid.assign(m, -1);
  int next = 0;
  for (const Stub& st : s.stubs) {
    if (nid[st.node] < 0) nid[st.node] = next++;
  }
  for (int v = 0; v < m; ++v) {
    if (alive[v] && nid[v] < 0) nid[v] = next++;
  }
  for (Stub& st : s.stubs) st.node = nid[st.node];
  s.links.clear();
  for (auto [a, b] : br) {
    if (a >= 0) s.links.push_back({nid[a], nid[b]});
  }
  s.nodes = next;
  build_key(s);
  return true;
}

// Keyed table keeping the cheapest entry per key and, when limited, only the
// best `limit` entries by priority.
class TableBuilder {
 public:
  TableBuilder(std::size_t limit, double bound) : limit_(limit), threshold_(bound) {}

  double threshold() const { return threshold_; }

  // `attach` runs only on states that are actually stored.
  template <typename Attach>
  void offer(State&& s, Attach&& attach) {
    if (s.priority > threshold_) return;
    auto it = index_.find(s.key);
    if (it != index_.end()) {
      if (s.w < states_[it->second].w) {
        attach(s);
        states_[it->second] = std::move(s);
      }
      return;
    }
    attach(s);
    index_.emplace(s.key, states_.size());
    states_.push_back(std::move(s));
    if (limit_ > 0 && states_.size() > 2 * limit_) trim();
  }

  void offer(State&& s) {
    offer(std::move(s), [](State&) {});
  }

  Table finish() {
    if (limit_ > 0 && states_.size() > limit_) trim();
    std::sort(states_.begin(), states_.end(), [](const State& a, const State& b) {
      return a.w != b.w ? a.w < b.w : a.key < b.key;
    });
    index_.clear();
    return std::move(states_);
  }

 private:
  void trim() {
    auto by_priority = [](const State& a, const State& b) {
      return a.priority != b.priority ? a.priority < b.priority : a.key < b.key;
    };
    std::nth_element(states_.begin(), states_.begin() + (limit_ - 1), states_.end(), by_priority);
    threshold_ = states_[limit_ - 1].priority;
    states_.resize(limit_);
    index_.clear();
    for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i].key, i);
  }

  std::size_t limit_;
  double threshold_;
  std::vector<State> states_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct FoldContext {
  int cluster = 0;
  bool last = false;
  bool final_mode = false;
  int crossing_limit = 0;
  int open_cap = 0;
  std::size_t limit = 0;
  const std::vector<double>* near_out = nullptr;
};

class Solver {
 public:
  Solver(const MetricInstance& instance, const ClusterTree& tree, const DpParams& params)
      : inst_(instance), tree_(tree), params_(params), n_(instance.size()) {}

  DpResult run() {
    if (n_ < 3) throw InvalidInstance("the DP needs at least 3 points");
    std::vector<Table> tables(tree_.clusters.size());
    for (int level = tree_.depth; level >= 0; --level) {
      for (int id : tree_.levels[level]) {
        tables[id] = solve_cluster(id, tables);
        stats_.max_table_size = std::max(stats_.max_table_size, tables[id].size());
        ++stats_.clusters;
        for (int child : tree_[id].children) Table().swap(tables[child]);
        if (tables[id].empty()) {
          throw NoFeasibleConfiguration("no feasible configuration at cluster " +
                                        std::to_string(id));
        }
      }
    }
    const Table& root = tables[tree_.root()];
    const State* best = nullptr;
    for (const State& s : root) {
      if (s.stubs.empty() && (!best || s.w < best->w)) best = &s;
    }
    if (!best) throw NoFeasibleConfiguration("root has no closed configuration");

    EdgeList edges;
    std::vector<const Trail*> stack{best->trail.get()};
    while (!stack.empty()) {
      const Trail* t = stack.back();
      stack.pop_back();
      if (!t) continue;
      edges.insert(edges.end(), t->edges.begin(), t->edges.end());
      stack.push_back(t->left.get());
      stack.push_back(t->right.get());
    }
    DpResult result;
    result.solution = make_solution(inst_, normalized(std::move(edges)));
    result.stats = stats_;
    if (!result.solution.feasible) {
      throw std::logic_error("DP reconstruction is not 2-edge-connected");
    }
    return result;
  }

 private:
  std::vector<double> nearest_outside(const std::vector<char>& inside) const {
    std::vector<double> near(n_, 0.0);
    for (PointId p = 0; p < n_; ++p) {
      if (!inside[p]) continue;
      double best = kInf;
      for (PointId q = 0; q < n_; ++q) {
        if (!inside[q]) best = std::min(best, inst_(p, q));
      }
      near[p] = best == kInf ? 0.0 : best;
    }
    return near;
  }

  double bound() const { return params_.upper_bound * (1.0 + 1e-12) + kDistEps; }

  bool boundary_ok(const State& s, int cluster) const {
    int total = 0;
    for (const Stub& st : s.stubs) {
      if (!tree_.is_portal(cluster, st.p)) return false;
      total += st.count;
    }
    return total <= params_.crossing_limit;
  }

  Table leaf_table(int id) {
    const PointId p = tree_[id].members.front();
    TableBuilder out(params_.table_limit, bound());
    const int top = std::min<int>(params_.usage_cap, static_cast<int>(n_) - 1);
    for (int u = 2; u <= top && u <= params_.crossing_limit; ++u) {
      State s;
      s.stubs.push_back({p, u, 0});
      s.nodes = 1;
      build_key(s);
      s.priority = 0.0;
      ++stats_.configs_enumerated;
      out.offer(std::move(s));
    }
    return out.finish();
  }

  // Children in nearest-neighbour order of their centers.
  std::vector<int> child_order(const Cluster& c) const {
    std::vector<int> rest = c.children;
    std::vector<int> order;
    order.push_back(rest.front());
    rest.erase(rest.begin());
    while (!rest.empty()) {
      const PointId from = tree_[order.back()].center;
      std::size_t best = 0;
      for (std::size_t i = 1; i < rest.size(); ++i) {
        if (inst_(from, tree_[rest[i]].center) < inst_(from, tree_[rest[best]].center)) best = i;
      }
      order.push_back(rest[best]);
      rest.erase(rest.begin() + best);
    }
    return order;
  }

  Table solve_cluster(int id, std::vector<Table>& tables) {
    const Cluster& c = tree_[id];
    if (c.children.empty()) return leaf_table(id);
    const bool all = c.members.size() == n_;
    if (c.children.size() == 1) {
      Table out;
      for (State& s : tables[c.children.front()]) {
        if (all ? s.stubs.empty() : boundary_ok(s, id)) out.push_back(std::move(s));
      }
      return out;
    }
    const std::vector<int> order = child_order(c);
    std::vector<char> inside(n_, 0);
    for (PointId p : tree_[order[0]].members) inside[p] = 1;
    Table acc = std::move(tables[order[0]]);
    for (std::size_t j = 1; j < order.size(); ++j) {
      for (PointId p : tree_[order[j]].members) inside[p] = 1;
      const std::vector<double> near = nearest_outside(inside);
      FoldContext ctx;
      ctx.cluster = id;
      ctx.last = j + 1 == order.size();
      ctx.final_mode = ctx.last && all;
      ctx.crossing_limit = params_.crossing_limit;
      ctx.open_cap = 2 * params_.crossing_limit;
      ctx.limit = params_.table_limit;
      ctx.near_out = &near;
      acc = fold(acc, tables[order[j]], ctx);
      if (acc.empty()) break;
    }
    return acc;
  }

  Table fold(const Table& acc, const Table& child, const FoldContext& ctx) {
    TableBuilder out(ctx.limit, bound());
    if (child.empty()) return out.finish();
    std::vector<int> ra, rc;
    std::vector<std::pair<int, int>> chosen;
    const std::vector<double>& near = *ctx.near_out;
    auto must_close = [&](PointId p) {
      return ctx.final_mode || (ctx.last && !tree_.is_portal(ctx.cluster, p));
    };
    for (const State& a : acc) {
      if (a.w + child.front().w > out.threshold()) break;
      for (const State& c : child) {
        if (a.w + c.w > out.threshold()) break;
        const int na = static_cast<int>(a.stubs.size());
        const int nc = static_cast<int>(c.stubs.size());
        ra.resize(na);
        rc.resize(nc);
        for (int i = 0; i < na; ++i) ra[i] = a.stubs[i].count;
        for (int j = 0; j < nc; ++j) rc[j] = c.stubs[j].count;
        chosen.clear();


        const int cap = ctx.last ? ctx.crossing_limit : ctx.open_cap;
        std::vector<char> close_a(na), close_c(nc);
        for (int i = 0; i < na; ++i) close_a[i] = must_close(a.stubs[i].p);
        for (int j = 0; j < nc; ++j) close_c[j] = must_close(c.stubs[j].p);
        double base_extra = 0.0;
        for (int i = 0; i < na; ++i) base_extra += ra[i] * near[a.stubs[i].p];
        for (int j = 0; j < nc; ++j) base_extra += rc[j] * near[c.stubs[j].p];

        // Best possible drop in priority per remaining edge of each row.
        std::vector<double> gain(na, 0.0);
        for (int i = 0; i < na; ++i) {
          for (int j = 0; j < nc; ++j) {
            gain[i] = std::max(gain[i], 0.5 * (near[a.stubs[i].p] + near[c.stubs[j].p]) -
                                            inst_(a.stubs[i].p, c.stubs[j].p));
          }
        }
        auto hopeless = [&](int i, double added, double extra) {
          double bound = a.w + c.w + added + 0.5 * extra;
          for (int x = i; x < na; ++x) bound -= ra[x] * gain[x];
          return bound > out.threshold();
        };

        auto emit = [&](double added, double extra) {
          const double priority = a.w + c.w + added + 0.5 * extra;
          if (priority > out.threshold()) return;
          State s;
          s.nodes = a.nodes + c.nodes;
          s.w = a.w + c.w + added;
          s.priority = priority;
          s.stubs.reserve(na + nc);
          int i = 0, j = 0;
          while (i < na || j < nc) {
            if (j >= nc || (i < na && a.stubs[i].p < c.stubs[j].p)) {
              if (ra[i] > 0) s.stubs.push_back({a.stubs[i].p, ra[i], a.stubs[i].node});
              ++i;
            } else {
              if (rc[j] > 0) s.stubs.push_back({c.stubs[j].p, rc[j], c.stubs[j].node + a.nodes});
              ++j;
            }
          }
          s.links.reserve(a.links.size() + c.links.size() + chosen.size());
          s.links = a.links;
          for (auto [x, y] : c.links) s.links.push_back({x + a.nodes, y + a.nodes});
          for (auto [x, y] : chosen) s.links.push_back({a.stubs[x].node, c.stubs[y].node + a.nodes});
          ++stats_.configs_enumerated;
          if (!reduce(s, ctx.final_mode)) return;
          out.offer(std::move(s), [&](State& kept) {
            auto trail = std::make_shared<Trail>();
            for (auto [x, y] : chosen) trail->edges.push_back(make_edge(a.stubs[x].p, c.stubs[y].p));
            trail->left = a.trail;
            trail->right = c.trail;
            kept.trail = std::move(trail);
          });
        };

        // Position k = i * nc + j decides whether stub i of the accumulator
        // and stub j of the child get one more edge. Branches are cut when the
        // remaining rows cannot close the must-close stubs or bring the open
        // count under the cap.
        auto viable = [&](int i) {
          int rows = 0, rows_close = 0, cols = 0, cols_close = 0, open = 0;
          for (int x = 0; x < na; ++x) {
            open += ra[x];
            if (x >= i) {
              rows += ra[x];
              if (close_a[x]) rows_close += ra[x];
            } else if (close_a[x] && ra[x] > 0) {
              return false;
            }
          }
          for (int y = 0; y < nc; ++y) {
            open += rc[y];
            cols += rc[y];
            if (close_c[y]) cols_close += rc[y];
          }
          const int matches = std::min(rows, cols);
          return rows_close <= cols && cols_close <= rows && open - 2 * matches <= cap;
        };

        auto enumerate = [&](auto&& self, int i, int j, double added, double extra) -> void {
          if (hopeless(i, added, extra)) return;
          while (true) {
            if (i == na) {
              emit(added, extra);
              return;
            }
            while (j < nc && rc[j] == 0) ++j;
            if (ra[i] > 0 && j < nc) break;
            ++i;
            j = 0;
            if (!viable(i)) return;
          }
          self(self, i, j + 1, added, extra);
          --ra[i];
          --rc[j];
          chosen.push_back({i, j});
          self(self, i, j + 1, added + inst_(a.stubs[i].p, c.stubs[j].p),
               extra - near[a.stubs[i].p] - near[c.stubs[j].p]);
          chosen.pop_back();
          ++ra[i];
          ++rc[j];
        };
        if (viable(0)) enumerate(enumerate, 0, 0, 0.0, base_extra);
      }
    }
    return out.finish();
  }

  const MetricInstance& inst_;
  const ClusterTree& tree_;
  DpParams params_;
  std::size_t n_;
  DpStats stats_;
};

}  // namespace

DpResult solve_sparse_dp(const MetricInstance& instance, const ClusterTree& tree,
                         const DpParams& params) {
  return Solver(instance, tree, params).run();
}

}  // namespace ecss
