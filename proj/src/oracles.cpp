#include "ecss/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

namespace ecss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_size(const MetricInstance& instance, std::size_t lo, std::size_t hi,
                  const std::string& what) {
  if (instance.size() < lo || instance.size() > hi) {
    throw InvalidInstance(what + " needs " + std::to_string(lo) + " <= n <= " +
                          std::to_string(hi) + ", got " + std::to_string(instance.size()));
  }
}

class BranchAndBound {
 public:
  explicit BranchAndBound(const MetricInstance& instance) : inst_(instance), n_(instance.size()) {
    for (PointId u = 0; u < n_; ++u) {
      for (PointId v = u + 1; v < n_; ++v) edges_.push_back({u, v});
    }
    std::stable_sort(edges_.begin(), edges_.end(), [&](const Edge& a, const Edge& b) {
      return inst_(a.u, a.v) < inst_(b.u, b.v);
    });
    incident_.resize(n_);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      incident_[edges_[i].u].push_back(static_cast<int>(i));
      incident_[edges_[i].v].push_back(static_cast<int>(i));
    }
  }

  OracleResult run() {
    const OracleResult tour = held_karp_tsp(inst_);
    best_weight_ = tour.weight;
    best_edges_ = tour.edges;
    std::vector<int> degree(n_, 0);
    search(0, 0, 0.0, degree);
    return {best_weight_, best_edges_, "brute-2ecss"};
  }

 private:
  EdgeList edge_list(std::uint64_t included) const {
    EdgeList out;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (included >> i & 1ULL) out.push_back(edges_[i]);
    }
    return normalized(std::move(out));
  }

  void search(std::uint64_t included, std::uint64_t excluded, double weight,
              std::vector<int>& degree) {
    const std::uint64_t used = included | excluded;
    double bound = 0.0;
    for (PointId v = 0; v < n_; ++v) {
      int need = 2 - degree[v];
      for (int e : incident_[v]) {
        if (need <= 0) break;
        if (!(used >> e & 1ULL)) {
          bound += inst_(edges_[e].u, edges_[e].v);
          --need;
        }
      }
      if (need > 0) return;
    }
    if (weight + 0.5 * bound > best_weight_ + kDistEps) return;

    std::vector<int> candidates;
    auto crossing = [&](const std::vector<char>& side) {
      for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (!(used >> e & 1ULL) && side[edges_[e].u] != side[edges_[e].v]) {
          candidates.push_back(static_cast<int>(e));
        }
      }
    };

    PointId deficient = n_;
    for (PointId v = 0; v < n_ && deficient == n_; ++v) {
      if (degree[v] < 2) deficient = v;
    }
    const EdgeList current = edge_list(included);
    if (deficient < n_) {
      for (int e : incident_[deficient]) {
        if (!(used >> e & 1ULL)) candidates.push_back(e);
      }
    } else {
      int count = 0;
      const std::vector<int> label = connected_components(current, n_, &count);
      if (count > 1) {
        std::vector<char> side(n_);
        for (PointId v = 0; v < n_; ++v) side[v] = label[v] == label[0];
        crossing(side);
      } else {
        const EdgeList bridges = find_bridges(current, n_);
        if (bridges.empty()) {
          const bool better = weight < best_weight_ - kDistEps ||
                              (weight <= best_weight_ + kDistEps && current < best_edges_);
          if (better) {
            best_weight_ = std::min(best_weight_, weight);
            best_edges_ = current;
          }
          return;
        }
        EdgeList without;
        for (const Edge& e : current) {
          if (!(e == bridges.front())) without.push_back(e);
        }
        const std::vector<int> cut = connected_components(without, n_);
        std::vector<char> side(n_);
        for (PointId v = 0; v < n_; ++v) side[v] = cut[v] == cut[bridges.front().u];
        crossing(side);
      }
    }

    std::uint64_t banned = excluded;
    for (int e : candidates) {
      const Edge& edge = edges_[e];
      ++degree[edge.u];
      ++degree[edge.v];
      search(included | (1ULL << e), banned, weight + inst_(edge.u, edge.v), degree);
      --degree[edge.u];
      --degree[edge.v];
      banned |= 1ULL << e;
    }
  }

  const MetricInstance& inst_;
  std::size_t n_;
  EdgeList edges_;
  std::vector<std::vector<int>> incident_;
  double best_weight_ = kInf;
  EdgeList best_edges_;
};

}  // namespace

OracleResult brute_force_2ecss(const MetricInstance& instance) {
  require_size(instance, 3, 10, "brute_force_2ecss");
  return BranchAndBound(instance).run();
}

OracleResult held_karp_tsp(const MetricInstance& instance) {
  require_size(instance, 3, 15, "held_karp_tsp");
  const std::size_t n = instance.size();
  const std::size_t full = std::size_t{1} << (n - 1);
  // Subsets of {1..n-1}; dp[mask][j] = shortest path from 0 through mask ending at j+1.
  std::vector<double> dp(full * (n - 1), kInf);
  std::vector<std::int8_t> from(full * (n - 1), -1);
  for (std::size_t j = 0; j + 1 < n; ++j) dp[(std::size_t{1} << j) * (n - 1) + j] = instance(0, j + 1);
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      if (!(mask >> j & 1)) continue;
      const double base = dp[mask * (n - 1) + j];
      if (base == kInf) continue;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        if (mask >> k & 1) continue;
        const std::size_t next = mask | (std::size_t{1} << k);
        const double cand = base + instance(j + 1, k + 1);
        if (cand < dp[next * (n - 1) + k]) {
          dp[next * (n - 1) + k] = cand;
          from[next * (n - 1) + k] = static_cast<std::int8_t>(j);
        }
      }
    }
  }
  double best = kInf;
  std::size_t last = 0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double cand = dp[(full - 1) * (n - 1) + j] + instance(j + 1, 0);
    if (cand < best) {
      best = cand;
      last = j;
    }
  }
  std::vector<PointId> order{0};
  std::size_t mask = full - 1;
  std::int8_t cur = static_cast<std::int8_t>(last);
  while (cur >= 0) {
    order.push_back(static_cast<PointId>(cur + 1));
    const std::int8_t prev = from[mask * (n - 1) + cur];
    mask &= ~(std::size_t{1} << cur);
    cur = prev;
  }
  EdgeList edges = normalized(cycle_edges(order));
  return {edge_weight(instance, edges), std::move(edges), "held-karp-tsp"};
}

OracleResult double_mst_baseline(const MetricInstance& instance) {
  require_size(instance, 3, std::numeric_limits<std::size_t>::max(), "double_mst_baseline");
  const SpanningTree mst = minimum_spanning_tree(instance);
  EdgeList doubled = mst.edges;
  doubled.insert(doubled.end(), mst.edges.begin(), mst.edges.end());
  EdgeList edges = normalized(shortcut_euler_tour(instance, doubled));
  return {edge_weight(instance, edges), std::move(edges), "double-mst"};
}

}  // namespace ecss
