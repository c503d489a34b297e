#include "ecss/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include "ecss/hierarchy.hpp"
#include "ecss/oracles.hpp"
#include "ecss/random.hpp"
#include "ecss/transforms.hpp"

namespace ecss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool has_edge(const EdgeList& sorted, const Edge& e) {
  return std::binary_search(sorted.begin(), sorted.end(), e);
}

struct Attempt {
  std::optional<EdgeList> dp_edges;
  std::optional<EdgeList> incumbent;
};

class Pipeline {
 public:
  Pipeline(const MetricInstance& instance, const SolverParams& params, int k, RunReport& report)
      : inst_(instance), params_(params), k_(k), report_(report), n_(instance.size()) {}

  Attempt run(std::uint64_t seed, const EdgeList& baseline) {
    Rng rng(seed);
    PartitionParams pp = default_partition_params(inst_, k_, params_.epsilon, seed);
    pp.portal_cap = params_.portal_cap;
    if (params_.portal_alpha_factor >= 0.0) pp.portal_alpha_factor = params_.portal_alpha_factor;
    SparsityParams sp = default_sparsity_params(n_, pp.s, k_, params_.epsilon);
    if (params_.q > 0.0) {
      sp.q = params_.q;
      sp.q_prime = relaxed_threshold(sp.q, n_);
    }
    const int r = crossing_limit(params_, n_, pp.s, k_, sp.q);
    report_.crossing_limit = r;
    DpParams dp;
    dp.crossing_limit = r;
    dp.usage_cap = params_.usage_cap;
    dp.table_limit = params_.table_limit;

    Attempt attempt;
    const int redraws = 10 * static_cast<int>(std::ceil(std::log2(static_cast<double>(n_))));
    std::optional<ClusterTree> first_tree;
    for (int draw = 0; draw <= redraws && !attempt.dp_edges; ++draw) {
      ClusterTree tree = build_tree_with_portals(inst_, pp, rng);
      if (!first_tree) first_tree = tree;
      SparsityReport split = decompose_sparse_dense(inst_, tree, sp, pp, rng);
      try {
        EdgeList joined;
        for (const PointSet& part : split.parts) {
          if (part.size() < 3) continue;
          DpResult res;
          if (part.size() == n_) {
            res = solve_sparse_dp(inst_, tree, dp);
            joined.insert(joined.end(), res.solution.edges.begin(), res.solution.edges.end());
          } else {
            const MetricInstance sub = inst_.restrict(part);
            const ClusterTree sub_tree =
                build_tree_with_portals(sub, adapt_partition_params(sub, pp), rng);
            res = solve_sparse_dp(sub, sub_tree, dp);
            for (const Edge& e : res.solution.edges) joined.push_back(make_edge(part[e.u], part[e.v]));
          }
          report_.configs_enumerated += res.stats.configs_enumerated;
          report_.max_table_size = std::max(report_.max_table_size, res.stats.max_table_size);
        }
        joined = normalized(std::move(joined));
        EdgeList repaired = repair_bridges(inst_, joined);
        if (split.parts.size() > 1) check_repair(split, joined, repaired);
        attempt.dp_edges = std::move(repaired);
        if (report_.sparsity.empty()) report_.sparsity = split.steps;
      } catch (const NoFeasibleConfiguration&) {
        ++report_.dp_failures;
      }
    }
    if (params_.fallback_baseline) attempt.incumbent = portal_tour(*first_tree, baseline);
    return attempt;
  }

 private:
  // Added repair weight against 16 r^{1-1/k} diam(B), B the ball around the
  // first violating center that holds every repair endpoint.
  void check_repair(const SparsityReport& split, const EdgeList& joined, const EdgeList& repaired) {
    EdgeList added;
    std::set_difference(repaired.begin(), repaired.end(), joined.begin(), joined.end(),
                        std::back_inserter(added));
    const double weight = edge_weight(inst_, added);
    report_.repair_weight += weight;
    ++report_.repair_checks;
    if (added.empty() || !split.violating) return;
    const PointId v = split.violating->center;
    double radius = 0.0;
    for (const Edge& e : added) radius = std::max({radius, inst_(v, e.u), inst_(v, e.v)});
    const PointSet ball = ball_members(inst_, Ball{v, radius});
    const double diam = metric_stats(inst_, ball).diameter;
    const double r = std::max(report_.crossing_limit, 2);
    const double bound = 16.0 * std::pow(r, 1.0 - 1.0 / std::max(k_, 1)) * diam;
    if (weight > bound + kDistEps) ++report_.repair_violations;
  }

  // The baseline tour made portal-respecting and patched wherever a cluster is
  // crossed more than twice, then shortcut back to a tour.
  std::optional<EdgeList> portal_tour(const ClusterTree& tree, const EdgeList& tour) {
    const WellBehavedResult wb = make_well_behaved(inst_, tree, tour, params_.epsilon);
    ++report_.well_behaved_calls;
    if (!wb.within_bound() || count_non_portal_crossings(tree, wb.edges) > 0) {
      ++report_.well_behaved_violations;
    }
    EdgeList edges = wb.edges;
    for (int level = tree.depth - 1; level >= 1; --level) {
      for (int id : tree.levels[level]) {
        if (count_crossings(edges, tree[id].members) <= 2) continue;
        PatchResult patch = patch_crossings(inst_, edges, tree[id].members);
        ++report_.patch_calls;
        if (!patch.within_bound()) ++report_.patch_violations;
        if (patch.connected) edges = std::move(patch.edges);
      }
    }
    std::vector<int> degree(n_, 0);
    for (const Edge& e : edges) {
      ++degree[e.u];
      ++degree[e.v];
    }
    int components = 0;
    connected_components(edges, n_, &components);
    if (components != 1) return std::nullopt;
    for (int d : degree) {
      if (d == 0 || d % 2 != 0) return std::nullopt;
    }
    return normalized(shortcut_euler_tour(inst_, edges));
  }

  const MetricInstance& inst_;
  const SolverParams& params_;
  int k_;
  RunReport& report_;
  std::size_t n_;
};

}  // namespace

int crossing_limit(const SolverParams& params, std::size_t n, double s, int k, double q) {
  const double kk = std::max(k, 1);
  const double eps = params.epsilon;
  const double loglog = std::max(0.0, std::log2(std::log2(std::max<double>(n, 2.0)) + 1e-300) /
                                          std::log2(s));
  const double r1 = std::max(std::exp2(4.0 * kk) * 10.0 * q * kk * loglog, std::pow(2.0 * kk / eps, kk));
  const double r2 = std::pow(s / eps, 2.0 * kk);
  const double r = std::min(r1 + r2, static_cast<double>(params.r_cap));
  return std::max(2, static_cast<int>(std::floor(r)));
}

EdgeList repair_bridges(const MetricInstance& instance, EdgeList edges) {
  const std::size_t n = instance.size();
  edges = normalized(std::move(edges));
  if (n < 2) return edges;
  while (true) {
    int count = 0;
    const std::vector<int> label = connected_components(edges, n, &count);
    if (count <= 1) break;
    Edge best{};
    double best_w = kInf;
    for (PointId u = 0; u < n; ++u) {
      for (PointId v = u + 1; v < n; ++v) {
        if (label[u] != label[v] && instance(u, v) < best_w) {
          best_w = instance(u, v);
          best = {u, v};
        }
      }
    }
    edges.push_back(best);
    edges = normalized(std::move(edges));
  }
  if (n < 3) return edges;
  while (true) {
    const EdgeList bridges = find_bridges(edges, n);
    if (bridges.empty()) break;
    const Edge b = bridges.front();
    EdgeList without;
    for (const Edge& e : edges) {
      if (!(e == b)) without.push_back(e);
    }
    const std::vector<int> label = connected_components(without, n);
    const int side = label[b.u];
    Edge best{};
    double best_w = kInf;
    for (PointId u = 0; u < n; ++u) {
      for (PointId v = u + 1; v < n; ++v) {
        const Edge e{u, v};
        if ((label[u] == side) != (label[v] == side) && !(e == b) && !has_edge(edges, e) &&
            instance(u, v) < best_w) {
          best_w = instance(u, v);
          best = e;
        }
      }
    }
    edges.push_back(best);
    edges = normalized(std::move(edges));
  }
  return edges;
}

SolveResult solve_2ecss(const MetricInstance& instance, const SolverParams& params,
                        std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  SolveResult result;
  RunReport& report = result.report;
  report.seed = seed;
  report.params = params;
  const std::size_t n = instance.size();
  report.mst_weight = minimum_spanning_tree(instance).weight;

  auto finish = [&]() {
    report.weight = result.solution.weight;
    report.feasible = result.solution.feasible;
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
  };

  if (n < 3) {
    EdgeList edges;
    if (n == 2) edges.push_back({0, 1});
    result.solution = make_solution(instance, edges);
    result.solution.infeasible_by_size = true;
    report.baseline_weight = result.solution.weight;
    report.source = "baseline";
    return finish();
  }

  const int k = params.k >= 0 ? params.k : estimate_doubling_dimension(instance);
  report.k = k;
  const OracleResult baseline = double_mst_baseline(instance);
  report.baseline_weight = baseline.weight;

  std::optional<SubgraphSolution> best;
  auto consider = [&](const EdgeList& edges, const char* source) {
    SubgraphSolution s = make_solution(instance, edges);
    if (!s.feasible) return;
    if (!best || s.weight < best->weight - kDistEps) {
      best = std::move(s);
      report.source = source;
    }
  };

  Pipeline pipeline(instance, params, k, report);
  for (int t = 0; t < std::max(params.best_of, 1); ++t) {
    const Attempt attempt = pipeline.run(mix_seed(seed, t), baseline.edges);
    if (attempt.dp_edges) consider(*attempt.dp_edges, "dp");
    if (attempt.incumbent) consider(*attempt.incumbent, "incumbent");
  }
  if (params.fallback_baseline) consider(baseline.edges, "baseline");
  if (!best) throw NoFeasibleConfiguration("every DP run failed and the fallback is disabled");
  result.solution = std::move(*best);
  return finish();
}

}  // namespace ecss
