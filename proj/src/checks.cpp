#include "ecss/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ecss/dp.hpp"
#include "ecss/experiment.hpp"
#include "ecss/generators.hpp"
#include "ecss/hierarchy.hpp"
#include "ecss/oracles.hpp"
#include "ecss/random.hpp"
#include "ecss/sparsity.hpp"
#include "ecss/transforms.hpp"

namespace ecss {

namespace {

CheckResult finish(CheckResult r, const std::string& extra = {}) {
  r.passed = r.violations == 0;
  std::ostringstream out;
  out << r.violations << " violations in " << r.cases << " cases";
  if (!extra.empty()) out << "; " << extra;
  if (!r.detail.empty()) out << "; first: " << r.detail;
  r.detail = out.str();
  return r;
}

void note(CheckResult& r, const std::string& what) {
  ++r.violations;
  if (r.detail.empty()) r.detail = what;
}

MetricInstance uniform(std::size_t n, int dim, std::uint64_t seed) {
  GeneratorSpec g;
  g.kind = GeneratorKind::kUniformCube;
  g.n = n;
  g.dim = dim;
  return generate_instance(g, seed);
}

PointSet random_subset(std::size_t n, std::size_t size, Rng& rng) {
  PointSet all(n);
  for (PointId i = 0; i < n; ++i) all[i] = i;
  rng.shuffle(all);
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

std::vector<MetricInstance> mixed_instances(std::size_t count, std::size_t n_lo,
                                            std::size_t n_hi, std::uint64_t seed) {
  static const GeneratorKind kinds[] = {GeneratorKind::kUniformCube, GeneratorKind::kGaussianClusters,
                                        GeneratorKind::kGrid, GeneratorKind::kLine};
  Rng rng(seed);
  std::vector<MetricInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    GeneratorSpec g;
    g.kind = kinds[i % 4];
    g.n = n_lo + rng.below(n_hi - n_lo + 1);
    g.dim = 1 + static_cast<int>(rng.below(3));
    g.clusters = 2 + static_cast<int>(rng.below(3));
    g.spread = 0.03 + 0.05 * rng.uniform();
    out.push_back(generate_instance(g, mix_seed(seed, i)));
  }
  return out;
}

CheckResult check_feasibility(const std::vector<MetricInstance>& instances,
                              const SolverParams& params, std::uint64_t seed,
                              PatchTally* tally) {
  CheckResult r{"feasibility", false, 0, 0, {}};
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const MetricInstance& inst = instances[i];
    ++r.cases;
    const SolveResult res = solve_2ecss(inst, params, mix_seed(seed, i));
    if (tally) tally->add(res.report);
    const Certificate cert = certify_2ecss(res.solution.edges, inst.size());
    if (!(cert.spanning && cert.bridgeless)) {
      note(r, inst.name() + " not 2-edge-connected");
    } else if (res.solution.weight > res.report.baseline_weight + kDistEps) {
      note(r, inst.name() + " above baseline");
    } else if (res.solution.weight < res.report.mst_weight - kDistEps) {
      note(r, inst.name() + " below MST");
    }
  }
  return finish(r);
}

CheckResult check_oracle_equivalence(std::size_t instances, std::size_t seeds,
                                     std::uint64_t seed) {
  CheckResult r{"oracle-equivalence", false, 0, 0, {}};
  const std::vector<MetricInstance> pool = mixed_instances(instances, 3, 6, seed);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const MetricInstance& inst = pool[i];
    const double opt = brute_force_2ecss(inst).weight;
    const int k = estimate_doubling_dimension(inst);
    const double tour = double_mst_baseline(inst).weight;
    for (std::size_t s = 0; s < seeds; ++s) {
      ++r.cases;
      PartitionParams pp = default_partition_params(inst, k, 0.25, mix_seed(seed + i, s));
      pp.portal_alpha_factor = 0.0;
      pp.portal_cap = 0;
      Rng rng(pp.seed);
      const ClusterTree tree = build_tree_with_portals(inst, pp, rng);
      DpParams dp;
      dp.crossing_limit = static_cast<int>(2 * inst.size());
      dp.usage_cap = static_cast<int>(inst.size()) - 1;
      dp.table_limit = 0;
      dp.upper_bound = tour;
      const DpResult res = solve_sparse_dp(inst, tree, dp);
      if (std::abs(res.solution.weight - opt) > kDistEps) {
        std::ostringstream out;
        out << inst.name() << " seed " << s << ": dp " << res.solution.weight << " vs " << opt;
        note(r, out.str());
      }
    }
  }
  return finish(r);
}

CheckResult check_approximation(std::size_t instances, std::size_t n,
                                const SolverParams& params, std::uint64_t seed,
                                PatchTally* tally) {
  CheckResult r{"approximation", false, 0, 0, {}};
  std::size_t good = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < instances; ++i) {
    const MetricInstance inst = uniform(n, 2, mix_seed(seed, i));
    ++r.cases;
    const double opt = brute_force_2ecss(inst).weight;
    const SolveResult res = solve_2ecss(inst, params, mix_seed(seed + 1, i));
    if (tally) tally->add(res.report);
    const double ratio = res.solution.weight / opt;
    worst = std::max(worst, ratio);
    if (ratio <= 1.0 + params.epsilon + kDistEps) ++good;
    if (res.solution.weight > res.report.baseline_weight + kDistEps) {
      note(r, inst.name() + " above baseline");
    }
  }
  const double share = instances ? static_cast<double>(good) / instances : 1.0;
  if (share < 0.9) note(r, "only " + std::to_string(good) + " within ratio");
  std::ostringstream extra;
  extra << good << "/" << instances << " within 1+eps, worst ratio " << worst;
  return finish(r, extra.str());
}

std::vector<CheckResult> check_spanning_tree_and_packing(std::size_t instances,
                                                         std::size_t subsets,
                                                         std::uint64_t seed) {
  CheckResult tree{"spanning-tree-bound", false, 0, 0, {}};
  CheckResult packing{"packing-bound", false, 0, 0, {}};
  const std::vector<MetricInstance> pool = mixed_instances(instances, 20, 60, seed);
  Rng rng(mix_seed(seed, 99));
  for (const MetricInstance& inst : pool) {
    const int k = estimate_doubling_dimension(inst);
    for (std::size_t s = 0; s < subsets; ++s) {
      const std::size_t size = 2 + rng.below(inst.size() - 1);
      const PointSet sub = random_subset(inst.size(), size, rng);
      const MetricStats st = metric_stats(inst, sub);
      ++tree.cases;
      const double mst = minimum_spanning_tree(inst, sub).weight;
      const double bound = 4.0 * std::pow(static_cast<double>(size), 1.0 - 1.0 / std::max(k, 1)) * st.diameter;
      if (mst > bound + kDistEps) note(tree, inst.name() + " subset weight above bound");
      for (double frac : {0.0, 0.05, 0.125, 0.25, 0.5, 1.0}) {
        const double alpha = frac == 0.0 ? 0.5 * st.min_interpoint : frac * st.diameter;
        const PointSet net = build_net(inst, sub, alpha);
        ++packing.cases;
        const double aspect = metric_stats(inst, net).aspect_ratio;
        if (static_cast<double>(net.size()) > std::pow(2.0 * aspect, k) + kDistEps) {
          note(packing, inst.name() + " net of size " + std::to_string(net.size()));
        }
      }
    }
  }
  return {finish(tree), finish(packing)};
}

CheckResult check_well_behaved(std::size_t tours, const std::vector<double>& epsilons,
                               std::uint64_t seed) {
  CheckResult r{"well-behaved", false, 0, 0, {}};
  Rng rng(seed);
  std::size_t rerouted = 0;
  for (std::size_t t = 0; t < tours; ++t) {
    const double eps = epsilons[t % epsilons.size()];
    const std::size_t n = 10 + rng.below(31);
    const MetricInstance inst = uniform(n, 1 + static_cast<int>(rng.below(3)), mix_seed(seed, t));
    PartitionParams pp = default_partition_params(inst, estimate_doubling_dimension(inst), eps,
                                                  mix_seed(seed + 1, t));
    pp.portal_cap = 0;
    Rng tree_rng(pp.seed);
    const ClusterTree tree = build_tree_with_portals(inst, pp, tree_rng);
    std::vector<PointId> order = inst.all_points();
    rng.shuffle(order);
    const EdgeList tour = cycle_edges(order);
    ++r.cases;
    const WellBehavedResult wb = make_well_behaved(inst, tree, tour, eps);
    rerouted += wb.rerouted;
    if (!wb.within_bound()) {
      std::ostringstream out;
      out << inst.name() << " eps " << eps << ": " << wb.output_weight / wb.input_weight;
      note(r, out.str());
    } else if (count_non_portal_crossings(tree, wb.edges) > 0) {
      note(r, inst.name() + " crosses at a non-portal");
    }
  }
  return finish(r, std::to_string(rerouted) + " edges rerouted");
}

CheckResult check_patching(const PatchTally& tally) {
  CheckResult r{"patching", false, 0, 0, {}};
  r.cases = tally.calls;
  r.violations = tally.violations;
  return finish(r);
}

CheckResult check_cut_property(std::size_t n, std::size_t trees, std::size_t pairs,
                               std::uint64_t seed) {
  CheckResult r{"cut-property", false, 0, 0, {}};
  const MetricInstance inst = uniform(n, 2, seed);
  const int k = std::max(estimate_doubling_dimension(inst), 1);
  PartitionParams pp = default_partition_params(inst, k, 0.25, mix_seed(seed, 1));
  Rng probe(pp.seed);
  const ClusterTree shape = build_cluster_tree(inst, pp, probe);
  const int level = std::max(1, shape.depth / 2);
  const double scale = shape.scale_at(level);

  std::vector<std::pair<PointId, PointId>> candidates;
  for (PointId u = 0; u < n; ++u) {
    for (PointId v = u + 1; v < n; ++v) {
      if (inst(u, v) <= 0.5 * scale) candidates.push_back({u, v});
    }
  }
  Rng rng(mix_seed(seed, 2));
  std::sort(candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) {
    return inst(a.first, a.second) < inst(b.first, b.second);
  });
  // Spread the sample over the whole distance range.
  std::vector<std::pair<PointId, PointId>> sample;
  for (std::size_t i = 0; i < pairs && !candidates.empty(); ++i) {
    sample.push_back(candidates[(i * (candidates.size() - 1)) / std::max<std::size_t>(pairs - 1, 1)]);
  }
  const std::vector<double> prob = estimate_cut_probabilities(inst, pp, sample, level, static_cast<int>(trees));
  double sxy = 0.0, sxx = 0.0;
  std::vector<double> x(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    x[i] = k * inst(sample[i].first, sample[i].second) / scale;
    sxy += x[i] * prob[i];
    sxx += x[i] * x[i];
  }
  const double c = sxx > 0 ? sxy / sxx : 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    ++r.cases;
    const double fit = std::min(1.0, c * x[i]);
    const double p = std::clamp(fit, 1.0 / trees, 1.0 - 1.0 / trees);
    const double sigma = std::sqrt(p * (1.0 - p) / trees);
    if (prob[i] > fit + 3.0 * sigma) {
      std::ostringstream out;
      out << "pair at x=" << x[i] << ": " << prob[i] << " > " << fit << " + 3*" << sigma;
      note(r, out.str());
    }
  }
  std::ostringstream extra;
  extra << "fitted C = " << c << " at level " << level << " (k = " << k << ")";
  return finish(r, extra.str());
}

CheckResult check_sparse_decomposition(std::size_t instances, std::uint64_t seed) {
  CheckResult r{"sparse-decomposition", false, 0, 0, {}};
  Rng rng(seed);
  for (std::size_t t = 0; t < instances; ++t) {
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) pts.push_back({static_cast<double>(i), static_cast<double>(j)});
    }
    const std::size_t background = 5 + rng.below(16);
    while (pts.size() < 25 + background) {
      std::vector<double> p{rng.uniform(-400.0, 400.0), rng.uniform(-400.0, 400.0)};
      bool ok = std::hypot(p[0] - 2.0, p[1] - 2.0) > 60.0;
      for (std::size_t i = 25; i < pts.size() && ok; ++i) {
        ok = std::hypot(p[0] - pts[i][0], p[1] - pts[i][1]) > 40.0;
      }
      if (ok) pts.push_back(p);
    }
    const MetricInstance inst =
        MetricInstance::euclidean("blob-" + std::to_string(t), 2, std::move(pts));
    const std::size_t n = inst.size();
    const double q = rng.uniform(2.0, 6.0);
    const int k = estimate_doubling_dimension(inst);
    PartitionParams pp = default_partition_params(inst, k, 0.25, mix_seed(seed, t));
    Rng tree_rng(pp.seed);
    const ClusterTree tree = build_tree_with_portals(inst, pp, tree_rng);
    SparsityParams sp = default_sparsity_params(n, pp.s, k, 0.25);
    sp.q = q;
    sp.q_prime = relaxed_threshold(q, n);
    const SparsityReport rep = decompose_sparse_dense(inst, tree, sp, pp, tree_rng);
    ++r.cases;
    const std::string tag = inst.name();
    if (!rep.violating) {
      note(r, tag + " no violation found");
      continue;
    }
    std::vector<int> seen(n, 0);
    for (PointId p : rep.sparse_part) ++seen[p];
    for (PointId p : rep.dense_part) ++seen[p];
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
      note(r, tag + " X1/X2 not a disjoint cover");
      continue;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (const PointSet& part : rep.parts) {
      for (PointId p : part) ++seen[p];
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
      note(r, tag + " recursive parts not a disjoint cover");
      continue;
    }
    if (std::any_of(rep.steps.begin(), rep.steps.end(), [&](const SparsityStep& s) { return s.q_star <= q; })) {
      note(r, tag + " q* not above q");
      continue;
    }
    if (!rep.sparse_part.empty()) {
      const MetricInstance x1 = inst.restrict(rep.sparse_part);
      const ClusterTree x1_tree = build_tree_with_portals(x1, adapt_partition_params(x1, pp), tree_rng);
      if (find_sparsity_violation(x1, x1_tree, sp.q_prime)) note(r, tag + " X1 not q'-sparse");
    }
  }
  return finish(r);
}

CheckResult check_oracle_sandwich(std::size_t instances, std::size_t n_max, std::uint64_t seed) {
  CheckResult r{"oracle-sandwich", false, 0, 0, {}};
  const std::vector<MetricInstance> pool = mixed_instances(instances, 3, n_max, seed);
  for (const MetricInstance& inst : pool) {
    ++r.cases;
    const double mst = minimum_spanning_tree(inst).weight;
    const double brute = brute_force_2ecss(inst).weight;
    const double tour = held_karp_tsp(inst).weight;
    const double dbl = double_mst_baseline(inst).weight;
    const double e = kDistEps;
    if (!(mst <= brute + e && brute <= tour + e && tour <= dbl + e && dbl <= 2.0 * mst + e)) {
      std::ostringstream out;
      out << inst.name() << ": " << mst << " " << brute << " " << tour << " " << dbl;
      note(r, out.str());
    }
  }
  return finish(r);
}

CheckResult check_timing(std::size_t n, std::size_t samples, double max_ratio,
                         const SolverParams& params, std::uint64_t seed) {
  CheckResult r{"timing-smoke", false, 0, 0, {}};
  std::vector<double> small, large;
  for (std::size_t i = 0; i < samples; ++i) {
    small.push_back(solve_2ecss(uniform(n, 2, mix_seed(seed, i)), params, i).report.wall_ms);
    large.push_back(solve_2ecss(uniform(2 * n, 2, mix_seed(seed + 1, i)), params, i).report.wall_ms);
  }
  const double a = median(small), b = median(large);
  r.cases = 1;
  const double ratio = a > 0 ? b / a : 0.0;
  if (ratio >= max_ratio) note(r, "ratio " + std::to_string(ratio));
  std::ostringstream extra;
  extra << "median " << a << " ms at n=" << n << ", " << b << " ms at n=" << 2 * n
        << ", ratio " << ratio;
  return finish(r, extra.str());
}

}  // namespace ecss
