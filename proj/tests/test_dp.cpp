#include <doctest.h>

#include "ecss/dp.hpp"
#include "ecss/generators.hpp"
#include "ecss/oracles.hpp"
#include "ecss/solver.hpp"
#include "fixtures.hpp"

using namespace ecss;

namespace {

ClusterTree exhaustive_tree(const MetricInstance& inst, std::uint64_t seed) {
  PartitionParams pp = default_partition_params(inst, estimate_doubling_dimension(inst), 0.25, seed);
  pp.portal_alpha_factor = 0.0;
  pp.portal_cap = 0;
  Rng rng(pp.seed);
  return build_tree_with_portals(inst, pp, rng);
}

DpParams exhaustive(const MetricInstance& inst) {
  DpParams dp;
  dp.crossing_limit = static_cast<int>(2 * inst.size());
  dp.usage_cap = static_cast<int>(inst.size()) - 1;
  dp.table_limit = 0;
  return dp;
}

MetricInstance plane(std::size_t n, std::uint64_t seed, int dim = 2) {
  GeneratorSpec g;
  g.n = n;
  g.dim = dim;
  return generate_instance(g, seed);
}

}  // namespace

TEST_CASE("dp on the triangle and the square") {
  const MetricInstance tri = fx::triangle();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DpResult r = solve_sparse_dp(tri, exhaustive_tree(tri, seed), exhaustive(tri));
    CHECK(r.solution.weight == doctest::Approx(3.0));
    CHECK(r.solution.feasible);
  }
  const MetricInstance sq = fx::square();
  DpParams four = exhaustive(sq);
  four.crossing_limit = 4;
  const DpResult r = solve_sparse_dp(sq, exhaustive_tree(sq, 1), four);
  CHECK(r.solution.weight == doctest::Approx(4.0));
  CHECK(r.solution.edges == EdgeList{{0, 1}, {0, 3}, {1, 2}, {2, 3}});
}

TEST_CASE("dp rejects tiny instances") {
  const MetricInstance two = MetricInstance::euclidean("two", 1, {{0.0}, {1.0}});
  CHECK_THROWS_AS(solve_sparse_dp(two, exhaustive_tree(two, 1), DpParams{}), InvalidInstance);
}

TEST_CASE("exhaustive dp matches branch and bound") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const MetricInstance inst = plane(3 + seed % 4, seed, 1 + seed % 3);
    const double opt = brute_force_2ecss(inst).weight;
    if (inst.size() <= 5) {
      const DpResult r = solve_sparse_dp(inst, exhaustive_tree(inst, seed + 7), exhaustive(inst));
      CHECK(r.solution.weight == doctest::Approx(opt).epsilon(1e-12));
    }
    DpParams bounded = exhaustive(inst);
    bounded.upper_bound = double_mst_baseline(inst).weight;
    const DpResult b = solve_sparse_dp(inst, exhaustive_tree(inst, seed + 7), bounded);
    CHECK(b.solution.weight == doctest::Approx(opt).epsilon(1e-12));
  }
}

TEST_CASE("default dp output is always 2-edge-connected") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const MetricInstance inst = plane(8 + 2 * seed, seed, 1 + seed % 3);
    PartitionParams pp = default_partition_params(inst, estimate_doubling_dimension(inst), 0.25, seed);
    Rng rng(pp.seed);
    const ClusterTree tree = build_tree_with_portals(inst, pp, rng);
    try {
      const DpResult r = solve_sparse_dp(inst, tree, DpParams{});
      CHECK(certify_2ecss(r.solution.edges, inst.size()).bridgeless);
      CHECK(r.solution.weight >= minimum_spanning_tree(inst).weight - 1e-9);
    } catch (const NoFeasibleConfiguration&) {
      // Allowed with capped portals; the solver redraws.
    }
  }
}

TEST_CASE("an impossible crossing limit has no closed root") {
  const MetricInstance inst = plane(12, 3);
  DpParams dp;
  dp.crossing_limit = 1;
  PartitionParams pp = default_partition_params(inst, 2, 0.25, 3);
  Rng rng(pp.seed);
  CHECK_THROWS_AS(solve_sparse_dp(inst, build_tree_with_portals(inst, pp, rng), dp),
                  NoFeasibleConfiguration);
}

TEST_CASE("solve_2ecss examples") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    CHECK(solve_2ecss(fx::triangle(), SolverParams{}, seed).solution.weight == doctest::Approx(3.0));
  }
  const SolveResult line = solve_2ecss(fx::collinear(), SolverParams{}, 1);
  CHECK(line.solution.weight == doctest::Approx(4.0));
  CHECK(line.solution.feasible);

  const MetricInstance two = MetricInstance::euclidean("two", 1, {{0.0}, {1.0}});
  const SolveResult small = solve_2ecss(two, SolverParams{}, 1);
  CHECK_FALSE(small.solution.feasible);
  CHECK(small.solution.infeasible_by_size);
}

TEST_CASE("solver invariants on mixed instances") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    GeneratorSpec g;
    g.kind = static_cast<GeneratorKind>(seed % 4);
    g.n = 5 + 3 * seed;
    g.dim = 1 + seed % 3;
    const MetricInstance inst = generate_instance(g, seed);
    SolverParams p;
    p.best_of = 2;
    const SolveResult r = solve_2ecss(inst, p, seed);
    CHECK(r.solution.feasible);
    CHECK(r.solution.weight <= r.report.baseline_weight + 1e-9);
    CHECK(r.solution.weight >= r.report.mst_weight - 1e-9);
    CHECK(r.report.well_behaved_violations == 0);
    CHECK(r.report.patch_violations == 0);
  }
}

TEST_CASE("solver is deterministic in the seed") {
  const MetricInstance inst = plane(25, 4);
  const SolveResult a = solve_2ecss(inst, SolverParams{}, 9);
  const SolveResult b = solve_2ecss(inst, SolverParams{}, 9);
  CHECK(a.solution.edges == b.solution.edges);
  CHECK(a.report.configs_enumerated == b.report.configs_enumerated);
}

TEST_CASE("without the fallback a failing dp propagates") {
  const MetricInstance inst = plane(12, 3);
  SolverParams p;
  p.fallback_baseline = false;
  p.usage_cap = 1;
  p.best_of = 1;
  CHECK_THROWS_AS(solve_2ecss(inst, p, 1), NoFeasibleConfiguration);
}

TEST_CASE("crossing limit formula") {
  SolverParams p;
  CHECK(crossing_limit(p, 100, 2.0, 2, 1.0) == 6);
  p.r_cap = 1000000;
  // r'' = (s / eps)^{2k} alone is 8^4 = 4096 at s = 2, eps = 0.25, k = 2.
  CHECK(crossing_limit(p, 100, 2.0, 2, 1.0) >= 4096);
  p.r_cap = 0;
  CHECK(crossing_limit(p, 100, 2.0, 2, 1.0) == 2);
}

TEST_CASE("bridge repair") {
  const MetricInstance sq = fx::square();
  const EdgeList fixed = repair_bridges(sq, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(certify_2ecss(fixed, 4).bridgeless);
  CHECK(edge_weight(sq, fixed) == doctest::Approx(4.0));
  const EdgeList joined = repair_bridges(sq, {});
  CHECK(certify_2ecss(joined, 4).bridgeless);
}
