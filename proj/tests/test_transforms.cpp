#include <doctest.h>

#include "ecss/generators.hpp"
#include "ecss/hierarchy.hpp"
#include "ecss/transforms.hpp"
#include "fixtures.hpp"

using namespace ecss;

namespace {

MetricInstance plane(std::size_t n, std::uint64_t seed, int dim = 2) {
  GeneratorSpec g;
  g.n = n;
  g.dim = dim;
  return generate_instance(g, seed);
}

std::vector<int> degrees(const EdgeList& edges, std::size_t n) {
  std::vector<int> d(n, 0);
  for (const Edge& e : edges) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

ClusterTree uncapped_tree(const MetricInstance& inst, std::uint64_t seed, double eps) {
  PartitionParams pp = default_partition_params(inst, estimate_doubling_dimension(inst), eps, seed);
  pp.portal_cap = 0;
  Rng rng(pp.seed);
  return build_tree_with_portals(inst, pp, rng);
}

}  // namespace

TEST_CASE("crossing counts") {
  const EdgeList e{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  CHECK(count_crossings(e, {0, 1}) == 2);
  CHECK(count_crossings(e, {0, 1, 2, 3}) == 0);
}

TEST_CASE("patching leaves two crossings alone") {
  const MetricInstance sq = fx::square();
  const EdgeList cyc = cycle_edges({0, 1, 2, 3});
  const PatchResult r = patch_crossings(sq, cyc, {0, 1});
  CHECK(r.crossings_before == 2);
  CHECK(r.added_weight == 0.0);
  CHECK(normalized(r.edges) == normalized(cyc));
}

TEST_CASE("four crossings at two points") {
  // Points 0 and 1 inside, each joined twice to outside points 2..5.
  const MetricInstance inst = MetricInstance::euclidean(
      "four", 2, {{0, 0}, {0, 1}, {5, -1}, {5, 0}, {5, 1}, {5, 2}});
  const EdgeList edges{{0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 3}, {4, 5}};
  const PatchResult r = patch_crossings(inst, edges, {0, 1});
  CHECK(r.crossings_before == 4);
  CHECK(r.crossings_after <= 2);
  CHECK(r.within_bound());
  const std::vector<int> before = degrees(edges, 6), after = degrees(r.edges, 6);
  for (int p = 0; p < 6; ++p) CHECK(before[p] % 2 == after[p] % 2);
}

TEST_CASE("patching random tours") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const MetricInstance inst = plane(16, seed);
    Rng rng(seed);
    std::vector<PointId> order = inst.all_points();
    rng.shuffle(order);
    const EdgeList tour = cycle_edges(order);
    PointSet cluster = inst.all_points();
    rng.shuffle(cluster);
    cluster.resize(8);
    std::sort(cluster.begin(), cluster.end());
    const std::size_t before = count_crossings(tour, cluster);
    if (before < 6) continue;
    ++checked;
    const PatchResult r = patch_crossings(inst, tour, cluster);
    CHECK(r.crossings_after <= 2);
    CHECK(r.within_bound());
    // Independent bound: 4 times the MST of the crossing endpoints.
    PointSet P;
    for (const Edge& e : tour) {
      const bool a = std::binary_search(cluster.begin(), cluster.end(), e.u);
      const bool b = std::binary_search(cluster.begin(), cluster.end(), e.v);
      if (a != b) {
        P.push_back(e.u);
        P.push_back(e.v);
      }
    }
    std::sort(P.begin(), P.end());
    P.erase(std::unique(P.begin(), P.end()), P.end());
    CHECK(r.added_weight <= 4.0 * minimum_spanning_tree(inst, P).weight + 1e-9);
    const std::vector<int> d0 = degrees(tour, inst.size()), d1 = degrees(r.edges, inst.size());
    for (std::size_t p = 0; p < inst.size(); ++p) CHECK(d0[p] % 2 == d1[p] % 2);
  }
  CHECK(checked > 10);
}

TEST_CASE("well-behaved rerouting") {
  const MetricInstance sq = fx::square();
  const ClusterTree t = uncapped_tree(sq, 1, 0.25);
  const EdgeList cyc = cycle_edges({0, 1, 2, 3});
  const WellBehavedResult same = make_well_behaved(sq, t, cyc, 0.25);
  CHECK(same.rerouted == 0);
  CHECK(normalized(same.edges) == normalized(cyc));

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const double eps = seed % 2 ? 0.1 : 0.01;
    const MetricInstance inst = seed % 3 == 0 ? fx::collinear(12) : plane(25, seed, 1 + seed % 3);
    PartitionParams pp = default_partition_params(inst, estimate_doubling_dimension(inst), eps, seed);
    Rng rng(pp.seed);
    const ClusterTree tree = build_tree_with_portals(inst, pp, rng);
    Rng order_rng(seed + 100);
    std::vector<PointId> order = inst.all_points();
    order_rng.shuffle(order);
    const EdgeList tour = cycle_edges(order);
    const WellBehavedResult r = make_well_behaved(inst, tree, tour, eps);
    CHECK(count_non_portal_crossings(tree, r.edges) == 0);
    const std::vector<int> d0 = degrees(tour, inst.size()), d1 = degrees(r.edges, inst.size());
    for (std::size_t p = 0; p < inst.size(); ++p) CHECK(d0[p] % 2 == d1[p] % 2);
    CHECK(r.output_weight >= r.input_weight - 1e-9);
  }
}

TEST_CASE("a single long edge stays within 1 + 6 eps") {
  const MetricInstance line = fx::collinear(16);
  const ClusterTree tree = uncapped_tree(line, 3, 0.1);
  const WellBehavedResult r = make_well_behaved(line, tree, {{0, 15}}, 0.1);
  CHECK(r.within_bound());
  CHECK(count_non_portal_crossings(tree, r.edges) == 0);
}
