#include <doctest.h>

#include "ecss/generators.hpp"
#include "ecss/oracles.hpp"
#include "ecss/random.hpp"
#include "fixtures.hpp"

using namespace ecss;

namespace {

MetricInstance random_instance(std::uint64_t seed, std::size_t n) {
  GeneratorSpec g;
  g.kind = static_cast<GeneratorKind>(seed % 4);
  g.n = n;
  g.dim = 1 + seed % 3;
  return generate_instance(g, seed);
}

// Exhaustive minimum over every edge subset, for n <= 5.
double subset_minimum(const MetricInstance& inst) {
  const std::size_t n = inst.size();
  EdgeList all;
  for (PointId u = 0; u < n; ++u) {
    for (PointId v = u + 1; v < n; ++v) all.push_back({u, v});
  }
  double best = 1e300;
  for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
    EdgeList pick;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (mask >> i & 1) pick.push_back(all[i]);
    }
    const Certificate c = certify_2ecss(pick, n);
    if (c.spanning && c.bridgeless) best = std::min(best, edge_weight(inst, pick));
  }
  return best;
}

}  // namespace

TEST_CASE("oracle examples") {
  for (const auto& [inst, w] : {std::pair{fx::triangle(), 3.0}, std::pair{fx::collinear(), 4.0},
                                std::pair{fx::square(), 4.0}}) {
    CHECK(brute_force_2ecss(inst).weight == doctest::Approx(w));
    CHECK(held_karp_tsp(inst).weight == doctest::Approx(w));
    CHECK(double_mst_baseline(inst).weight == doctest::Approx(w));
    CHECK(brute_force_2ecss(inst).method == "brute-2ecss");
  }
}

TEST_CASE("oracle ranges") {
  const MetricInstance two = MetricInstance::euclidean("two", 1, {{0.0}, {1.0}});
  CHECK_THROWS_AS(brute_force_2ecss(two), InvalidInstance);
  CHECK_THROWS_AS(held_karp_tsp(two), InvalidInstance);
  CHECK_THROWS_AS(double_mst_baseline(two), InvalidInstance);
  CHECK_THROWS_AS(brute_force_2ecss(fx::collinear(11)), InvalidInstance);
  CHECK_THROWS_AS(held_karp_tsp(fx::collinear(16)), InvalidInstance);
}

TEST_CASE("branch and bound equals plain subset enumeration") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const MetricInstance inst = random_instance(seed, 3 + seed % 3);
    const OracleResult r = brute_force_2ecss(inst);
    CHECK(r.weight == doctest::Approx(subset_minimum(inst)).epsilon(1e-12));
    const Certificate c = certify_2ecss(r.edges, inst.size());
    CHECK(c.spanning);
    CHECK(c.bridgeless);
  }
}

TEST_CASE("sandwich on small instances") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const MetricInstance inst = random_instance(seed, 3 + seed % 7);
    const double mst = minimum_spanning_tree(inst).weight;
    const double b = brute_force_2ecss(inst).weight;
    const OracleResult hk = held_karp_tsp(inst);
    const double d = double_mst_baseline(inst).weight;
    CHECK(mst <= b + 1e-9);
    CHECK(b <= hk.weight + 1e-9);
    CHECK(hk.weight <= d + 1e-9);
    CHECK(d <= 2 * mst + 1e-9);
    CHECK(hk.edges.size() == inst.size());
    CHECK(certify_2ecss(hk.edges, inst.size()).bridgeless);
  }
}

TEST_CASE("relabeling and scaling") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MetricInstance inst = random_instance(seed, 7);
    PointSet perm = inst.all_points();
    Rng rng(seed);
    rng.shuffle(perm);
    const MetricInstance relabeled = inst.restrict(perm);
    CHECK(brute_force_2ecss(relabeled).weight ==
          doctest::Approx(brute_force_2ecss(inst).weight).epsilon(1e-12));
    const MetricInstance big = inst.scaled(2.5);
    CHECK(brute_force_2ecss(big).weight == doctest::Approx(2.5 * brute_force_2ecss(inst).weight));
    CHECK(held_karp_tsp(big).weight == doctest::Approx(2.5 * held_karp_tsp(inst).weight));
    CHECK(double_mst_baseline(big).weight == doctest::Approx(2.5 * double_mst_baseline(inst).weight));
  }
}

TEST_CASE("ties resolve to the same edge set every time") {
  GeneratorSpec g;
  g.kind = GeneratorKind::kGrid;
  g.n = 9;
  const MetricInstance grid = generate_instance(g, 0);
  CHECK(brute_force_2ecss(grid).edges == brute_force_2ecss(grid).edges);
}
