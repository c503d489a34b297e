#include <doctest.h>

#include "ecss/generators.hpp"
#include "ecss/graph.hpp"
#include "ecss/sparsity.hpp"
#include "fixtures.hpp"

using namespace ecss;

namespace {

MetricInstance grid(std::size_t side) {
  GeneratorSpec g;
  g.kind = GeneratorKind::kGrid;
  g.n = side * side;
  g.dim = 2;
  return generate_instance(g, 0);
}

struct Built {
  PartitionParams pp;
  ClusterTree tree;
};

Built build(const MetricInstance& inst, std::uint64_t seed) {
  Built b;
  b.pp = default_partition_params(inst, estimate_doubling_dimension(inst), 0.25, seed);
  Rng rng(b.pp.seed);
  b.tree = build_tree_with_portals(inst, b.pp, rng);
  return b;
}

}  // namespace

TEST_CASE("mst ball weights") {
  const MetricInstance line = fx::collinear();
  CHECK(mst_ball_weight(line, 1, 0.0) == 0.0);
  CHECK(mst_ball_weight(line, 1, 1.0) == doctest::Approx(2.0));
  CHECK(mst_ball_weight(line, 0, 100.0) == doctest::Approx(minimum_spanning_tree(line).weight));
  CHECK(mst_ball_weight(line, {0, 2}, 1, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("default thresholds") {
  const SparsityParams sp = default_sparsity_params(100, 2.0, 2, 0.25);
  CHECK(sp.q > 0.0);
  CHECK(sp.q_prime >= sp.q);
  CHECK(sp.delta > 0.0);
  CHECK(sp.delta < 1.0);
  CHECK(relaxed_threshold(1.0, 2) == 13.0);
  CHECK(relaxed_threshold(2.0, 1 << 16) == std::ceil(26.0 * std::pow(16.0, 0.125)));
}

TEST_CASE("no violation without density") {
  const MetricInstance one = MetricInstance::euclidean("p", 1, {{0.0}});
  CHECK_FALSE(find_sparsity_violation(one, build(one, 1).tree, 1.0));

  const MetricInstance g = grid(6);
  const Built b = build(g, 2);
  const double huge = minimum_spanning_tree(g).weight / (2.0 * b.tree.scale_at(b.tree.depth)) + 1.0;
  CHECK_FALSE(find_sparsity_violation(g, b.tree, huge));

  SparsityParams sp = default_sparsity_params(g.size(), b.pp.s, 2, 0.25);
  sp.q = huge;
  Rng rng(3);
  const SparsityReport rep = decompose_sparse_dense(g, b.tree, sp, b.pp, rng);
  CHECK_FALSE(rep.violating);
  CHECK(rep.sparse_part == g.all_points());
  CHECK(rep.dense_part.empty());
}

TEST_CASE("a dense grid violates a tiny threshold") {
  const MetricInstance g = grid(20);
  const Built b = build(g, 4);
  const auto v = find_sparsity_violation(g, b.tree, 0.01);
  REQUIRE(v);
  CHECK(v->q_star > 0.01);
}

TEST_CASE("two blobs: the dense part is the ball around the violating center") {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) pts.push_back({double(i), double(j)});
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) pts.push_back({1000.0 + i, double(j)});
  }
  const MetricInstance inst = MetricInstance::euclidean("blobs", 2, pts);
  const Built b = build(inst, 5);
  SparsityParams sp = default_sparsity_params(inst.size(), b.pp.s, 2, 0.25);
  sp.q = 1.0;
  sp.q_prime = relaxed_threshold(sp.q, inst.size());
  Rng rng(6);
  const SparsityReport rep = decompose_sparse_dense(inst, b.tree, sp, b.pp, rng);
  REQUIRE(rep.violating);
  REQUIRE(rep.chosen_h);
  const PointId v = rep.violating->center;
  for (PointId p = 0; p < inst.size(); ++p) {
    const bool dense = std::binary_search(rep.dense_part.begin(), rep.dense_part.end(), p);
    CHECK(dense == (inst(v, p) <= *rep.chosen_h + 1e-9));
  }
  std::vector<int> seen(inst.size(), 0);
  for (const PointSet& part : rep.parts) {
    for (PointId p : part) ++seen[p];
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  CHECK(rep.steps.front().q_star > sp.q);
}

TEST_CASE("cut radius lies on the candidate grid") {
  const MetricInstance g = grid(12);
  const Built b = build(g, 7);
  const auto v = find_sparsity_violation(g, b.tree, 0.05);
  REQUIRE(v);
  SparsityParams sp = default_sparsity_params(g.size(), b.pp.s, 2, 0.25);
  const double h = choose_cut_radius(g, b.tree, *v, sp);
  const double S = b.tree.scale_at(v->level);
  CHECK(h >= 12.0 * S - 1e-9);
  CHECK(h <= 13.0 * S + 1e-9);
  const double step = S / (sp.h_candidates - 1);
  const double idx = (h - 12.0 * S) / step;
  CHECK(std::abs(idx - std::round(idx)) < 1e-6);
}
