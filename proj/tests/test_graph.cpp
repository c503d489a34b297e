#include <doctest.h>

#include "ecss/generators.hpp"
#include "ecss/graph.hpp"
#include "fixtures.hpp"

using namespace ecss;

TEST_CASE("minimum spanning tree weights") {
  CHECK(minimum_spanning_tree(fx::triangle()).weight == doctest::Approx(2.0));
  CHECK(minimum_spanning_tree(fx::collinear()).weight == doctest::Approx(2.0));
  CHECK(minimum_spanning_tree(fx::square()).weight == doctest::Approx(3.0));
  const SpanningTree t = minimum_spanning_tree(fx::square(), {0, 2});
  CHECK(t.edges.size() == 1);
  CHECK(t.weight == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("bridges") {
  CHECK(find_bridges({{0, 1}, {1, 2}}, 3) == EdgeList{{0, 1}, {1, 2}});
  CHECK(find_bridges({{0, 1}, {1, 2}, {0, 2}}, 3).empty());
  const EdgeList two{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}};
  CHECK(find_bridges(two, 6) == EdgeList{{2, 3}});
  // A doubled edge is not a bridge.
  CHECK(find_bridges({{0, 1}, {0, 1}}, 2).empty());
}

TEST_CASE("certificates") {
  Certificate c = certify_2ecss(cycle_edges({0, 1, 2, 3, 4}), 5);
  CHECK(c.spanning);
  CHECK(c.bridgeless);
  c = certify_2ecss({{0, 1}, {1, 2}, {2, 3}}, 4);
  CHECK(c.spanning);
  CHECK_FALSE(c.bridgeless);
  c = certify_2ecss({{0, 1}, {1, 2}, {0, 2}}, 4);
  CHECK_FALSE(c.spanning);

  const SubgraphSolution s = make_solution(fx::collinear(), {{0, 1}, {1, 2}, {0, 2}});
  CHECK(s.feasible);
  CHECK(s.weight == doctest::Approx(4.0));
  CHECK_FALSE(make_solution(fx::collinear(), {{0, 1}, {1, 2}}).feasible);
}

TEST_CASE("euler shortcutting") {
  const MetricInstance tri = fx::triangle();
  EdgeList doubled = minimum_spanning_tree(tri).edges;
  doubled.insert(doubled.end(), doubled.begin(), doubled.end());
  CHECK(edge_weight(tri, shortcut_euler_tour(tri, doubled)) == doctest::Approx(3.0));

  const MetricInstance sq = fx::square();
  doubled = minimum_spanning_tree(sq).edges;
  doubled.insert(doubled.end(), doubled.begin(), doubled.end());
  const EdgeList tour = shortcut_euler_tour(sq, doubled);
  CHECK(edge_weight(sq, tour) == doctest::Approx(4.0));
  CHECK(certify_2ecss(tour, 4).bridgeless);

  const EdgeList cyc = cycle_edges({0, 2, 1, 3});
  CHECK(normalized(shortcut_euler_tour(sq, cyc)) == normalized(cyc));
  CHECK_THROWS_AS(shortcut_euler_tour(sq, {{0, 1}, {1, 2}}), NotEulerian);
}

TEST_CASE("doubled MST tours are Hamiltonian and within twice the MST") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorSpec g;
    g.n = 5 + seed;
    const MetricInstance inst = generate_instance(g, seed);
    EdgeList doubled = minimum_spanning_tree(inst).edges;
    doubled.insert(doubled.end(), doubled.begin(), doubled.end());
    const EdgeList tour = shortcut_euler_tour(inst, doubled);
    CHECK(tour.size() == inst.size());
    CHECK(certify_2ecss(tour, inst.size()).bridgeless);
    CHECK(edge_weight(inst, tour) <= 2.0 * minimum_spanning_tree(inst).weight + 1e-9);
  }
}

TEST_CASE("connected components") {
  int count = 0;
  const std::vector<int> label = connected_components({{0, 1}, {2, 3}}, 5, &count);
  CHECK(count == 3);
  CHECK(label[0] == label[1]);
  CHECK(label[2] == label[3]);
  CHECK(label[0] != label[4]);
}
