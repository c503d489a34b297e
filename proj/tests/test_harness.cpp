#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ecss/experiment.hpp"
#include "ecss/generators.hpp"
#include "ecss/instance_io.hpp"
#include "fixtures.hpp"

using namespace ecss;

TEST_CASE("generators") {
  GeneratorSpec g;
  g.kind = GeneratorKind::kLine;
  g.n = 3;
  const MetricInstance line = generate_instance(g, 5);
  CHECK(line(0, 1) == 1.0);
  CHECK(line(0, 2) == 2.0);

  g.kind = GeneratorKind::kUniformCube;
  g.n = 20;
  CHECK(instance_to_json(generate_instance(g, 3)) == instance_to_json(generate_instance(g, 3)));
  CHECK(instance_to_json(generate_instance(g, 3)) != instance_to_json(generate_instance(g, 4)));

  g.kind = GeneratorKind::kGrid;
  g.dim = 2;
  for (int k : {2, 3, 5}) {
    g.n = k * k;
    CHECK(metric_stats(generate_instance(g, 0)).aspect_ratio == doctest::Approx(std::sqrt(2.0) * (k - 1)));
  }

  g.kind = GeneratorKind::kGaussianClusters;
  g.n = 30;
  g.dim = 3;
  CHECK(metric_stats(generate_instance(g, 1)).min_interpoint > 0.0);

  CHECK(parse_generator_kind("gaussian-clusters") == GeneratorKind::kGaussianClusters);
  CHECK(generator_kind_name(GeneratorKind::kMatrixFile) == "matrix-file");
  CHECK_THROWS(parse_generator_kind("hexagon"));
}

TEST_CASE("instance files round trip") {
  const std::string path = "harness_roundtrip.json";
  const MetricInstance sq = fx::square();
  save_instance(sq, path);
  const MetricInstance back = load_instance(path);
  CHECK(instance_to_json(back) == instance_to_json(sq));

  const MetricInstance m = MetricInstance::matrix("m", {{0, 2, 3}, {2, 0, 4}, {3, 4, 0}});
  CHECK(instance_to_json(instance_from_json(instance_to_json(m))) == instance_to_json(m));
  std::remove(path.c_str());
}

TEST_CASE("malformed instance files are rejected") {
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"kind":"matrix","matrix":[[0,1],[1]]})")),
                  InvalidInstance);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"kind":"matrix","matrix":[[0,1,9],[1,0,1],[9,1,0]]})")),
                  InvalidInstance);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"kind":"euclidean","dim":2,"points":[[0,0],[1]]})")),
                  InvalidInstance);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"kind":"spiral"})")), InvalidInstance);
  CHECK_THROWS_AS(load_instance("does/not/exist.json"), InvalidInstance);
}

TEST_CASE("matrix-file generator") {
  const std::string path = "harness_matrix.json";
  save_instance(MetricInstance::matrix("m", {{0, 2, 3}, {2, 0, 4}, {3, 4, 0}}), path);
  GeneratorSpec g;
  g.kind = GeneratorKind::kMatrixFile;
  g.path = path;
  CHECK(generate_instance(g, 0)(1, 2) == 4.0);
  std::remove(path.c_str());
}

TEST_CASE("empty experiment") {
  ExperimentSpec spec;
  const ExperimentReport r = run_experiment(spec);
  CHECK(r.rows.empty());
  CHECK(experiment_exit_code(r) == 0);
}

TEST_CASE("triangle experiment has ratio one") {
  const std::string path = "harness_triangle.json";
  save_instance(fx::triangle(), path);
  ExperimentSpec spec;
  InstanceSource src;
  src.path = path;
  spec.instances = {src};
  spec.repetitions = 2;
  const ExperimentReport r = run_experiment(spec);
  REQUIRE(r.rows.size() == 2);
  for (const ExperimentRow& row : r.rows) {
    REQUIRE(row.ratio_to_oracle);
    CHECK(*row.ratio_to_oracle == doctest::Approx(1.0));
    CHECK(row.feasible);
  }
  CHECK(experiment_exit_code(r) == 0);
  std::remove(path.c_str());
}

TEST_CASE("reports are identical across runs and worker counts") {
  ExperimentSpec spec;
  for (std::uint64_t s = 0; s < 6; ++s) {
    InstanceSource src;
    GeneratorSpec g;
    g.n = 4 + 3 * s;
    src.generator = g;
    src.seed = s;
    spec.instances.push_back(src);
  }
  SolverParams p;
  p.best_of = 2;
  spec.params_grid = {p};
  spec.seed = 11;
  spec.workers = 1;
  const std::string a = experiment_json(run_experiment(spec)).dump();
  spec.workers = 3;
  const ExperimentReport r = run_experiment(spec);
  CHECK(experiment_json(r).dump() == a);
  CHECK(report_csv(r) == report_csv(run_experiment(spec)));
  CHECK(r.summary.infeasible == 0);
  for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(r.rows[i].instance_id == i);
}

TEST_CASE("infeasible rows set the exit code") {
  ExperimentReport r;
  r.summary.infeasible = 1;
  CHECK(experiment_exit_code(r) == 2);
}

TEST_CASE("worker count") {
  CHECK(worker_count(3) == 3);
  CHECK(worker_count(0) >= 1);
}

TEST_CASE("median") {
  CHECK(median({}) == 0.0);
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
}
