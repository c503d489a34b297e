// Command line front end: gen, solve, oracle, bench, verify.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ecss/checks.hpp"
#include "ecss/experiment.hpp"
#include "ecss/generators.hpp"
#include "ecss/instance_io.hpp"
#include "ecss/oracles.hpp"
#include "ecss/random.hpp"
#include "ecss/solver.hpp"

using namespace ecss;

namespace {

constexpr int kExitInfeasible = 2;
constexpr int kExitInvalid = 3;

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

GeneratorSpec generator_from_json(const json& j) {
  GeneratorSpec g;
  g.kind = parse_generator_kind(j.value("kind", std::string("uniform-cube")));
  g.n = j.value("n", std::size_t{10});
  g.dim = j.value("dim", 2);
  g.clusters = j.value("clusters", 3);
  g.spread = j.value("spread", 0.05);
  g.path = j.value("path", std::string());
  return g;
}

SolverParams params_from_json(const json& j, SolverParams p) {
  p.epsilon = j.value("epsilon", p.epsilon);
  p.k = j.value("k", p.k);
  p.q = j.value("q", p.q);
  p.r_cap = j.value("r_cap", p.r_cap);
  p.portal_cap = j.value("portal_cap", p.portal_cap);
  p.portal_alpha_factor = j.value("portal_alpha_factor", p.portal_alpha_factor);
  p.best_of = j.value("best_of", p.best_of);
  p.fallback_baseline = j.value("fallback_baseline", p.fallback_baseline);
  p.usage_cap = j.value("usage_cap", p.usage_cap);
  p.table_limit = j.value("table_limit", p.table_limit);
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-weight 2-edge-connected spanning subgraphs in doubling metrics"};
  app.require_subcommand(1);
  app.fallthrough();

  SolverParams params;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string dump_tree;
  bool no_fallback = false;
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--eps", params.epsilon, "accuracy parameter");
  app.add_option("--k", params.k, "dimension parameter (default: estimated)");
  app.add_option("--q", params.q, "sparsity threshold (default: derived)");
  app.add_option("--r-cap", params.r_cap, "cap on boundary crossings per cluster");
  app.add_option("--portal-cap", params.portal_cap, "max portals per cluster (0 = no cap)");
  app.add_option("--best-of", params.best_of, "independent seeds per solve");
  app.add_option("--table-limit", params.table_limit, "DP states kept per cluster (0 = all)");
  app.add_option("--usage-cap", params.usage_cap, "max degree explored by the DP");
  app.add_flag("--no-fallback", no_fallback, "do not fall back to the double-MST tour");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--dump-tree", dump_tree, "write the first cluster tree as JSON");

  std::string output;

  auto* gen = app.add_subcommand("gen", "generate an instance");
  GeneratorSpec gspec;
  std::string kind = "uniform-cube";
  gen->add_option("--kind", kind)->check(
      CLI::IsMember({"uniform-cube", "grid", "gaussian-clusters", "line", "matrix-file"}));
  gen->add_option("-n,--n", gspec.n);
  gen->add_option("--dim", gspec.dim);
  gen->add_option("--clusters", gspec.clusters);
  gen->add_option("--spread", gspec.spread);
  gen->add_option("--path", gspec.path, "matrix file for kind matrix-file");
  gen->add_option("-o,--output", output);

  auto* solve = app.add_subcommand("solve", "solve an instance file");
  std::string instance_path;
  solve->add_option("instance", instance_path)->required();
  solve->add_option("-o,--output", output);

  auto* oracle = app.add_subcommand("oracle", "run an exact oracle or the baseline");
  std::string method = "brute";
  oracle->add_option("instance", instance_path)->required();
  oracle->add_option("--method", method)->check(CLI::IsMember({"brute", "held-karp", "double-mst"}));
  oracle->add_option("-o,--output", output);

  auto* bench = app.add_subcommand("bench", "run an experiment");
  std::string spec_path;
  std::vector<std::size_t> sizes{10, 20};
  std::size_t count = 5;
  int reps = 1;
  bool timing = false;
  bench->add_option("--spec", spec_path, "experiment spec JSON");
  bench->add_option("--kind", kind);
  bench->add_option("--sizes", sizes);
  bench->add_option("--dim", gspec.dim);
  bench->add_option("--count", count, "instances per size");
  bench->add_option("--reps", reps);
  bench->add_flag("--timing", timing, "record wall times (reports are then not reproducible)");
  bench->add_option("-o,--output", output);

  auto* verify = app.add_subcommand("verify", "run the property suites");
  bool quick = false;
  verify->add_flag("--quick", quick, "smaller samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }
  params.fallback_baseline = !no_fallback;

  try {
    if (*gen) {
      gspec.kind = parse_generator_kind(kind);
      emit(instance_to_json(generate_instance(gspec, seed)).dump(2) + "\n", output);
      return 0;
    }
    if (*solve) {
      const MetricInstance inst = load_instance(instance_path);
      if (!dump_tree.empty()) {
        const int k = params.k >= 0 ? params.k : estimate_doubling_dimension(inst);
        PartitionParams pp = default_partition_params(inst, k, params.epsilon, mix_seed(seed, 0));
        pp.portal_cap = params.portal_cap;
        if (params.portal_alpha_factor >= 0.0) pp.portal_alpha_factor = params.portal_alpha_factor;
        Rng rng(pp.seed);
        std::ofstream(dump_tree) << tree_to_json(build_tree_with_portals(inst, pp, rng)).dump(2) << '\n';
      }
      const SolveResult res = solve_2ecss(inst, params, seed);
      if (format == "csv") {
        std::ostringstream out;
        out << "instance,n,weight,baseline,mst,feasible,source,wall_ms\n"
            << inst.name() << ',' << inst.size() << ',' << res.solution.weight << ','
            << res.report.baseline_weight << ',' << res.report.mst_weight << ','
            << (res.solution.feasible ? "true" : "false") << ',' << res.report.source << ','
            << res.report.wall_ms << '\n';
        emit(out.str(), output);
      } else {
        json j = solution_to_json(inst, res.solution, seed, params_to_json(params));
        j["report"] = report_to_json(res.report);
        emit(j.dump(2) + "\n", output);
      }
      if (!res.solution.feasible && inst.size() >= 3) return kExitInfeasible;
      return 0;
    }
    if (*oracle) {
      const MetricInstance inst = load_instance(instance_path);
      const OracleResult res = method == "brute"       ? brute_force_2ecss(inst)
                               : method == "held-karp" ? held_karp_tsp(inst)
                                                       : double_mst_baseline(inst);
      emit(oracle_to_json(inst, res).dump(2) + "\n", output);
      return 0;
    }
    if (*bench) {
      ExperimentSpec spec;
      spec.seed = seed;
      spec.timing = timing;
      spec.repetitions = reps;
      if (!spec_path.empty()) {
        std::ifstream in(spec_path);
        if (!in) throw InvalidInstance("cannot open " + spec_path);
        json j;
        try {
          in >> j;
        } catch (const json::exception& e) {
          throw InvalidInstance(spec_path + ": " + e.what());
        }
        for (const json& item : j.value("instances", json::array())) {
          InstanceSource src;
          if (item.contains("path") && !item.contains("kind")) {
            src.path = item["path"].get<std::string>();
          } else {
            src.generator = generator_from_json(item);
            src.seed = item.value("seed", std::uint64_t{0});
          }
          spec.instances.push_back(src);
        }
        if (j.contains("params")) {
          spec.params_grid.clear();
          for (const json& p : j["params"]) spec.params_grid.push_back(params_from_json(p, params));
        } else {
          spec.params_grid = {params};
        }
        spec.repetitions = j.value("repetitions", reps);
        spec.run_oracle = j.value("oracle", true);
        spec.seed = j.value("seed", seed);
      } else {
        spec.params_grid = {params};
        for (std::size_t n : sizes) {
          for (std::size_t i = 0; i < count; ++i) {
            InstanceSource src;
            GeneratorSpec g = gspec;
            g.kind = parse_generator_kind(kind);
            g.n = n;
            src.generator = g;
            src.seed = mix_seed(seed, n * 1000 + i);
            spec.instances.push_back(src);
          }
        }
      }
      const ExperimentReport report = run_experiment(spec);
      emit(format == "csv" ? report_csv(report) : experiment_json(report).dump(2) + "\n", output);
      return experiment_exit_code(report);
    }
    if (*verify) {
      const std::size_t scale = quick ? 5 : 1;
      std::vector<CheckResult> results = check_spanning_tree_and_packing(20 / scale, 50, seed);
      results.push_back(check_well_behaved(200 / scale, {0.1, 0.01}, seed));
      results.push_back(check_cut_property(100, 10000 / scale, 50, seed));
      results.push_back(check_sparse_decomposition(50 / scale, seed));
      results.push_back(check_oracle_sandwich(60 / scale, 9, seed));
      bool ok = true;
      for (const CheckResult& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        ok = ok && r.passed;
      }
      return ok ? 0 : 1;
    }
  } catch (const InvalidInstance& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NoFeasibleConfiguration& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
