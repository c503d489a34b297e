#include "ecss/instance_io.hpp"

#include <fstream>

namespace ecss {

MetricInstance instance_from_json(const json& j) {
  try {
    const std::string name = j.value("name", std::string("instance"));
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "euclidean") {
      const int dim = j.at("dim").get<int>();
      return MetricInstance::euclidean(name, dim,
                                       j.at("points").get<std::vector<std::vector<double>>>());
    }
    if (kind == "matrix") {
      return MetricInstance::matrix(name, j.at("matrix").get<std::vector<std::vector<double>>>());
    }
    throw InvalidInstance("unknown instance kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("malformed instance: ") + e.what());
  }
}

json instance_to_json(const MetricInstance& instance) {
  json j;
  j["name"] = instance.name();
  if (instance.kind() == MetricInstance::Kind::kEuclidean) {
    j["kind"] = "euclidean";
    j["dim"] = instance.dim();
    j["points"] = instance.points();
  } else {
    j["kind"] = "matrix";
    const std::size_t n = instance.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (PointId a = 0; a < n; ++a) {
      for (PointId b = 0; b < n; ++b) m[a][b] = instance(a, b);
    }
    j["matrix"] = m;
  }
  return j;
}

MetricInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidInstance(path + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const MetricInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << instance_to_json(instance).dump(2) << '\n';
}

json params_to_json(const SolverParams& p) {
  return json{{"epsilon", p.epsilon},
              {"k", p.k},
              {"q", p.q},
              {"r_cap", p.r_cap},
              {"portal_cap", p.portal_cap},
              {"portal_alpha_factor", p.portal_alpha_factor},
              {"best_of", p.best_of},
              {"fallback_baseline", p.fallback_baseline},
              {"usage_cap", p.usage_cap},
              {"table_limit", p.table_limit}};
}

static json edges_to_json(const EdgeList& edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

json solution_to_json(const MetricInstance& instance, const SubgraphSolution& solution,
                      std::uint64_t seed, const json& params) {
  return json{{"instance", instance.name()},
              {"edges", edges_to_json(solution.edges)},
              {"weight", solution.weight},
              {"feasible", solution.feasible},
              {"seed", seed},
              {"params", params}};
}

json oracle_to_json(const MetricInstance& instance, const OracleResult& result) {
  return json{{"instance", instance.name()},
              {"method", result.method},
              {"edges", edges_to_json(result.edges)},
              {"weight", result.weight}};
}

json report_to_json(const RunReport& r) {
  json sparsity = json::array();
  for (const SparsityStep& s : r.sparsity) {
    sparsity.push_back({{"v", s.center},
                        {"level", s.level},
                        {"q_star", s.q_star},
                        {"h", s.h},
                        {"x1", s.x1_size},
                        {"x2", s.x2_size}});
  }
  return json{{"weight", r.weight},
              {"baseline_weight", r.baseline_weight},
              {"mst_weight", r.mst_weight},
              {"feasible", r.feasible},
              {"seed", r.seed},
              {"params", params_to_json(r.params)},
              {"k", r.k},
              {"crossing_limit", r.crossing_limit},
              {"source", r.source},
              {"sparsity", sparsity},
              {"dp",
               {{"configs_enumerated", r.configs_enumerated},
                {"patch_calls", r.patch_calls},
                {"max_table_size", r.max_table_size},
                {"failures", r.dp_failures}}},
              {"checks",
               {{"patch_violations", r.patch_violations},
                {"well_behaved_calls", r.well_behaved_calls},
                {"well_behaved_violations", r.well_behaved_violations},
                {"repair_weight", r.repair_weight},
                {"repair_checks", r.repair_checks},
                {"repair_violations", r.repair_violations}}},
              {"wall_ms", r.wall_ms}};
}

json tree_to_json(const ClusterTree& tree) {
  auto node = [&](auto&& self, int id) -> json {
    const Cluster& c = tree[id];
    json children = json::array();
    for (int ch : c.children) children.push_back(self(self, ch));
    return json{{"id", c.id},
                {"level", c.level},
                {"center", c.center},
                {"radius", c.radius},
                {"members", c.members},
                {"portals", c.portals},
                {"children", children}};
  };
  return json{{"depth", tree.depth}, {"s", tree.s}, {"unit", tree.unit}, {"root", node(node, tree.root())}};
}

}  // namespace ecss
