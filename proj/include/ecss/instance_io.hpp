#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "ecss/graph.hpp"
#include "ecss/hierarchy.hpp"
#include "ecss/metric.hpp"
#include "ecss/oracles.hpp"
#include "ecss/solver.hpp"

namespace ecss {

using json = nlohmann::json;

/// {"name", "kind": "euclidean"|"matrix", "dim", "points"} or {..., "matrix"}.
/// Throws InvalidInstance on malformed input.
MetricInstance instance_from_json(const json& j);
json instance_to_json(const MetricInstance& instance);

MetricInstance load_instance(const std::string& path);
void save_instance(const MetricInstance& instance, const std::string& path);

json params_to_json(const SolverParams& params);

/// {"instance", "edges", "weight", "feasible", "seed", "params"}.
json solution_to_json(const MetricInstance& instance, const SubgraphSolution& solution,
                      std::uint64_t seed, const json& params);

json oracle_to_json(const MetricInstance& instance, const OracleResult& result);

json report_to_json(const RunReport& report);

/// Nested clusters with center, radius, level, members and portals.
json tree_to_json(const ClusterTree& tree);

}  // namespace ecss
