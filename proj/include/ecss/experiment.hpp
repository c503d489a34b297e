#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecss/generators.hpp"
#include "ecss/instance_io.hpp"
#include "ecss/solver.hpp"

namespace ecss {

/// A generated instance (spec + seed) or an instance file.
struct InstanceSource {
  std::optional<GeneratorSpec> generator;
  std::uint64_t seed = 0;
  std::string path;
};

struct ExperimentSpec {
  std::vector<InstanceSource> instances;
  std::vector<SolverParams> params_grid{SolverParams{}};
  bool run_oracle = true;  ///< brute force on instances with n <= 10
  int repetitions = 1;
  std::uint64_t seed = 0;
  std::size_t workers = 0;  ///< 0: SOLVER_WORKERS, else hardware concurrency
  bool timing = false;      ///< wall_ms is recorded only when set
};

struct ExperimentRow {
  std::size_t instance_id = 0;
  std::string name;
  std::size_t n = 0;
  int k_estimate = 0;
  std::size_t params_id = 0;
  std::uint64_t seed = 0;
  double mst = 0.0;
  double baseline = 0.0;
  double dp_weight = 0.0;
  std::optional<double> oracle_weight;
  std::optional<double> ratio_to_oracle;
  double ratio_to_baseline = 0.0;
  bool feasible = false;
  double wall_ms = 0.0;
  std::string error;
  RunReport report;
};

struct ExperimentSummary {
  std::size_t rows = 0;
  std::size_t infeasible = 0;
  std::size_t errors = 0;
  std::optional<double> median_ratio_to_oracle;
  std::optional<double> median_ratio_to_baseline;
  std::optional<double> median_wall_ms;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;  ///< ordered by (instance, params, seed)
  ExperimentSummary summary;
};

/// Worker count: explicit request, else SOLVER_WORKERS, else the hardware.
std::size_t worker_count(std::size_t requested);

/// Loads every instance up front (InvalidInstance on failure), then runs the
/// rows on a worker pool. A row that throws keeps its error text and the run
/// continues.
ExperimentReport run_experiment(const ExperimentSpec& spec);

std::string report_csv(const ExperimentReport& report);
json experiment_json(const ExperimentReport& report);

/// 2 when any row emitted an infeasible solution, else 0.
int experiment_exit_code(const ExperimentReport& report);

double median(std::vector<double> values);

}  // namespace ecss
