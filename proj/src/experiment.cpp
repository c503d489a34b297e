#include "ecss/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <thread>

#include "ecss/oracles.hpp"

namespace ecss {

std::size_t worker_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SOLVER_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  if (spec.repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  std::vector<MetricInstance> instances;
  for (const InstanceSource& src : spec.instances) {
    instances.push_back(src.generator ? generate_instance(*src.generator, src.seed)
                                      : load_instance(src.path));
  }

  ExperimentReport report;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t p = 0; p < spec.params_grid.size(); ++p) {
      for (int rep = 0; rep < spec.repetitions; ++rep) {
        ExperimentRow row;
        row.instance_id = i;
        row.name = instances[i].name();
        row.n = instances[i].size();
        row.params_id = p;
        row.seed = spec.seed + static_cast<std::uint64_t>(rep);
        report.rows.push_back(std::move(row));
      }
    }
  }
  // Per-instance work shared by all of its rows.
  std::vector<int> k_estimate(instances.size());
  std::vector<std::optional<double>> oracle(instances.size());
  std::atomic<std::size_t> next_instance{0};
  std::atomic<std::size_t> next_row{0};

  auto instance_work = [&]() {
    for (std::size_t i; (i = next_instance++) < instances.size();) {
      k_estimate[i] = estimate_doubling_dimension(instances[i]);
      if (spec.run_oracle && instances[i].size() >= 3 && instances[i].size() <= 10) {
        oracle[i] = brute_force_2ecss(instances[i]).weight;
      }
    }
  };
  auto row_work = [&]() {
    for (std::size_t r; (r = next_row++) < report.rows.size();) {
      ExperimentRow& row = report.rows[r];
      const MetricInstance& inst = instances[row.instance_id];
      row.k_estimate = k_estimate[row.instance_id];
      row.oracle_weight = oracle[row.instance_id];
      try {
        const SolveResult res = solve_2ecss(inst, spec.params_grid[row.params_id], row.seed);
        row.report = res.report;
        row.mst = res.report.mst_weight;
        row.baseline = res.report.baseline_weight;
        row.dp_weight = res.solution.weight;
        row.feasible = res.solution.feasible;
        row.ratio_to_baseline = row.baseline > 0 ? row.dp_weight / row.baseline : 1.0;
        if (row.oracle_weight && *row.oracle_weight > 0) {
          row.ratio_to_oracle = row.dp_weight / *row.oracle_weight;
        }
        if (spec.timing) row.wall_ms = res.report.wall_ms;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  const std::size_t workers = worker_count(spec.workers);
  auto run_pool = [&](auto& work) {
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
  };
  run_pool(instance_work);
  run_pool(row_work);

  ExperimentSummary& s = report.summary;
  s.rows = report.rows.size();
  std::vector<double> to_oracle, to_baseline, wall;
  for (const ExperimentRow& row : report.rows) {
    if (!row.error.empty()) {
      ++s.errors;
      continue;
    }
    if (!row.feasible && row.n >= 3) ++s.infeasible;
    if (row.ratio_to_oracle) to_oracle.push_back(*row.ratio_to_oracle);
    to_baseline.push_back(row.ratio_to_baseline);
    wall.push_back(row.wall_ms);
  }
  if (!to_oracle.empty()) s.median_ratio_to_oracle = median(to_oracle);
  if (!to_baseline.empty()) s.median_ratio_to_baseline = median(to_baseline);
  if (!wall.empty() && spec.timing) s.median_wall_ms = median(wall);
  return report;
}

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "instance_id,name,n,k_estimate,params_id,seed,mst,baseline,dp_weight,oracle_weight,"
         "ratio_to_oracle,ratio_to_baseline,feasible,wall_ms,error\n";
  for (const ExperimentRow& r : report.rows) {
    out << r.instance_id << ',' << csv_field(r.name) << ',' << r.n << ',' << r.k_estimate << ','
        << r.params_id << ',' << r.seed << ',' << fmt(r.mst) << ',' << fmt(r.baseline) << ','
        << fmt(r.dp_weight) << ',' << fmt(r.oracle_weight) << ',' << fmt(r.ratio_to_oracle) << ','
        << fmt(r.ratio_to_baseline) << ',' << (r.feasible ? "true" : "false") << ','
        << fmt(r.wall_ms) << ',' << csv_field(r.error) << '\n';
  }
  return out.str();
}

json experiment_json(const ExperimentReport& report) {
  json rows = json::array();
  for (const ExperimentRow& r : report.rows) {
    json row{{"instance_id", r.instance_id},
             {"name", r.name},
             {"n", r.n},
             {"k_estimate", r.k_estimate},
             {"params_id", r.params_id},
             {"seed", r.seed},
             {"mst", r.mst},
             {"baseline", r.baseline},
             {"dp_weight", r.dp_weight},
             {"oracle_weight", r.oracle_weight ? json(*r.oracle_weight) : json()},
             {"ratio_to_oracle", r.ratio_to_oracle ? json(*r.ratio_to_oracle) : json()},
             {"ratio_to_baseline", r.ratio_to_baseline},
             {"feasible", r.feasible},
             {"wall_ms", r.wall_ms}};
    if (!r.error.empty()) {
      row["error"] = r.error;
    } else {
      json detail = report_to_json(r.report);
      detail["wall_ms"] = r.wall_ms;
      row["report"] = detail;
    }
    rows.push_back(std::move(row));
  }
  const ExperimentSummary& s = report.summary;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(); };
  return json{{"rows", rows},
              {"summary",
               {{"rows", s.rows},
                {"infeasible", s.infeasible},
                {"errors", s.errors},
                {"median_ratio_to_oracle", opt(s.median_ratio_to_oracle)},
                {"median_ratio_to_baseline", opt(s.median_ratio_to_baseline)},
                {"median_wall_ms", opt(s.median_wall_ms)}}}};
}

int experiment_exit_code(const ExperimentReport& report) {
  return report.summary.infeasible > 0 ? 2 : 0;
}

}  // namespace ecss
