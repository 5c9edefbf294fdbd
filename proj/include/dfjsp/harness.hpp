// Copyright 2026 The dfjsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DFJSP_HARNESS_HPP
#define DFJSP_HARNESS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dfjsp/compiler.hpp"
#include "dfjsp/generator.hpp"
#include "dfjsp/instance.hpp"
#include "dfjsp/qubo.hpp"
#include "dfjsp/samplers.hpp"
#include "dfjsp/schedule.hpp"

namespace dfjsp {

/// One (instance, backend) measurement. Absent best_energy/makespan mean the
/// run failed or the best sample left operations unscheduled.
struct RunRecord {
  int instance_size = 0;
  std::string backend;
  std::optional<double> best_energy;
  std::optional<int> makespan;
  int violations = 0;
  long long wall_time_ns = 0;
  long long reads = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> error;
};

/// Least-squares fit of y = a * ln(x) + b. `degenerate` marks zero variance
/// in y, where r_squared is reported as 0 by convention.
struct TrendFit {
  double a = 0.0;
  double b = 0.0;
  double r_squared = 0.0;
  bool degenerate = false;
};

class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline TrendFit fit_log_trend(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) {
    throw std::invalid_argument("trend fit needs at least 3 points");
  }
  double mean_u = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : points) {
    if (x < 1.0) throw std::invalid_argument("trend fit sizes must be >= 1");
    mean_u += std::log(x);
    mean_y += y;
  }
  const double n = static_cast<double>(points.size());
  mean_u /= n;
  mean_y /= n;

  double suu = 0.0, suy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    const double du = std::log(x) - mean_u;
    const double dy = y - mean_y;
    suu += du * du;
    suy += du * dy;
    syy += dy * dy;
  }
  if (suu == 0.0) {
    throw DegenerateDataError("trend fit requires at least two distinct sizes");
  }

  TrendFit fit;
  fit.a = suy / suu;
  fit.b = mean_y - fit.a * mean_u;
  if (syy == 0.0) {
    fit.a = 0.0;
    fit.b = mean_y;
    fit.degenerate = true;
    fit.r_squared = 0.0;
    return fit;
  }
  double ss_res = 0.0;
  for (const auto& [x, y] : points) {
    const double r = y - (fit.a * std::log(x) + fit.b);
    ss_res += r * r;
  }
  fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return fit;
}

struct ExperimentPlanEntry {
  GeneratorSpec spec;
  std::vector<std::string> backends;  // sa | exhaustive | oracle | remote
  SamplerConfig config;
};

struct ExperimentOptions {
  bool fixed_time = false;  // record wall_time_ns = 1 for stable artifacts
  int exhaustive_limit = 24;
  long long oracle_choice_limit = 10'000'000;
  /// Hosted-annealer hook for the "remote" backend; callers wire this to a
  /// live endpoint. Left empty, remote runs record an error.
  std::function<SampleSet(const Qubo&, int num_reads)> remote_solver;
};

/// Runs every (instance, backend) pair: generate, compile with calibrated
/// weights, solve, decode the best sample, validate. Wall time wraps the
/// solve call only. Per-run failures are captured in the record.
inline std::vector<RunRecord> run_experiment(
    const std::vector<ExperimentPlanEntry>& plan,
    const ExperimentOptions& options = {}) {
  std::vector<RunRecord> records;
  for (const ExperimentPlanEntry& entry : plan) {
    const Instance instance = generate(entry.spec);
    const VariableRegistry registry = build_registry(instance);
    const Weights weights = calibrate_weights(instance, registry);
    const Qubo qubo = build_qubo(instance, registry, weights);

    for (const std::string& backend : entry.backends) {
      RunRecord record;
      record.instance_size = registry.size();
      record.backend = backend;
      record.seed = entry.config.seed;
      try {
        SampleSet samples;
        const auto t0 = std::chrono::steady_clock::now();
        if (backend == "sa") {
          samples = solve_sa(qubo, entry.config);
          record.reads = entry.config.num_reads;
        } else if (backend == "exhaustive") {
          samples = solve_exhaustive(qubo, options.exhaustive_limit);
          record.reads = samples.metadata.reads;
        } else if (backend == "oracle") {
          OracleOptions oracle_options;
          oracle_options.choice_limit = options.oracle_choice_limit;
          const OracleResult oracle =
              solve_schedule_oracle(instance, registry, oracle_options);
          Sample sample;
          sample.assignment = encode(registry, oracle.schedule);
          sample.energy = energy(qubo, sample.assignment);
          samples.samples = {sample};
          samples.metadata.backend = "oracle";
          record.reads = oracle.enumerated;
        } else if (backend == "remote") {
          if (!options.remote_solver) {
            throw std::runtime_error("no remote endpoint configured");
          }
          samples = options.remote_solver(qubo, entry.config.num_reads);
          record.reads = entry.config.num_reads;
        } else {
          throw std::invalid_argument("unknown backend: " + backend);
        }
        const auto elapsed =
            std::chrono::duration_cast<std::chrono::nanoseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
        record.wall_time_ns = options.fixed_time ? 1 : std::max<long long>(elapsed, 1);

        const Sample& best = samples.best();
        record.best_energy = best.energy;
        const Schedule schedule = decode(registry, best.assignment);
        record.violations = validate_schedule(instance, schedule).total();
        if (schedule.complete) {
          record.makespan = makespan(instance, schedule);
        }
      } catch (const std::exception& err) {
        record.error = err.what();
        record.wall_time_ns = std::max<long long>(record.wall_time_ns, 1);
      }
      records.push_back(std::move(record));
    }
  }
  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) {
              if (a.instance_size != b.instance_size) {
                return a.instance_size < b.instance_size;
              }
              if (a.backend != b.backend) return a.backend < b.backend;
              return a.seed < b.seed;
            });
  return records;
}

namespace detail {

inline std::string format_trend(const std::string& backend, const TrendFit& fit) {
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer),
                "# trend backend=%s a=%.9g b=%.9g r_squared=%.9g degenerate=%d",
                backend.c_str(), fit.a, fit.b, fit.r_squared,
                fit.degenerate ? 1 : 0);
  return buffer;
}

/// Per-backend (size, wall time) points, one per record, sorted by size.
inline std::map<std::string, std::vector<std::pair<double, double>>>
trend_points(const std::vector<RunRecord>& records) {
  std::map<std::string, std::vector<std::pair<double, double>>> points;
  for (const RunRecord& r : records) {
    if (r.error) continue;
    points[r.backend].push_back({static_cast<double>(r.instance_size),
                                 static_cast<double>(r.wall_time_ns)});
  }
  return points;
}

inline bool has_three_sizes(const std::vector<std::pair<double, double>>& pts) {
  std::set<double> sizes;
  for (const auto& [x, y] : pts) sizes.insert(x);
  return sizes.size() >= 3;
}

}  // namespace detail

/// Canonical CSV artifact: fixed column order, one row per record, trailing
/// `# trend` lines per backend once three sizes are present.
inline std::string report_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "instance_size,backend,best_energy,makespan,violations,wall_time_ns,"
         "reads,seed\n";
  for (const RunRecord& r : records) {
    out << r.instance_size << ',' << r.backend << ',';
    if (r.best_energy) out << detail::format_coefficient(*r.best_energy);
    out << ',';
    if (r.makespan) out << *r.makespan;
    out << ',' << r.violations << ',' << r.wall_time_ns << ',' << r.reads << ','
        << r.seed << '\n';
  }
  for (const auto& [backend, pts] : detail::trend_points(records)) {
    if (!detail::has_three_sizes(pts)) continue;
    out << detail::format_trend(backend, fit_log_trend(pts)) << '\n';
  }
  return out.str();
}

/// JSON mirror of the CSV fields; failed runs carry an `error` member.
inline std::string report_json(const std::vector<RunRecord>& records) {
  nlohmann::ordered_json doc;
  doc["records"] = nlohmann::ordered_json::array();
  for (const RunRecord& r : records) {
    nlohmann::ordered_json row;
    row["instance_size"] = r.instance_size;
    row["backend"] = r.backend;
    row["best_energy"] =
        r.best_energy ? nlohmann::ordered_json(*r.best_energy)
                      : nlohmann::ordered_json(nullptr);
    row["makespan"] = r.makespan ? nlohmann::ordered_json(*r.makespan)
                                 : nlohmann::ordered_json(nullptr);
    row["violations"] = r.violations;
    row["wall_time_ns"] = r.wall_time_ns;
    row["reads"] = r.reads;
    row["seed"] = r.seed;
    if (r.error) row["error"] = *r.error;
    doc["records"].push_back(std::move(row));
  }
  doc["trends"] = nlohmann::ordered_json::object();
  for (const auto& [backend, pts] : detail::trend_points(records)) {
    if (!detail::has_three_sizes(pts)) continue;
    const TrendFit fit = fit_log_trend(pts);
    nlohmann::ordered_json t;
    t["a"] = fit.a;
    t["b"] = fit.b;
    t["r_squared"] = fit.r_squared;
    t["degenerate"] = fit.degenerate;
    doc["trends"][backend] = std::move(t);
  }
  return doc.dump(2) + "\n";
}

enum class ReportFormat { kCsv, kJson };

inline std::string report(const std::vector<RunRecord>& records,
                          ReportFormat format) {
  return format == ReportFormat::kCsv ? report_csv(records)
                                      : report_json(records);
}

/// Plot-ready `size wall_time_ns` series, one text file body per backend.
inline std::map<std::string, std::string> report_series(
    const std::vector<RunRecord>& records) {
  std::map<std::string, std::string> series;
  for (const auto& [backend, pts] : detail::trend_points(records)) {
    std::ostringstream out;
    for (const auto& [x, y] : pts) {
      out << static_cast<long long>(x) << ' ' << static_cast<long long>(y)
          << '\n';
    }
    series[backend] = out.str();
  }
  return series;
}

}  // namespace dfjsp

#endif  // DFJSP_HARNESS_HPP
