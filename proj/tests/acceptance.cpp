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
//
// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dfjsp/compiler.hpp"
#include "dfjsp/generator.hpp"
#include "dfjsp/harness.hpp"
#include "dfjsp/instance.hpp"
#include "dfjsp/qubo.hpp"
#include "dfjsp/samplers.hpp"
#include "dfjsp/schedule.hpp"
#include "dfjsp/worked_example.hpp"

namespace {

using namespace dfjsp;

struct Outcome {
  bool passed = false;
  std::string detail;
};

/// Generates instances until `count` registries land at or below `max_vars`;
/// targets cycle so sizes vary. Seeds that cannot reach their band are
/// skipped.
std::vector<Instance> small_instances(int count, int max_vars,
                                      const std::vector<int>& targets) {
  std::vector<Instance> out;
  std::uint64_t seed = 1;
  int failures = 0;
  while (static_cast<int>(out.size()) < count) {
    GeneratorSpec spec;
    spec.target_variables = targets[out.size() % targets.size()];
    spec.ptime_max = 2;
    spec.ship_max = 1;
    spec.seed = seed++;
    try {
      Instance in = generate(spec);
      if (build_registry(in).size() <= max_vars) {
        out.push_back(std::move(in));
      }
    } catch (const UnreachableTargetError&) {
      ++failures;
    }
    if (seed > 5000) {
      throw std::runtime_error("could not assemble the acceptance instance set");
    }
  }
  (void)failures;
  return out;
}

/// Splits the exhaustive energy landscape into valid (complete, zero
/// violations) and invalid assignments via a Gray-code sweep.
struct Separation {
  double min_valid = std::numeric_limits<double>::infinity();
  double min_invalid = std::numeric_limits<double>::infinity();
};

Separation classify_landscape(const Instance& in,
                              const VariableRegistry& registry, const Qubo& q) {
  const int n = registry.size();
  const detail::Adjacency adj(q);

  std::vector<int> group_of(n);
  for (int g = 0; g < registry.op_count(); ++g) {
    for (int v : registry.vars_of_op(g)) group_of[v] = g;
  }
  std::vector<int> group_count(registry.op_count(), 0);
  int groups_exactly_one = 0;

  std::vector<std::uint8_t> state(n, 0);
  double current = q.offset;
  Separation result;

  auto consider = [&](double e) {
    if (groups_exactly_one == registry.op_count()) {
      const Schedule schedule = decode(registry, state);
      if (validate_schedule(in, schedule).ok()) {
        result.min_valid = std::min(result.min_valid, e);
        return;
      }
    }
    result.min_invalid = std::min(result.min_invalid, e);
  };

  consider(current);
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int v = std::countr_zero(step);
    current += adj.flip_cost(v, state);
    const int g = group_of[v];
    if (state[v]) {
      state[v] = 0;
      if (--group_count[g] == 1) ++groups_exactly_one;
      if (group_count[g] == 0) --groups_exactly_one;
    } else {
      state[v] = 1;
      if (++group_count[g] == 1) ++groups_exactly_one;
      if (group_count[g] == 2) --groups_exactly_one;
    }
    consider(current);
  }
  return result;
}

Outcome criterion_worked_example() {
  const Instance in = worked_example();
  if (!validate(in).ok()) return {false, "fixture does not validate"};
  const VariableRegistry registry = build_registry(in);
  if (registry.horizon() != 10) {
    return {false, "horizon is " + std::to_string(registry.horizon()) +
                       ", expected 10"};
  }
  if (registry.min_predecessor_time(0, 1) != 1) {
    return {false, "min predecessor time mismatch"};
  }
  const auto first = registry.index_of({0, 0, 0, 0});
  const auto second = registry.index_of({0, 1, 2, 1});
  if (!first || !second) return {false, "fixture variables pruned away"};

  std::vector<std::uint8_t> valid(registry.size(), 0);
  valid[*first] = 1;
  valid[*second] = 1;
  std::vector<std::uint8_t> partial(registry.size(), 0);
  partial[*first] = 1;

  const Qubo unit = build_qubo(in, registry, {1, 1, 1});
  const Weights calibrated = calibrate_weights(in, registry);
  if (calibrated != Weights{10, 10, 10}) {
    return {false, "calibrated weights are not (10, 10, 10)"};
  }
  const Qubo strong = build_qubo(in, registry, calibrated);

  const double e_valid = energy(unit, valid);
  const double e_partial = energy(unit, partial);
  const double e_partial_strong = energy(strong, partial);
  if (e_valid != 3 || e_partial != 2 || e_partial_strong != 11) {
    std::ostringstream detail;
    detail << "energies " << e_valid << "/" << e_partial << "/"
           << e_partial_strong << ", expected 3/2/11";
    return {false, detail.str()};
  }
  return {true, "energies 3/2/11 bit-exact"};
}

Outcome criterion_separation() {
  const std::vector<Instance> instances =
      small_instances(100, 20, {14, 16, 18});
  int checked = 0;
  double smallest_margin = std::numeric_limits<double>::infinity();
  for (const Instance& in : instances) {
    const VariableRegistry registry = build_registry(in);
    const Weights weights = calibrate_weights(in, registry);
    const Qubo q = build_qubo(in, registry, weights);
    const Separation split = classify_landscape(in, registry, q);
    if (!(split.min_valid < std::numeric_limits<double>::infinity())) {
      return {false, "instance " + std::to_string(checked) +
                         " has no valid assignment"};
    }
    if (!(split.min_invalid > split.min_valid)) {
      std::ostringstream detail;
      detail << "instance " << checked << ": min invalid " << split.min_invalid
             << " <= min valid " << split.min_valid;
      return {false, detail.str()};
    }
    smallest_margin =
        std::min(smallest_margin, split.min_invalid - split.min_valid);
    ++checked;
  }
  std::ostringstream detail;
  detail << checked
         << " exhaustive landscapes keep invalid energies above valid"
         << " (smallest margin " << smallest_margin << ")";
  return {true, detail.str()};
}

Outcome criterion_oracle_equivalence() {
  const std::vector<Instance> instances = small_instances(50, 18, {12, 14, 16});
  int checked = 0;
  for (const Instance& in : instances) {
    const VariableRegistry registry = build_registry(in);
    const Weights weights = calibrate_weights(in, registry);
    const Qubo q = build_qubo(in, registry, weights);

    const double exact = solve_exhaustive(q, 18).best().energy;
    SamplerConfig config;
    config.num_reads = 1000;
    config.num_sweeps = 50;
    config.seed = 1000 + static_cast<std::uint64_t>(checked);
    const SampleSet set = solve_sa(q, config);
    if (set.best().energy != exact) {
      std::ostringstream detail;
      detail << "instance " << checked << ": sa best " << set.best().energy
             << " != exhaustive " << exact;
      return {false, detail.str()};
    }

    const Schedule schedule = decode(registry, set.best().assignment);
    if (!schedule.complete || !validate_schedule(in, schedule).ok()) {
      return {false,
              "instance " + std::to_string(checked) +
                  ": minimum-energy sample is not a valid schedule"};
    }
    const int via_qubo = makespan(in, schedule);
    const int via_oracle = solve_schedule_oracle(in, registry).makespan;
    if (via_qubo != via_oracle) {
      std::ostringstream detail;
      detail << "instance " << checked << ": qubo makespan " << via_qubo
             << " != oracle " << via_oracle;
      return {false, detail.str()};
    }
    ++checked;
  }
  return {true, std::to_string(checked) +
                    " instances: sa = exhaustive minimum = oracle makespan"};
}

Outcome criterion_pruning_soundness() {
  const std::vector<Instance> instances = small_instances(50, 20, {14, 16, 18});
  int checked = 0;
  for (const Instance& in : instances) {
    const VariableRegistry registry = build_registry(in);
    OracleOptions pruned;
    OracleOptions full;
    full.pruned_windows = false;
    const int with_pruning = solve_schedule_oracle(in, registry, pruned).makespan;
    const int without = solve_schedule_oracle(in, registry, full).makespan;
    if (with_pruning != without) {
      std::ostringstream detail;
      detail << "instance " << checked << ": pruned optimum " << with_pruning
             << " != full-window optimum " << without;
      return {false, detail.str()};
    }
    ++checked;
  }
  return {true, std::to_string(checked) +
                    " instances keep their optimum under pruning"};
}

Outcome criterion_benchmark_scale() {
  for (int target : {50, 100, 150}) {
    GeneratorSpec spec;
    spec.target_variables = target;
    spec.seed = 1;
    const Instance in = generate(spec);
    const VariableRegistry registry = build_registry(in);
    const Qubo q = build_qubo(in, registry, calibrate_weights(in, registry));
    SamplerConfig config;
    config.num_reads = 1000;
    config.num_sweeps = 3;
    config.seed = static_cast<std::uint64_t>(target);
    const SampleSet set = solve_sa(q, config);
    const Schedule schedule = decode(registry, set.best().assignment);
    const ViolationReport report = validate_schedule(in, schedule);
    if (!schedule.complete || !report.ok()) {
      std::ostringstream detail;
      detail << "size " << registry.size() << ": best sample has "
             << report.total() << " violations (complete="
             << schedule.complete << ")";
      return {false, detail.str()};
    }
  }
  return {true, "sizes 50/100/150 solved with zero violations"};
}

Outcome criterion_ising_roundtrip() {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    Qubo q;
    q.n = n;
    auto coeff = [&rng]() {
      return static_cast<double>(static_cast<long long>(rng() % 41) - 20);
    };
    q.offset = coeff();
    for (int i = 0; i < n; ++i) q.add_linear(i, coeff());
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng() % 2) q.add_quadratic(i, j, coeff());
      }
    }
    const IsingModel m = to_ising(q);
    const Qubo back = to_qubo(m);
    std::vector<std::uint8_t> x(n);
    std::vector<int8_t> s(n);
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
      for (int i = 0; i < n; ++i) {
        x[i] = (mask >> i) & 1;
        s[i] = x[i] ? 1 : -1;
      }
      const double reference = energy(q, x);
      if (ising_energy(m, s) != reference || energy(back, x) != reference) {
        return {false, "trial " + std::to_string(trial) +
                           ": conversion changed an energy"};
      }
    }
  }
  return {true, "1000 random conversions exact on every assignment"};
}

Outcome criterion_trend_fit() {
  std::vector<std::pair<double, double>> points;
  for (double x : {50.0, 100.0, 150.0, 200.0, 250.0}) {
    points.push_back({x, 4.25 * std::log(x) - 3.5});
  }
  const TrendFit fit = fit_log_trend(points);
  if (std::fabs(fit.a - 4.25) > 1e-9 || std::fabs(fit.b + 3.5) > 1e-9 ||
      std::fabs(fit.r_squared - 1.0) > 1e-9) {
    std::ostringstream detail;
    detail << "fit (" << fit.a << ", " << fit.b << ", r2=" << fit.r_squared
           << ") is off";
    return {false, detail.str()};
  }
  const TrendFit flat = fit_log_trend({{2, 7}, {4, 7}, {8, 7}});
  if (!flat.degenerate || flat.r_squared != 0.0) {
    return {false, "zero-variance convention violated"};
  }
  return {true, "synthetic coefficients recovered to 1e-9"};
}

Outcome criterion_bench_determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no --cli path provided"};
  const std::string base = "acceptance_bench";
  const std::string command = "\"" + cli +
                              "\" bench --sizes 12,16,20 --backends sa"
                              " --seed 1 --reads 200 --sweeps 3 --fixed-time"
                              " --report ";
  auto slurp = [](const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
  };
  if (std::system((command + base + "_a.csv > /dev/null").c_str()) != 0) {
    return {false, "first bench run failed"};
  }
  if (std::system((command + base + "_b.csv > /dev/null").c_str()) != 0) {
    return {false, "second bench run failed"};
  }
  const std::string a = slurp(base + "_a.csv");
  const std::string b = slurp(base + "_b.csv");
  if (a.empty() || a != b) {
    return {false, "csv artifacts differ between runs"};
  }
  return {true, "two bench runs emitted byte-identical csv"};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }

  struct Criterion {
    std::string title;
    std::function<Outcome()> run;
    double time_budget_seconds = 0.0;  // 0 = no stated bound
  };
  const std::vector<Criterion> criteria = {
      {"worked-example energies 3/2/11", criterion_worked_example, 1.0},
      {"penalty separation at oracle scale", criterion_separation, 300.0},
      {"sa/exhaustive/oracle equivalence", criterion_oracle_equivalence, 300.0},
      {"pruning soundness", criterion_pruning_soundness},
      {"valid solutions at sizes 50/100/150", criterion_benchmark_scale},
      {"spin conversion round-trip", criterion_ising_roundtrip},
      {"log trendline recovery", criterion_trend_fit},
      {"bench csv determinism", [&cli] { return criterion_bench_determinism(cli); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].run();
    } catch (const std::exception& err) {
      outcome = {false, std::string("exception: ") + err.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (outcome.passed && criteria[i].time_budget_seconds > 0.0 &&
        seconds > criteria[i].time_budget_seconds) {
      outcome.passed = false;
      outcome.detail += " [over the stated time budget]";
    }
    std::ostringstream line;
    line << (outcome.passed ? "[PASS] " : "[FAIL] ") << (i + 1) << ". "
         << criteria[i].title << ": " << outcome.detail << " (" << std::fixed
         << std::setprecision(2) << seconds << "s)";
    std::cout << line.str() << std::endl;
    if (!outcome.passed) ++failures;
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
