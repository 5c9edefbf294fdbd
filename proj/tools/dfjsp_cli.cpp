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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dfjsp/compiler.hpp"
#include "dfjsp/generator.hpp"
#include "dfjsp/harness.hpp"
#include "dfjsp/instance.hpp"
#include "dfjsp/qubo.hpp"
#include "dfjsp/remote.hpp"
#include "dfjsp/samplers.hpp"
#include "dfjsp/schedule.hpp"
#include "dfjsp/worked_example.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kUsageError = 2;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

dfjsp::Instance load_checked(const std::string& path) {
  dfjsp::Instance instance = dfjsp::load_instance_file(path);
  const dfjsp::ValidationReport report = dfjsp::validate(instance);
  if (!report.ok()) {
    throw std::runtime_error("instance is invalid:\n" + report.to_string());
  }
  return instance;
}

struct SolveArgs {
  std::string instance_path;
  std::string backend = "sa";
  int reads = 1000;
  int sweeps = 3;
  std::uint64_t seed = 0;
  std::optional<double> beta_min;
  double beta_max = 10.0;
  std::string schedule_out;
  std::string remote_config_path;
  bool gantt = false;
};

int run_solve(const SolveArgs& args) {
  const dfjsp::Instance instance = load_checked(args.instance_path);
  const dfjsp::VariableRegistry registry = dfjsp::build_registry(instance);
  const dfjsp::Weights weights = dfjsp::calibrate_weights(instance, registry);
  const dfjsp::Qubo qubo = dfjsp::build_qubo(instance, registry, weights);

  dfjsp::Sample best;
  if (args.backend == "oracle") {
    const dfjsp::OracleResult oracle =
        dfjsp::solve_schedule_oracle(instance, registry);
    best.assignment = dfjsp::encode(registry, oracle.schedule);
    best.energy = dfjsp::energy(qubo, best.assignment);
  } else if (args.backend == "exhaustive") {
    best = dfjsp::solve_exhaustive(qubo).best();
  } else if (args.backend == "sa") {
    dfjsp::SamplerConfig config;
    config.num_reads = args.reads;
    config.num_sweeps = args.sweeps;
    config.seed = args.seed;
    config.beta_min = args.beta_min;
    config.beta_max = args.beta_max;
    best = dfjsp::solve_sa(qubo, config).best();
  } else if (args.backend == "remote") {
    dfjsp::RemoteConfig config = args.remote_config_path.empty()
                                     ? dfjsp::remote_config_from_env()
                                     : dfjsp::load_remote_config(args.remote_config_path);
    best = dfjsp::solve_remote(qubo, config, args.reads).best();
  } else {
    std::cerr << "unknown backend: " << args.backend << "\n";
    return kUsageError;
  }

  const dfjsp::Schedule schedule = dfjsp::decode(registry, best.assignment);
  const dfjsp::ViolationReport report =
      dfjsp::validate_schedule(instance, schedule);

  std::cout << "variables " << registry.size() << "\n"
            << "t_max " << registry.horizon() << "\n"
            << "best_energy " << dfjsp::detail::format_coefficient(best.energy)
            << "\n"
            << "violations " << report.total() << "\n";
  if (schedule.complete) {
    std::cout << "makespan " << dfjsp::makespan(instance, schedule) << "\n";
  } else {
    std::cout << "makespan -\n";
  }
  if (!report.ok()) std::cout << report.to_string();
  std::cout << dfjsp::export_schedule_text(instance, schedule);
  if (args.gantt) std::cout << dfjsp::render_gantt(instance, schedule);
  if (!args.schedule_out.empty()) {
    write_file(args.schedule_out,
               dfjsp::export_schedule_text(instance, schedule));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed flexible job shop scheduling via QUBO compilation "
               "and annealing"};
  app.require_subcommand(1);

  // generate
  auto* generate_cmd =
      app.add_subcommand("generate", "Generate a random instance document");
  dfjsp::GeneratorSpec spec;
  std::string generate_out;
  generate_cmd->add_option("--target", spec.target_variables,
                           "Target variable count after pruning");
  generate_cmd->add_option("--seed", spec.seed, "Generator seed");
  generate_cmd->add_option("--out", generate_out, "Output instance file");
  generate_cmd->add_option("--jobs", spec.jobs, "Job count");
  generate_cmd->add_option("--min-ops", spec.min_ops_per_job,
                           "Minimum operations per job");
  generate_cmd->add_option("--max-machines-per-op", spec.max_machines_per_op,
                           "Maximum eligible machines per operation");
  generate_cmd->add_option("--factories", spec.factories, "Factory count");
  generate_cmd->add_option("--ptime-min", spec.ptime_min, "Processing time lower bound");
  generate_cmd->add_option("--ptime-max", spec.ptime_max, "Processing time upper bound");
  generate_cmd->add_option("--ship-min", spec.ship_min, "Shipping time lower bound");
  generate_cmd->add_option("--ship-max", spec.ship_max, "Shipping time upper bound");

  // compile
  auto* compile_cmd = app.add_subcommand(
      "compile", "Compile an instance to QUBO export text");
  std::string compile_instance, compile_out;
  std::optional<double> alpha, beta, gamma;
  compile_cmd->add_option("--instance", compile_instance, "Instance file")
      ->required();
  compile_cmd->add_option("--out", compile_out, "Output qubo file");
  compile_cmd->add_option("--alpha", alpha, "Precedence weight (default t_max)");
  compile_cmd->add_option("--beta", beta, "Start-once weight (default t_max)");
  compile_cmd->add_option("--gamma", gamma, "No-overlap weight (default t_max)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  SolveArgs solve_args;
  solve_cmd->add_option("--instance", solve_args.instance_path, "Instance file")
      ->required();
  solve_cmd->add_option("--backend", solve_args.backend,
                        "sa | exhaustive | oracle | remote");
  solve_cmd->add_option("--reads", solve_args.reads, "Number of reads");
  solve_cmd->add_option("--sweeps", solve_args.sweeps, "Sweeps per read");
  solve_cmd->add_option("--seed", solve_args.seed, "Sampler seed");
  double beta_min_arg = -1.0;
  solve_cmd->add_option("--beta-min", beta_min_arg,
                        "Initial inverse temperature (default 1/max|coeff|)");
  solve_cmd->add_option("--beta-max", solve_args.beta_max,
                        "Final inverse temperature");
  solve_cmd->add_option("--schedule-out", solve_args.schedule_out,
                        "Write the decoded schedule to this file");
  solve_cmd->add_option("--remote-config", solve_args.remote_config_path,
                        "Remote endpoint config file (else environment)");
  solve_cmd->add_flag("--gantt", solve_args.gantt, "Print a text chart");

  // validate
  auto* validate_cmd =
      app.add_subcommand("validate", "Validate a schedule against an instance");
  std::string validate_instance, validate_schedule_path;
  validate_cmd->add_option("--instance", validate_instance, "Instance file")
      ->required();
  validate_cmd->add_option("--schedule", validate_schedule_path, "Schedule file")
      ->required();

  // bench
  auto* bench_cmd = app.add_subcommand(
      "bench", "Sweep generated instances across backends and report");
  std::vector<int> bench_sizes{50, 100, 150};
  std::vector<std::string> bench_backends{"sa"};
  std::uint64_t bench_seed = 1;
  int bench_reads = 1000, bench_sweeps = 3;
  std::string bench_report_path, bench_json_path;
  bool bench_fixed_time = false;
  bench_cmd->add_option("--sizes", bench_sizes, "Target variable counts")
      ->delimiter(',');
  bench_cmd->add_option("--backends", bench_backends,
                        "Backends: sa | exhaustive | oracle")
      ->delimiter(',');
  bench_cmd->add_option("--seed", bench_seed, "Base seed");
  bench_cmd->add_option("--reads", bench_reads, "Reads per solve");
  bench_cmd->add_option("--sweeps", bench_sweeps, "Sweeps per read");
  bench_cmd->add_option("--report", bench_report_path, "CSV output file");
  bench_cmd->add_option("--json", bench_json_path, "JSON mirror output file");
  bench_cmd->add_flag("--fixed-time", bench_fixed_time,
                      "Record wall_time_ns=1 for byte-stable artifacts");
  std::string bench_remote_config;
  bench_cmd->add_option("--remote-config", bench_remote_config,
                        "Remote endpoint config for the remote backend");

  // fixture-4-4
  auto* fixture_cmd = app.add_subcommand(
      "fixture-4-4",
      "Run the built-in calibration example and print its reference energies");
  std::string fixture_out;
  fixture_cmd->add_option("--out", fixture_out,
                          "Also write the fixture instance document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    app.exit(help);
    return kOk;
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kUsageError;
  }

  try {
    if (generate_cmd->parsed()) {
      const dfjsp::Instance instance = dfjsp::generate(spec);
      const std::string text = dfjsp::save_instance(instance);
      if (generate_out.empty()) {
        std::cout << text;
      } else {
        write_file(generate_out, text);
        std::cout << "variables " << dfjsp::build_registry(instance).size()
                  << "\n";
      }
      return kOk;
    }

    if (compile_cmd->parsed()) {
      const dfjsp::Instance instance = load_checked(compile_instance);
      const dfjsp::VariableRegistry registry = dfjsp::build_registry(instance);
      dfjsp::Weights weights = dfjsp::calibrate_weights(instance, registry);
      if (alpha) weights.alpha = *alpha;
      if (beta) weights.beta = *beta;
      if (gamma) weights.gamma = *gamma;
      const dfjsp::Qubo qubo = dfjsp::build_qubo(instance, registry, weights);
      std::cout << "t_max " << registry.horizon() << "\n"
                << "variables " << registry.size() << "\n"
                << "linear_terms " << qubo.linear.size() << "\n"
                << "quadratic_terms " << qubo.quadratic.size() << "\n"
                << "weights " << dfjsp::detail::format_coefficient(weights.alpha)
                << " " << dfjsp::detail::format_coefficient(weights.beta) << " "
                << dfjsp::detail::format_coefficient(weights.gamma) << "\n";
      const std::string text = dfjsp::export_qubo_text(qubo);
      if (compile_out.empty()) {
        std::cout << text;
      } else {
        write_file(compile_out, text);
      }
      return kOk;
    }

    if (solve_cmd->parsed()) {
      if (beta_min_arg > 0.0) solve_args.beta_min = beta_min_arg;
      return run_solve(solve_args);
    }

    if (validate_cmd->parsed()) {
      const dfjsp::Instance instance = load_checked(validate_instance);
      std::ifstream file(validate_schedule_path);
      if (!file) {
        throw std::runtime_error("cannot open schedule file: " +
                                 validate_schedule_path);
      }
      std::ostringstream buffer;
      buffer << file.rdbuf();
      const dfjsp::Schedule schedule =
          dfjsp::parse_schedule_text(instance, buffer.str());
      const dfjsp::ViolationReport report =
          dfjsp::validate_schedule(instance, schedule);
      if (!schedule.complete) std::cout << "schedule incomplete\n";
      std::cout << "violations " << report.total() << "\n" << report.to_string();
      if (schedule.complete && report.ok()) {
        std::cout << "makespan " << dfjsp::makespan(instance, schedule) << "\n";
        return kOk;
      }
      return kValidationFailure;
    }

    if (bench_cmd->parsed()) {
      std::vector<dfjsp::ExperimentPlanEntry> plan;
      for (int size : bench_sizes) {
        dfjsp::ExperimentPlanEntry entry;
        entry.spec.target_variables = size;
        entry.spec.seed = bench_seed;
        entry.backends = bench_backends;
        entry.config.num_reads = bench_reads;
        entry.config.num_sweeps = bench_sweeps;
        entry.config.seed = bench_seed;
        plan.push_back(entry);
      }
      dfjsp::ExperimentOptions options;
      options.fixed_time = bench_fixed_time;
      const dfjsp::RemoteConfig remote = bench_remote_config.empty()
                                             ? dfjsp::remote_config_from_env()
                                             : dfjsp::load_remote_config(bench_remote_config);
      if (!remote.endpoint.empty()) {
        options.remote_solver = [remote](const dfjsp::Qubo& q, int reads) {
          return dfjsp::solve_remote(q, remote, reads);
        };
      }
      const std::vector<dfjsp::RunRecord> records =
          dfjsp::run_experiment(plan, options);
      const std::string csv = dfjsp::report_csv(records);
      if (bench_report_path.empty()) {
        std::cout << csv;
      } else {
        write_file(bench_report_path, csv);
        for (const auto& [backend, body] : dfjsp::report_series(records)) {
          write_file(bench_report_path + ".series-" + backend + ".txt", body);
        }
      }
      if (!bench_json_path.empty()) {
        write_file(bench_json_path, dfjsp::report_json(records));
      }
      for (const dfjsp::RunRecord& r : records) {
        if (r.error) {
          std::cerr << "size " << r.instance_size << " backend " << r.backend
                    << ": " << *r.error << "\n";
        }
      }
      return kOk;
    }

    if (fixture_cmd->parsed()) {
      const dfjsp::Instance instance = dfjsp::worked_example();
      const dfjsp::VariableRegistry registry = dfjsp::build_registry(instance);
      std::cout << "t_max " << registry.horizon() << "\n"
                << "min_predecessor_time " << registry.min_predecessor_time(0, 1)
                << "\n"
                << "variables " << registry.size() << "\n";

      const auto scheduled = registry.index_of({0, 0, 0, 0});
      const auto second = registry.index_of({0, 1, 2, 1});
      if (!scheduled || !second) {
        throw std::logic_error("fixture variables missing from registry");
      }
      std::vector<std::uint8_t> valid(registry.size(), 0);
      valid[*scheduled] = 1;
      valid[*second] = 1;
      std::vector<std::uint8_t> partial(registry.size(), 0);
      partial[*scheduled] = 1;

      const dfjsp::Qubo unit =
          dfjsp::build_qubo(instance, registry, {1.0, 1.0, 1.0});
      const dfjsp::Weights calibrated =
          dfjsp::calibrate_weights(instance, registry);
      const dfjsp::Qubo strong = dfjsp::build_qubo(instance, registry, calibrated);

      std::cout << "energy_valid_beta1 "
                << dfjsp::detail::format_coefficient(dfjsp::energy(unit, valid))
                << "\n"
                << "energy_unscheduled_beta1 "
                << dfjsp::detail::format_coefficient(dfjsp::energy(unit, partial))
                << "\n"
                << "energy_unscheduled_beta_tmax "
                << dfjsp::detail::format_coefficient(dfjsp::energy(strong, partial))
                << "\n";
      if (!fixture_out.empty()) {
        write_file(fixture_out, dfjsp::save_instance(instance));
      }
      return kOk;
    }
  } catch (const dfjsp::ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsageError;
  } catch (const dfjsp::SchemaError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsageError;
  } catch (const dfjsp::TooLargeError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsageError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kValidationFailure;
  }
  return kUsageError;
}
