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

#ifndef DFJSP_SAMPLERS_HPP
#define DFJSP_SAMPLERS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "dfjsp/compiler.hpp"
#include "dfjsp/qubo.hpp"
#include "dfjsp/schedule.hpp"

namespace dfjsp {

struct Sample {
  std::vector<std::uint8_t> assignment;
  double energy = 0.0;
  long long occurrences = 1;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct SampleSetMetadata {
  std::string backend;
  long long reads = 0;
  int sweeps = 0;
  std::uint64_t seed = 0;
  long long wall_time_ns = 0;

  friend bool operator==(const SampleSetMetadata&,
                         const SampleSetMetadata&) = default;
};

/// Solver output: samples ascending by (energy, assignment), identical
/// assignments merged with occurrence counts.
struct SampleSet {
  std::vector<Sample> samples;
  SampleSetMetadata metadata;

  const Sample& best() const {
    if (samples.empty()) throw std::logic_error("empty sample set");
    return samples.front();
  }

  friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

struct SamplerConfig {
  int num_reads = 1000;
  int num_sweeps = 3;
  std::uint64_t seed = 0;
  /// Geometric inverse-temperature ladder endpoints. beta_min defaults to
  /// 1 / max|coefficient| so the first sweep accepts most moves.
  std::optional<double> beta_min;
  double beta_max = 10.0;
};

class TooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Per-variable adjacency over the quadratic terms, for O(degree) flip costs.
struct Adjacency {
  std::vector<double> linear;
  std::vector<std::vector<std::pair<int, double>>> neighbors;

  explicit Adjacency(const Qubo& q)
      : linear(q.n, 0.0), neighbors(static_cast<std::size_t>(q.n)) {
    for (const auto& [i, a] : q.linear) linear[i] = a;
    for (const auto& [ij, b] : q.quadratic) {
      neighbors[ij.first].push_back({ij.second, b});
      neighbors[ij.second].push_back({ij.first, b});
    }
  }

  /// Energy change of flipping variable v in state x.
  double flip_cost(int v, const std::vector<std::uint8_t>& x) const {
    double field = linear[v];
    for (const auto& [u, b] : neighbors[v]) {
      if (x[u]) field += b;
    }
    return x[v] ? -field : field;
  }
};

/// Uniform double in [0, 1) from the top 53 bits; avoids the
/// implementation-defined std distributions.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 step; decorrelates per-read streams derived from one seed.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline void sort_and_merge(std::vector<Sample>& samples) {
  std::sort(samples.begin(), samples.end(),
            [](const Sample& a, const Sample& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              return a.assignment < b.assignment;
            });
  std::vector<Sample> merged;
  for (Sample& s : samples) {
    if (!merged.empty() && merged.back().assignment == s.assignment) {
      merged.back().occurrences += s.occurrences;
    } else {
      merged.push_back(std::move(s));
    }
  }
  samples = std::move(merged);
}

}  // namespace detail

/// Simulated annealing: `num_reads` independent restarts from uniform random
/// assignments, each performing `num_sweeps` full index-order Metropolis
/// sweeps along a geometric inverse-temperature ladder. Each read draws its
/// own stream from (seed, read), so results do not depend on execution order.
inline SampleSet solve_sa(const Qubo& q, const SamplerConfig& config = {}) {
  if (q.n < 1) throw std::invalid_argument("qubo must have at least 1 variable");
  if (config.num_reads < 1) throw std::invalid_argument("num_reads must be >= 1");
  if (config.num_sweeps < 1) throw std::invalid_argument("num_sweeps must be >= 1");

  const double max_abs = q.max_abs_coefficient();
  const double beta_min =
      config.beta_min.value_or(max_abs > 0.0 ? 1.0 / max_abs : 0.1);
  const double beta_max = config.beta_max;
  if (!(beta_min < beta_max)) {
    throw std::invalid_argument("beta_min must be < beta_max");
  }

  std::vector<double> ladder(static_cast<std::size_t>(config.num_sweeps));
  if (config.num_sweeps == 1) {
    ladder[0] = beta_max;
  } else {
    const double ratio = beta_max / beta_min;
    for (int k = 0; k < config.num_sweeps; ++k) {
      ladder[k] = beta_min *
                  std::pow(ratio, static_cast<double>(k) /
                                      static_cast<double>(config.num_sweeps - 1));
    }
  }

  const detail::Adjacency adj(q);
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(config.num_reads));
  std::vector<std::uint8_t> state(static_cast<std::size_t>(q.n));
  for (int read = 0; read < config.num_reads; ++read) {
    std::mt19937_64 rng(detail::mix_seed(config.seed,
                                         static_cast<std::uint64_t>(read)));
    for (int v = 0; v < q.n; ++v) state[v] = static_cast<std::uint8_t>(rng() & 1);
    for (double beta : ladder) {
      for (int v = 0; v < q.n; ++v) {
        const double delta = adj.flip_cost(v, state);
        if (delta <= 0.0 ||
            detail::uniform01(rng) < std::exp(-beta * delta)) {
          state[v] ^= 1;
        }
      }
    }
    samples.push_back({state, energy(q, state), 1});
  }
  detail::sort_and_merge(samples);

  SampleSet out;
  out.samples = std::move(samples);
  out.metadata.backend = "sa";
  out.metadata.reads = config.num_reads;
  out.metadata.sweeps = config.num_sweeps;
  out.metadata.seed = config.seed;
  out.metadata.wall_time_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

/// Enumerates all 2^n assignments in Gray-code order with incremental energy
/// updates. Guaranteed global minimum; keeps the `top_k` best samples.
inline SampleSet solve_exhaustive(const Qubo& q, int max_variables = 24,
                                  int top_k = 64) {
  if (q.n < 1) throw std::invalid_argument("qubo must have at least 1 variable");
  if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
  if (q.n > max_variables) {
    throw TooLargeError("exhaustive enumeration limited to " +
                        std::to_string(max_variables) + " variables, qubo has " +
                        std::to_string(q.n));
  }
  const auto t0 = std::chrono::steady_clock::now();
  const detail::Adjacency adj(q);

  std::vector<std::uint8_t> state(static_cast<std::size_t>(q.n), 0);
  double current = q.offset;

  // Max-heap of the best top_k (energy, assignment) seen so far.
  auto worse = [](const Sample& a, const Sample& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.assignment < b.assignment;
  };
  std::vector<Sample> heap;
  heap.reserve(static_cast<std::size_t>(top_k) + 1);
  auto offer = [&](const Sample& s) {
    if (static_cast<int>(heap.size()) < top_k) {
      heap.push_back(s);
      std::push_heap(heap.begin(), heap.end(), worse);
    } else if (worse(s, heap.front())) {
      std::pop_heap(heap.begin(), heap.end(), worse);
      heap.back() = s;
      std::push_heap(heap.begin(), heap.end(), worse);
    }
  };

  offer({state, current, 1});
  const std::uint64_t total = 1ULL << q.n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int v = std::countr_zero(step);
    current += adj.flip_cost(v, state);
    state[v] ^= 1;
    offer({state, current, 1});
  }
  detail::sort_and_merge(heap);

  SampleSet out;
  out.samples = std::move(heap);
  out.metadata.backend = "exhaustive";
  out.metadata.reads = static_cast<long long>(total);
  out.metadata.sweeps = 0;
  out.metadata.seed = 0;
  out.metadata.wall_time_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

struct OracleOptions {
  bool pruned_windows = true;     // false: every start in [0, horizon - p]
  long long choice_limit = 10'000'000;
};

struct OracleResult {
  int makespan = 0;
  Schedule schedule;
  long long enumerated = 0;  // complete schedules visited
};

/// Direct schedule-space search, independent of the QUBO path: assigns every
/// operation a machine and a start inside its window, enforcing precedence
/// and machine exclusivity combinatorially. Returns a minimum-makespan
/// schedule (first one found in deterministic order).
inline OracleResult solve_schedule_oracle(const Instance& in,
                                          const VariableRegistry& registry,
                                          const OracleOptions& options = {}) {
  struct Choice {
    int machine;
    int ptime;
    int start;
  };
  struct OpSlot {
    int job;
    int op;
    std::vector<Choice> choices;
  };

  std::vector<OpSlot> slots;
  long long combinations = 1;
  for (int job = 0; job < in.job_count(); ++job) {
    const int ops = static_cast<int>(in.jobs[job].operations.size());
    for (int op = 0; op < ops; ++op) {
      OpSlot slot{job, op, {}};
      std::vector<MachineOption> options_sorted = in.jobs[job].operations[op].options;
      std::sort(options_sorted.begin(), options_sorted.end(),
                [](const MachineOption& a, const MachineOption& b) {
                  return a.machine < b.machine;
                });
      for (const MachineOption& mo : options_sorted) {
        int lo = 0;
        int hi = registry.horizon() - mo.ptime;
        if (options.pruned_windows) {
          lo = registry.min_predecessor_time(job, op);
          hi = registry.horizon() - mo.ptime -
               registry.min_successor_time(job, op);
        }
        for (int t = lo; t <= hi; ++t) {
          slot.choices.push_back({mo.machine, mo.ptime, t});
        }
      }
      if (slot.choices.empty()) {
        throw std::logic_error("operation has no feasible choice");
      }
      if (combinations > options.choice_limit / static_cast<long long>(
                                                    slot.choices.size())) {
        throw TooLargeError("schedule oracle: choice space exceeds limit");
      }
      combinations *= static_cast<long long>(slot.choices.size());
      slots.push_back(std::move(slot));
    }
  }

  OracleResult result;
  result.makespan = registry.horizon() + 1;

  std::vector<int> picked(slots.size(), -1);
  std::vector<ScheduleEntry> current(slots.size());

  // Depth-first over operations in (job, op) order; prune against the
  // incumbent and check constraints against already-placed entries.
  auto feasible = [&](std::size_t depth, const Choice& c) {
    const OpSlot& slot = slots[depth];
    if (slot.op > 0) {
      const ScheduleEntry& prev = current[depth - 1];  // same job, previous op
      const int p = in.ptime(prev.job, prev.op, prev.machine);
      if (c.start - prev.start < p + in.distance(prev.machine, c.machine)) {
        return false;
      }
    }
    for (std::size_t i = 0; i < depth; ++i) {
      const ScheduleEntry& other = current[i];
      if (other.machine != c.machine || other.job == slot.job) continue;
      const int po = in.ptime(other.job, other.op, other.machine);
      if (other.start == c.start) return false;
      if (other.start < c.start && c.start - other.start < po) return false;
      if (c.start < other.start && other.start - c.start < c.ptime) return false;
    }
    return true;
  };

  long long visited = 0;
  auto search = [&](auto&& self, std::size_t depth, int partial_span) -> void {
    if (depth == slots.size()) {
      ++visited;
      if (partial_span < result.makespan) {
        result.makespan = partial_span;
        result.schedule.entries.assign(current.begin(), current.end());
      }
      return;
    }
    const OpSlot& slot = slots[depth];
    for (const Choice& c : slot.choices) {
      const int end = c.start + c.ptime;
      if (std::max(partial_span, end) >= result.makespan) continue;
      if (!feasible(depth, c)) continue;
      current[depth] = {slot.job, slot.op, c.machine, c.start};
      self(self, depth + 1, std::max(partial_span, end));
    }
  };
  search(search, 0, 0);

  if (result.schedule.entries.empty()) {
    throw std::logic_error("schedule oracle found no feasible schedule");
  }
  std::sort(result.schedule.entries.begin(), result.schedule.entries.end());
  result.schedule.complete = true;
  result.enumerated = visited;
  return result;
}

}  // namespace dfjsp

#endif  // DFJSP_SAMPLERS_HPP
