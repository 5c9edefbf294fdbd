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

#ifndef DFJSP_COMPILER_HPP
#define DFJSP_COMPILER_HPP

#include <array>
#include <cassert>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dfjsp/instance.hpp"
#include "dfjsp/qubo.hpp"

namespace dfjsp {

/// One time-indexed decision: operation `op` of `job` starts on `machine` at
/// time `start`.
struct VariableKey {
  int job = 0;
  int op = 0;
  int machine = 0;
  int start = 0;

  friend auto operator<=>(const VariableKey&, const VariableKey&) = default;
};

/// Penalty weights for the precedence, start-once and no-overlap terms.
struct Weights {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;

  friend bool operator==(const Weights&, const Weights&) = default;
};

/// Upper bound on the makespan of any reasonable schedule: every operation on
/// its slowest machine plus the worst shipping hop between each pair of
/// consecutive operations. Scheduling all jobs back to back never exceeds it.
inline int compute_horizon(const Instance& in) {
  int horizon = 0;
  for (const Job& job : in.jobs) {
    const int ops = static_cast<int>(job.operations.size());
    for (int o = 0; o < ops; ++o) {
      int worst_p = 0;
      for (const MachineOption& mo : job.operations[o].options) {
        worst_p = std::max(worst_p, mo.ptime);
      }
      horizon += worst_p;
      if (o + 1 < ops) {
        int worst_d = 0;
        for (const MachineOption& a : job.operations[o].options) {
          for (const MachineOption& b : job.operations[o + 1].options) {
            worst_d = std::max(worst_d, in.distance(a.machine, b.machine));
          }
        }
        horizon += worst_d;
      }
    }
  }
  return horizon;
}

/// Minimum time before operation `op` of `job` can start: each earlier
/// operation contributes its cheapest (processing + shipping to the next
/// operation's machine) over the machine pair, lowest machine index winning
/// ties.
inline int min_predecessor_time(const Instance& in, int job, int op) {
  const Job& j = in.jobs.at(job);
  int total = 0;
  for (int o = 0; o < op; ++o) {
    int best = std::numeric_limits<int>::max();
    for (const MachineOption& from : j.operations[o].options) {
      for (const MachineOption& to : j.operations[o + 1].options) {
        best = std::min(best, from.ptime + in.distance(from.machine, to.machine));
      }
    }
    total += best;
  }
  return total;
}

/// Minimum time operation `op` must leave after itself: every strict
/// successor contributes its cheapest (shipping from the previous operation's
/// machine + processing).
inline int min_successor_time(const Instance& in, int job, int op) {
  const Job& j = in.jobs.at(job);
  const int ops = static_cast<int>(j.operations.size());
  int total = 0;
  for (int o = op + 1; o < ops; ++o) {
    int best = std::numeric_limits<int>::max();
    for (const MachineOption& from : j.operations[o - 1].options) {
      for (const MachineOption& to : j.operations[o].options) {
        best = std::min(best, in.distance(from.machine, to.machine) + to.ptime);
      }
    }
    total += best;
  }
  return total;
}

/// The surviving decision variables after window pruning, in a fixed
/// (job, op, machine, start) order, together with the horizon and the
/// per-operation window data the pruning used.
class VariableRegistry {
 public:
  VariableRegistry() = default;

  int size() const { return static_cast<int>(keys_.size()); }
  int horizon() const { return horizon_; }
  int op_count() const { return static_cast<int>(op_vars_.size()); }
  int job_count() const { return static_cast<int>(op_offset_.size()); }

  const std::vector<VariableKey>& keys() const { return keys_; }
  const VariableKey& key(int index) const { return keys_.at(index); }

  std::optional<int> index_of(const VariableKey& key) const {
    auto it = index_.find({key.job, key.op, key.machine, key.start});
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int flat_op(int job, int op) const { return op_offset_.at(job) + op; }
  int ops_in_job(int job) const {
    const int next = job + 1 < job_count() ? op_offset_[job + 1] : op_count();
    return next - op_offset_[job];
  }

  /// Variable indices of one (job, op) group, ascending.
  const std::vector<int>& vars_of_op(int flat_op_id) const {
    return op_vars_.at(flat_op_id);
  }

  int min_predecessor_time(int job, int op) const {
    return pred_time_.at(flat_op(job, op));
  }
  int min_successor_time(int job, int op) const {
    return succ_time_.at(flat_op(job, op));
  }

  friend VariableRegistry build_registry(const Instance& in);

 private:
  std::vector<VariableKey> keys_;
  std::map<std::array<int, 4>, int> index_;
  int horizon_ = 0;
  std::vector<int> op_offset_;             // job -> first flat op id
  std::vector<std::vector<int>> op_vars_;  // flat op id -> variable indices
  std::vector<int> pred_time_;             // flat op id -> P
  std::vector<int> succ_time_;             // flat op id -> S
};

/// Enumerates every (job, op, machine, start) whose start lies in the pruned
/// window [P, horizon - p - S]. Starts outside the window cannot appear in a
/// schedule that beats the horizon bound.
inline VariableRegistry build_registry(const Instance& in) {
  VariableRegistry reg;
  reg.horizon_ = compute_horizon(in);
  for (const Job& job : in.jobs) {
    reg.op_offset_.push_back(static_cast<int>(reg.op_vars_.size()));
    for (int o = 0; o < static_cast<int>(job.operations.size()); ++o) {
      const int pred = min_predecessor_time(in, job.id, o);
      const int succ = min_successor_time(in, job.id, o);
      reg.pred_time_.push_back(pred);
      reg.succ_time_.push_back(succ);
      std::vector<int> group;
      std::vector<MachineOption> options = job.operations[o].options;
      std::sort(options.begin(), options.end(),
                [](const MachineOption& a, const MachineOption& b) {
                  return a.machine < b.machine;
                });
      for (const MachineOption& mo : options) {
        const int last = reg.horizon_ - mo.ptime - succ;
        for (int t = pred; t <= last; ++t) {
          const int index = static_cast<int>(reg.keys_.size());
          reg.keys_.push_back({job.id, o, mo.machine, t});
          reg.index_[{job.id, o, mo.machine, t}] = index;
          group.push_back(index);
        }
      }
      // The horizon bound always leaves room for start = P.
      assert(!group.empty() && "window pruning emptied an operation");
      reg.op_vars_.push_back(std::move(group));
    }
  }
  return reg;
}

/// All three penalty weights are set to the horizon: no single makespan
/// coefficient can outweigh a constraint violation, so invalid assignments
/// cannot undercut valid schedules.
inline Weights calibrate_weights(const Instance& in,
                                 const VariableRegistry& registry) {
  (void)in;
  const double w = static_cast<double>(registry.horizon());
  return Weights{w, w, w};
}

/// Compiles the cost function
///   H(x) = alpha * precedence + beta * start_once + gamma * no_overlap
///          + completion_term
/// over the registry's variables. On any 0/1 assignment, energy(qubo, x)
/// equals the weighted sum of violation counts plus the sum of
/// (start + ptime - P) over scheduled operations.
inline Qubo build_qubo(const Instance& in, const VariableRegistry& registry,
                       const Weights& weights) {
  if (weights.alpha < 0 || weights.beta < 0 || weights.gamma < 0) {
    throw std::invalid_argument("penalty weights must be nonnegative");
  }
  Qubo q;
  q.n = registry.size();

  // Completion objective: each set variable costs its completion time
  // measured from the operation's earliest possible start.
  for (int v = 0; v < registry.size(); ++v) {
    const VariableKey& key = registry.key(v);
    const int p = in.ptime(key.job, key.op, key.machine);
    const int pred = registry.min_predecessor_time(key.job, key.op);
    q.add_linear(v, static_cast<double>(key.start + p - pred));
  }

  // Start-once: (sum of group - 1)^2 expands to -x per variable, +2 per pair
  // inside the group, +1 constant per group.
  for (int g = 0; g < registry.op_count(); ++g) {
    const std::vector<int>& group = registry.vars_of_op(g);
    for (std::size_t a = 0; a < group.size(); ++a) {
      q.add_linear(group[a], -weights.beta);
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        q.add_quadratic(group[a], group[b], 2.0 * weights.beta);
      }
    }
    q.offset += weights.beta;
  }

  // Precedence: penalize any pair of starts of consecutive operations that
  // leaves no room for processing plus shipping.
  for (int job = 0; job < registry.job_count(); ++job) {
    const int ops = registry.ops_in_job(job);
    for (int o = 0; o + 1 < ops; ++o) {
      const std::vector<int>& first = registry.vars_of_op(registry.flat_op(job, o));
      const std::vector<int>& second =
          registry.vars_of_op(registry.flat_op(job, o + 1));
      for (int u : first) {
        const VariableKey& a = registry.key(u);
        const int p = in.ptime(a.job, a.op, a.machine);
        for (int v : second) {
          const VariableKey& b = registry.key(v);
          if (b.start - a.start < p + in.distance(a.machine, b.machine)) {
            q.add_quadratic(u, v, weights.alpha);
          }
        }
      }
    }
  }

  // No-overlap: on each machine, starts of different jobs may not coincide
  // and may not fall inside a running operation's processing window.
  std::vector<std::vector<int>> by_machine(in.machine_count());
  for (int v = 0; v < registry.size(); ++v) {
    by_machine[registry.key(v).machine].push_back(v);
  }
  for (const std::vector<int>& vars : by_machine) {
    for (std::size_t a = 0; a < vars.size(); ++a) {
      const VariableKey& u = registry.key(vars[a]);
      const int pu = in.ptime(u.job, u.op, u.machine);
      for (std::size_t b = a + 1; b < vars.size(); ++b) {
        const VariableKey& w = registry.key(vars[b]);
        if (u.job == w.job) continue;
        const int pw = in.ptime(w.job, w.op, w.machine);
        bool collides = false;
        if (u.start == w.start) {
          collides = pu > 0 && pw > 0;
        } else if (u.start < w.start) {
          collides = w.start - u.start < pu;
        } else {
          collides = u.start - w.start < pw;
        }
        if (collides) q.add_quadratic(vars[a], vars[b], weights.gamma);
      }
    }
  }
  return q;
}

}  // namespace dfjsp

#endif  // DFJSP_COMPILER_HPP
