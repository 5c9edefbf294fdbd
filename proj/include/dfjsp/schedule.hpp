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

#ifndef DFJSP_SCHEDULE_HPP
#define DFJSP_SCHEDULE_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dfjsp/compiler.hpp"
#include "dfjsp/instance.hpp"

namespace dfjsp {

struct ScheduleEntry {
  int job = 0;
  int op = 0;
  int machine = 0;
  int start = 0;

  friend auto operator<=>(const ScheduleEntry&, const ScheduleEntry&) = default;
};

/// A decoded plan. Operations may have zero entries (left unscheduled by an
/// invalid sample) or several (start-once violated); `complete` is true only
/// when every operation has exactly one.
struct Schedule {
  std::vector<ScheduleEntry> entries;
  bool complete = false;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct PrecedenceViolation {
  ScheduleEntry earlier;  // the lower-ranked operation
  ScheduleEntry later;
};

struct MultiplicityViolation {
  int job = 0;
  int op = 0;
  int count = 0;  // number of entries; != 1
};

struct OverlapViolation {
  ScheduleEntry a;
  ScheduleEntry b;
};

/// Violations per constraint class. Pair-counting matches the penalty terms
/// one to one, so counts can be cross-checked against energies.
struct ViolationReport {
  std::vector<PrecedenceViolation> precedence;
  std::vector<MultiplicityViolation> multiplicity;
  std::vector<OverlapViolation> overlap;

  bool ok() const {
    return precedence.empty() && multiplicity.empty() && overlap.empty();
  }
  int total() const {
    return static_cast<int>(precedence.size() + multiplicity.size() +
                            overlap.size());
  }

  std::string to_string() const {
    std::ostringstream out;
    for (const auto& v : precedence) {
      out << "precedence: job " << v.earlier.job << " op " << v.earlier.op
          << " (machine " << v.earlier.machine << ", start " << v.earlier.start
          << ") not finished before op " << v.later.op << " (machine "
          << v.later.machine << ", start " << v.later.start << ")\n";
    }
    for (const auto& v : multiplicity) {
      out << "multiplicity: job " << v.job << " op " << v.op << " has "
          << v.count << " starts (expected 1)\n";
    }
    for (const auto& v : overlap) {
      out << "overlap: machine " << v.a.machine << ": job " << v.a.job << " op "
          << v.a.op << " (start " << v.a.start << ") and job " << v.b.job
          << " op " << v.b.op << " (start " << v.b.start << ")\n";
    }
    return out.str();
  }
};

class IncompleteScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a plan off an assignment: one entry per set bit. Missing and
/// duplicated starts are preserved for the validator to flag.
inline Schedule decode(const VariableRegistry& registry,
                       std::span<const std::uint8_t> assignment) {
  if (static_cast<int>(assignment.size()) != registry.size()) {
    throw std::invalid_argument("assignment length does not match registry");
  }
  Schedule schedule;
  std::vector<int> per_op(registry.op_count(), 0);
  for (int v = 0; v < registry.size(); ++v) {
    if (!assignment[v]) continue;
    const VariableKey& key = registry.key(v);
    schedule.entries.push_back({key.job, key.op, key.machine, key.start});
    ++per_op[registry.flat_op(key.job, key.op)];
  }
  std::sort(schedule.entries.begin(), schedule.entries.end());
  schedule.complete =
      std::all_of(per_op.begin(), per_op.end(), [](int c) { return c == 1; });
  return schedule;
}

/// Sets exactly the bits of the schedule's entries. Every entry must survive
/// in the registry's pruned windows.
inline std::vector<std::uint8_t> encode(const VariableRegistry& registry,
                                        const Schedule& schedule) {
  std::vector<std::uint8_t> assignment(registry.size(), 0);
  for (const ScheduleEntry& e : schedule.entries) {
    const auto index = registry.index_of({e.job, e.op, e.machine, e.start});
    if (!index) {
      throw std::invalid_argument(
          "schedule entry outside pruned windows: job " + std::to_string(e.job) +
          " op " + std::to_string(e.op) + " machine " +
          std::to_string(e.machine) + " start " + std::to_string(e.start));
    }
    assignment[*index] = 1;
  }
  return assignment;
}

/// Checks the three constraints. Precedence: a start of the next operation
/// must leave room for processing plus shipping (pairwise over entries of
/// consecutive operations). Start-once: exactly one entry per operation.
/// No-overlap: same-machine entries of different jobs must not coincide or
/// fall inside a running processing window.
inline ViolationReport validate_schedule(const Instance& in,
                                         const Schedule& schedule) {
  ViolationReport report;

  std::vector<std::vector<std::vector<ScheduleEntry>>> per_op(in.job_count());
  for (int j = 0; j < in.job_count(); ++j) {
    per_op[j].resize(in.jobs[j].operations.size());
  }
  for (const ScheduleEntry& e : schedule.entries) {
    per_op.at(e.job).at(e.op).push_back(e);
  }

  for (int j = 0; j < in.job_count(); ++j) {
    const int ops = static_cast<int>(in.jobs[j].operations.size());
    for (int o = 0; o < ops; ++o) {
      const int count = static_cast<int>(per_op[j][o].size());
      if (count != 1) report.multiplicity.push_back({j, o, count});
      if (o + 1 < ops) {
        for (const ScheduleEntry& a : per_op[j][o]) {
          const int p = in.ptime(a.job, a.op, a.machine);
          for (const ScheduleEntry& b : per_op[j][o + 1]) {
            if (b.start - a.start < p + in.distance(a.machine, b.machine)) {
              report.precedence.push_back({a, b});
            }
          }
        }
      }
    }
  }

  std::vector<std::vector<ScheduleEntry>> by_machine(in.machine_count());
  for (const ScheduleEntry& e : schedule.entries) {
    by_machine.at(e.machine).push_back(e);
  }
  for (const std::vector<ScheduleEntry>& entries : by_machine) {
    for (std::size_t a = 0; a < entries.size(); ++a) {
      const ScheduleEntry& u = entries[a];
      const int pu = in.ptime(u.job, u.op, u.machine);
      for (std::size_t b = a + 1; b < entries.size(); ++b) {
        const ScheduleEntry& w = entries[b];
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
        if (collides) report.overlap.push_back({u, w});
      }
    }
  }
  return report;
}

/// Completion time of the last operation. Requires a complete schedule.
inline int makespan(const Instance& in, const Schedule& schedule) {
  if (!schedule.complete) {
    throw IncompleteScheduleError("makespan requires a complete schedule");
  }
  int span = 0;
  for (const ScheduleEntry& e : schedule.entries) {
    span = std::max(span, e.start + in.ptime(e.job, e.op, e.machine));
  }
  return span;
}

/// Fixed-width text chart: one row per machine that has content, cells labeled
/// `job.op` while processing and `~` while a shipped lot is in transit toward
/// the row's machine.
inline std::string render_gantt(const Instance& in, const Schedule& schedule) {
  int span = 0;
  for (const ScheduleEntry& e : schedule.entries) {
    span = std::max(span, e.start + in.ptime(e.job, e.op, e.machine));
  }

  std::ostringstream out;
  out << "gantt span=" << span << "\n";
  if (schedule.entries.empty()) return out.str();

  int cell = 2;
  for (const ScheduleEntry& e : schedule.entries) {
    const std::string label =
        std::to_string(e.job) + "." + std::to_string(e.op);
    cell = std::max(cell, static_cast<int>(label.size()));
  }
  cell += 1;

  auto pad = [cell](std::string text) {
    text.resize(static_cast<std::size_t>(cell), ' ');
    return text;
  };

  std::vector<std::vector<std::string>> rows(
      in.machine_count(), std::vector<std::string>(span, pad(".")));
  std::vector<bool> used(in.machine_count(), false);

  // Transit marks first so that processing labels win the cell.
  for (const ScheduleEntry& e : schedule.entries) {
    for (const ScheduleEntry& next : schedule.entries) {
      if (next.job != e.job || next.op != e.op + 1) continue;
      const int depart = e.start + in.ptime(e.job, e.op, e.machine);
      const int d = in.distance(e.machine, next.machine);
      for (int t = depart; t < depart + d && t < span; ++t) {
        if (t >= 0) {
          rows[next.machine][t] = pad("~");
          used[next.machine] = true;
        }
      }
    }
  }
  for (const ScheduleEntry& e : schedule.entries) {
    const std::string label =
        std::to_string(e.job) + "." + std::to_string(e.op);
    const int p = in.ptime(e.job, e.op, e.machine);
    for (int t = e.start; t < e.start + p && t < span; ++t) {
      if (t >= 0) rows[e.machine][t] = pad(label);
    }
    used[e.machine] = true;
  }

  out << pad("t");
  for (int t = 0; t < span; ++t) out << pad(std::to_string(t));
  out << "\n";
  for (int m = 0; m < in.machine_count(); ++m) {
    if (!used[m]) continue;
    out << pad("m" + std::to_string(m));
    for (int t = 0; t < span; ++t) out << rows[m][t];
    out << "\n";
  }
  return out.str();
}

/// Schedule export: one `job op machine start end factory` row per entry,
/// sorted; `#` starts a comment.
inline std::string export_schedule_text(const Instance& in,
                                        const Schedule& schedule) {
  std::vector<ScheduleEntry> entries = schedule.entries;
  std::sort(entries.begin(), entries.end());
  std::ostringstream out;
  out << "# job op machine start end factory\n";
  for (const ScheduleEntry& e : entries) {
    const int p = in.ptime(e.job, e.op, e.machine);
    out << e.job << ' ' << e.op << ' ' << e.machine << ' ' << e.start << ' '
        << (e.start + p) << ' ' << in.factory_of(e.machine) << '\n';
  }
  return out.str();
}

inline Schedule parse_schedule_text(const Instance& in,
                                    const std::string& text) {
  Schedule schedule;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  std::vector<std::vector<int>> per_op(in.job_count());
  for (int j = 0; j < in.job_count(); ++j) {
    per_op[j].assign(in.jobs[j].operations.size(), 0);
  }
  while (std::getline(lines, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    ScheduleEntry e;
    int end, factory;
    if (!(row >> e.job >> e.op >> e.machine >> e.start >> end >> factory)) {
      throw ParseError("schedule line " + std::to_string(line_no) +
                       ": expected \"job op machine start end factory\"");
    }
    if (e.job < 0 || e.job >= in.job_count() || e.op < 0 ||
        e.op >= static_cast<int>(in.jobs[e.job].operations.size())) {
      throw SchemaError("schedule line " + std::to_string(line_no) +
                        ": unknown operation");
    }
    const int p = in.ptime(e.job, e.op, e.machine);
    if (p < 0) {
      throw SchemaError("schedule line " + std::to_string(line_no) +
                        ": machine " + std::to_string(e.machine) +
                        " is not eligible for the operation");
    }
    if (e.start < 0) {
      throw SchemaError("schedule line " + std::to_string(line_no) +
                        ": field \"start\" must be >= 0");
    }
    if (end != e.start + p) {
      throw SchemaError("schedule line " + std::to_string(line_no) +
                        ": field \"end\" must equal start + ptime");
    }
    if (factory != in.factory_of(e.machine)) {
      throw SchemaError("schedule line " + std::to_string(line_no) +
                        ": field \"factory\" does not match the machine");
    }
    per_op[e.job][e.op] += 1;
    schedule.entries.push_back(e);
  }
  std::sort(schedule.entries.begin(), schedule.entries.end());
  schedule.complete = true;
  for (const auto& job_counts : per_op) {
    for (int count : job_counts) {
      if (count != 1) schedule.complete = false;
    }
  }
  return schedule;
}

}  // namespace dfjsp

#endif  // DFJSP_SCHEDULE_HPP
