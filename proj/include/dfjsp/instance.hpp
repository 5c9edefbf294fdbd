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

#ifndef DFJSP_INSTANCE_HPP
#define DFJSP_INSTANCE_HPP

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace dfjsp {

/// A machine is owned by exactly one factory. Shipping time between two
/// machines is the shipping time between their factories (zero within a
/// factory).
struct Machine {
  int id = 0;
  int factory = 0;

  friend bool operator==(const Machine&, const Machine&) = default;
};

/// One way of processing an operation: a machine and the integer processing
/// time on it.
struct MachineOption {
  int machine = 0;
  int ptime = 1;

  friend bool operator==(const MachineOption&, const MachineOption&) = default;
};

/// A production step. Its position inside Job::operations is its rank in the
/// job's fixed processing order.
struct Operation {
  std::vector<MachineOption> options;

  friend bool operator==(const Operation&, const Operation&) = default;
};

struct Job {
  int id = 0;
  std::vector<Operation> operations;

  friend bool operator==(const Job&, const Job&) = default;
};

/// A distributed flexible job shop instance. Values are immutable by
/// convention after construction and safe to share across threads.
struct Instance {
  int factories = 0;
  std::vector<Machine> machines;
  std::vector<std::vector<int>> shipping;  // factories x factories, symmetric
  std::vector<Job> jobs;

  friend bool operator==(const Instance&, const Instance&) = default;

  int machine_count() const { return static_cast<int>(machines.size()); }

  int job_count() const { return static_cast<int>(jobs.size()); }

  int operation_count() const {
    int n = 0;
    for (const Job& job : jobs) n += static_cast<int>(job.operations.size());
    return n;
  }

  int factory_of(int machine) const { return machines.at(machine).factory; }

  /// Shipping time between two machines, derived from their factories.
  int distance(int machine_a, int machine_b) const {
    return shipping.at(factory_of(machine_a)).at(factory_of(machine_b));
  }

  /// Processing time of `op` of `job` on `machine`; -1 if not eligible.
  int ptime(int job, int op, int machine) const {
    for (const MachineOption& mo : jobs.at(job).operations.at(op).options) {
      if (mo.machine == machine) return mo.ptime;
    }
    return -1;
  }
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }

  std::string to_string() const {
    std::string out;
    for (const std::string& v : violations) {
      out += v;
      out += '\n';
    }
    return out;
  }
};

/// Checks every structural invariant of an instance. Returns a report rather
/// than throwing; a passing instance satisfies the preconditions of every
/// other module.
inline ValidationReport validate(const Instance& in) {
  ValidationReport report;
  auto flag = [&report](const std::string& message) {
    report.violations.push_back(message);
  };

  if (in.factories < 1) flag("instance: factory count must be >= 1");
  if (in.jobs.empty()) flag("instance: at least one job required");

  for (int m = 0; m < in.machine_count(); ++m) {
    const Machine& machine = in.machines[m];
    if (machine.id != m) {
      flag("machine " + std::to_string(machine.id) +
           ": ids must be contiguous 0..B-1 (found at position " +
           std::to_string(m) + ")");
    }
    if (machine.factory < 0 || machine.factory >= in.factories) {
      flag("machine " + std::to_string(machine.id) + ": unknown factory " +
           std::to_string(machine.factory));
    }
  }

  const int c = in.factories;
  if (static_cast<int>(in.shipping.size()) != c) {
    flag("shipping: expected " + std::to_string(c) + " rows, found " +
         std::to_string(in.shipping.size()));
  } else {
    for (int f = 0; f < c; ++f) {
      if (static_cast<int>(in.shipping[f].size()) != c) {
        flag("shipping: row " + std::to_string(f) + " has " +
             std::to_string(in.shipping[f].size()) + " entries, expected " +
             std::to_string(c));
        continue;
      }
      for (int g = 0; g < c; ++g) {
        if (in.shipping[f][g] < 0) {
          flag("shipping[" + std::to_string(f) + "][" + std::to_string(g) +
               "]: shipping time must be >= 0");
        }
        if (f == g && in.shipping[f][g] != 0) {
          flag("shipping[" + std::to_string(f) + "][" + std::to_string(g) +
               "]: diagonal must be zero");
        }
        if (g > f && in.shipping[f][g] != in.shipping[g][f]) {
          flag("shipping[" + std::to_string(f) + "][" + std::to_string(g) +
               "]: matrix must be symmetric");
        }
      }
    }
  }

  for (int j = 0; j < in.job_count(); ++j) {
    const Job& job = in.jobs[j];
    if (job.id != j) {
      flag("job " + std::to_string(job.id) +
           ": ids must be contiguous 0..A-1 (found at position " +
           std::to_string(j) + ")");
    }
    if (job.operations.empty()) {
      flag("job " + std::to_string(job.id) + ": operations list is empty");
    }
    for (int o = 0; o < static_cast<int>(job.operations.size()); ++o) {
      const Operation& op = job.operations[o];
      const std::string where =
          "job " + std::to_string(job.id) + " op " + std::to_string(o);
      if (op.options.empty()) {
        flag(where + ": eligible machine list is empty");
      }
      std::vector<int> seen;
      for (const MachineOption& mo : op.options) {
        if (mo.machine < 0 || mo.machine >= in.machine_count()) {
          flag(where + ": unknown machine " + std::to_string(mo.machine));
        }
        if (mo.ptime < 1) {
          flag(where + " machine " + std::to_string(mo.machine) +
               ": processing time must be >= 1");
        }
        if (std::find(seen.begin(), seen.end(), mo.machine) != seen.end()) {
          flag(where + ": duplicate machine option " +
               std::to_string(mo.machine));
        }
        seen.push_back(mo.machine);
      }
    }
  }
  return report;
}

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using json = nlohmann::ordered_json;

inline void reject_unknown_keys(const json& object, const std::string& where,
                                std::initializer_list<const char*> allowed) {
  for (const auto& item : object.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw SchemaError("unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

inline const json& require(const json& object, const char* key,
                           const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw SchemaError("missing required field \"" + std::string(key) +
                      "\" in " + where);
  }
  return *it;
}

inline int require_int(const json& value, const std::string& field) {
  if (!value.is_number_integer()) {
    throw SchemaError("field \"" + field + "\" must be an integer");
  }
  return value.get<int>();
}

}  // namespace detail

/// Parses the canonical instance document. Unknown keys are rejected so that
/// typos do not silently change the problem.
inline Instance load_instance(const std::string& text) {
  detail::json doc;
  try {
    doc = detail::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(std::string("instance document: ") + err.what());
  }
  if (!doc.is_object()) {
    throw SchemaError("instance document: top level must be an object");
  }
  detail::reject_unknown_keys(doc, "instance document",
                              {"factories", "machines", "shipping", "jobs"});

  Instance in;
  in.factories =
      detail::require_int(detail::require(doc, "factories", "instance document"),
                          "factories");

  const detail::json& machines =
      detail::require(doc, "machines", "instance document");
  if (!machines.is_array()) throw SchemaError("field \"machines\" must be a list");
  for (const auto& entry : machines) {
    if (!entry.is_object()) {
      throw SchemaError("field \"machines\" entries must be objects");
    }
    detail::reject_unknown_keys(entry, "machines entry", {"id", "factory"});
    Machine machine;
    machine.id = detail::require_int(
        detail::require(entry, "id", "machines entry"), "machines.id");
    machine.factory =
        detail::require_int(detail::require(entry, "factory", "machines entry"),
                            "machines.factory");
    in.machines.push_back(machine);
  }

  const detail::json& shipping =
      detail::require(doc, "shipping", "instance document");
  if (!shipping.is_array()) {
    throw SchemaError("field \"shipping\" must be a matrix (list of rows)");
  }
  for (const auto& row : shipping) {
    if (!row.is_array()) {
      throw SchemaError("field \"shipping\" rows must be lists");
    }
    std::vector<int> r;
    for (const auto& cell : row) r.push_back(detail::require_int(cell, "shipping"));
    in.shipping.push_back(std::move(r));
  }

  const detail::json& jobs = detail::require(doc, "jobs", "instance document");
  if (!jobs.is_array()) throw SchemaError("field \"jobs\" must be a list");
  for (const auto& jentry : jobs) {
    if (!jentry.is_object()) {
      throw SchemaError("field \"jobs\" entries must be objects");
    }
    detail::reject_unknown_keys(jentry, "jobs entry", {"id", "operations"});
    Job job;
    job.id = detail::require_int(detail::require(jentry, "id", "jobs entry"),
                                 "jobs.id");
    const detail::json& ops = detail::require(jentry, "operations", "jobs entry");
    if (!ops.is_array()) {
      throw SchemaError("field \"operations\" must be a list");
    }
    for (const auto& oentry : ops) {
      if (!oentry.is_object()) {
        throw SchemaError("field \"operations\" entries must be objects");
      }
      detail::reject_unknown_keys(oentry, "operations entry",
                                  {"machine_options"});
      const detail::json& options =
          detail::require(oentry, "machine_options", "operations entry");
      if (!options.is_array()) {
        throw SchemaError("field \"machine_options\" must be a list");
      }
      Operation op;
      for (const auto& mentry : options) {
        if (!mentry.is_object()) {
          throw SchemaError("field \"machine_options\" entries must be objects");
        }
        detail::reject_unknown_keys(mentry, "machine_options entry",
                                    {"machine", "ptime"});
        MachineOption mo;
        mo.machine = detail::require_int(
            detail::require(mentry, "machine", "machine_options entry"),
            "machine_options.machine");
        mo.ptime = detail::require_int(
            detail::require(mentry, "ptime", "machine_options entry"),
            "machine_options.ptime");
        op.options.push_back(mo);
      }
      // Canonical option order, so that load/save round-trips are stable.
      std::sort(op.options.begin(), op.options.end(),
                [](const MachineOption& a, const MachineOption& b) {
                  return a.machine < b.machine;
                });
      job.operations.push_back(std::move(op));
    }
    in.jobs.push_back(std::move(job));
  }
  return in;
}

/// Serializes an instance as the canonical document: fixed key order, sorted
/// machine options, two-space indentation, trailing newline.
inline std::string save_instance(const Instance& in) {
  detail::json doc;
  doc["factories"] = in.factories;
  doc["machines"] = detail::json::array();
  for (const Machine& machine : in.machines) {
    detail::json m;
    m["id"] = machine.id;
    m["factory"] = machine.factory;
    doc["machines"].push_back(std::move(m));
  }
  doc["shipping"] = detail::json::array();
  for (const auto& row : in.shipping) doc["shipping"].push_back(row);
  doc["jobs"] = detail::json::array();
  for (const Job& job : in.jobs) {
    detail::json j;
    j["id"] = job.id;
    j["operations"] = detail::json::array();
    for (const Operation& op : job.operations) {
      std::vector<MachineOption> options = op.options;
      std::sort(options.begin(), options.end(),
                [](const MachineOption& a, const MachineOption& b) {
                  return a.machine < b.machine;
                });
      detail::json o;
      o["machine_options"] = detail::json::array();
      for (const MachineOption& mo : options) {
        detail::json m;
        m["machine"] = mo.machine;
        m["ptime"] = mo.ptime;
        o["machine_options"].push_back(std::move(m));
      }
      j["operations"].push_back(std::move(o));
    }
    doc["jobs"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

inline Instance load_instance_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ParseError("cannot open instance file: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return load_instance(buffer.str());
}

inline void save_instance_file(const Instance& in, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw ParseError("cannot open output file: " + path);
  file << save_instance(in);
}

}  // namespace dfjsp

#endif  // DFJSP_INSTANCE_HPP
