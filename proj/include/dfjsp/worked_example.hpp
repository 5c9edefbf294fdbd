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

#ifndef DFJSP_WORKED_EXAMPLE_HPP
#define DFJSP_WORKED_EXAMPLE_HPP

#include "dfjsp/instance.hpp"

namespace dfjsp {

/// The recorded calibration fixture behind the `fixture-4-4` CLI command.
///
/// One job with two operations across two factories:
///   op 0: machine 0 (ptime 1)
///   op 1: machine 2 (ptime 2) or machine 3 (ptime 5)
/// Machines 0 and 2 share factory 0; machines 1 and 3 sit in factory 1 at
/// shipping distance 4.
///
/// Reference numbers, pinned by the acceptance suite:
///   horizon = 1 + 5 + 4 = 10
///   min predecessor time of op 1 = 1
///   scheduling op 0 at (m0, t0) and op 1 at (m2, t1) costs 3 for any weights;
///   leaving op 1 unscheduled costs 2 with beta = 1 and 11 with beta = 10.
inline Instance worked_example() {
  Instance in;
  in.factories = 2;
  in.machines = {{0, 0}, {1, 1}, {2, 0}, {3, 1}};
  in.shipping = {{0, 4}, {4, 0}};
  Job job;
  job.id = 0;
  job.operations.push_back({{{0, 1}}});
  job.operations.push_back({{{2, 2}, {3, 5}}});
  in.jobs.push_back(job);
  return in;
}

}  // namespace dfjsp

#endif  // DFJSP_WORKED_EXAMPLE_HPP
