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

#ifndef DFJSP_GENERATOR_HPP
#define DFJSP_GENERATOR_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "dfjsp/compiler.hpp"
#include "dfjsp/instance.hpp"

namespace dfjsp {

/// Random-instance recipe. The variable count of the compiled model is the
/// size that matters, so generation retries seeded draws, growing operations
/// and shrinking processing times, until the registry lands within +-10% of
/// `target_variables`.
struct GeneratorSpec {
  int target_variables = 50;
  int jobs = 2;
  int min_ops_per_job = 2;
  int max_machines_per_op = 2;
  int factories = 2;
  int ptime_min = 1;
  int ptime_max = 3;
  int ship_min = 0;
  int ship_max = 2;
  std::uint64_t seed = 1;
  int max_attempts = 600;
};

class UnreachableTargetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Deterministic bounded draw; modulo bias is irrelevant for these tiny
/// ranges and keeps the stream platform-independent.
inline int draw(std::mt19937_64& rng, int lo, int hi) {
  if (hi <= lo) return lo;
  return lo + static_cast<int>(rng() %
                               static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace detail

/// Deterministic for a given spec. Two machines per factory; operations draw
/// one or two eligible machines, two-machine draws spanning two factories so
/// that shipping matters.
inline Instance generate(const GeneratorSpec& spec) {
  if (spec.target_variables < 1) {
    throw std::invalid_argument("target_variables must be >= 1");
  }
  if (spec.jobs < 1 || spec.min_ops_per_job < 1 ||
      spec.max_machines_per_op < 1 || spec.factories < 1) {
    throw std::invalid_argument("generator counts must be >= 1");
  }
  if (spec.ptime_min < 1 || spec.ptime_max < spec.ptime_min ||
      spec.ship_min < 0 || spec.ship_max < spec.ship_min) {
    throw std::invalid_argument("generator ranges are empty or negative");
  }

  std::mt19937_64 rng(spec.seed);
  const int machine_count = 2 * spec.factories;

  const int lo = spec.target_variables - spec.target_variables / 10;
  const int hi = spec.target_variables + spec.target_variables / 10;

  int extra_ops = 0;
  int shrink = 0;  // lowers the effective ptime ceiling when overshooting
  int best_gap = -1;

  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    Instance in;
    in.factories = spec.factories;
    for (int m = 0; m < machine_count; ++m) {
      in.machines.push_back({m, m / 2});
    }
    in.shipping.assign(spec.factories, std::vector<int>(spec.factories, 0));
    for (int f = 0; f < spec.factories; ++f) {
      for (int g = f + 1; g < spec.factories; ++g) {
        const int d = detail::draw(rng, spec.ship_min, spec.ship_max);
        in.shipping[f][g] = d;
        in.shipping[g][f] = d;
      }
    }

    const int ptime_hi = std::max(spec.ptime_min, spec.ptime_max - shrink);
    std::vector<int> ops_per_job(spec.jobs, spec.min_ops_per_job);
    for (int e = 0; e < extra_ops; ++e) ops_per_job[e % spec.jobs] += 1;

    for (int j = 0; j < spec.jobs; ++j) {
      Job job;
      job.id = j;
      for (int o = 0; o < ops_per_job[j]; ++o) {
        Operation op;
        const int want =
            spec.factories >= 2
                ? detail::draw(rng, 1, std::min(2, spec.max_machines_per_op))
                : 1;
        const int first = detail::draw(rng, 0, machine_count - 1);
        op.options.push_back(
            {first, detail::draw(rng, spec.ptime_min, ptime_hi)});
        if (want == 2) {
          // Second option from a different factory.
          const int other_factory =
              (in.factory_of(first) +
               detail::draw(rng, 1, spec.factories - 1)) %
              spec.factories;
          const int second = 2 * other_factory + detail::draw(rng, 0, 1);
          op.options.push_back(
              {second, detail::draw(rng, spec.ptime_min, ptime_hi)});
        }
        std::sort(op.options.begin(), op.options.end(),
                  [](const MachineOption& a, const MachineOption& b) {
                    return a.machine < b.machine;
                  });
        job.operations.push_back(std::move(op));
      }
      in.jobs.push_back(std::move(job));
    }

    const int size = build_registry(in).size();
    if (size >= lo && size <= hi) return in;

    const int gap = size < lo ? lo - size : size - hi;
    if (best_gap < 0 || gap < best_gap) best_gap = gap;

    if (size < lo) {
      extra_ops += 1;
      if (shrink > 0) shrink -= 1;
    } else if (shrink < spec.ptime_max - spec.ptime_min) {
      shrink += 1;
    } else if (extra_ops > 0) {
      extra_ops -= 1;
      shrink = 0;
    }
    // Otherwise retry: fresh draws may land inside the band.
  }
  throw UnreachableTargetError(
      "generator could not reach " + std::to_string(spec.target_variables) +
      " +-10% variables within " + std::to_string(spec.max_attempts) +
      " attempts (closest gap " + std::to_string(best_gap) + ")");
}

}  // namespace dfjsp

#endif  // DFJSP_GENERATOR_HPP
