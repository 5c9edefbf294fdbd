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

#include "dfjsp/generator.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "dfjsp/compiler.hpp"

using namespace dfjsp;

TEST_CASE("generated instances hit the size band") {
  for (int target : {50, 100, 150}) {
    GeneratorSpec spec;
    spec.target_variables = target;
    spec.seed = 1;
    const Instance in = generate(spec);
    const int size = build_registry(in).size();
    CHECK(size >= target - target / 10);
    CHECK(size <= target + target / 10);
  }
}

TEST_CASE("generated instances validate and respect the recipe") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorSpec spec;
    spec.target_variables = 60;
    spec.seed = seed;
    const Instance in = generate(spec);
    REQUIRE(validate(in).ok());
    CHECK(in.job_count() == spec.jobs);
    bool spans_factories = false;
    for (const Job& job : in.jobs) {
      CHECK(static_cast<int>(job.operations.size()) >= spec.min_ops_per_job);
      for (const Operation& op : job.operations) {
        CHECK(static_cast<int>(op.options.size()) <= spec.max_machines_per_op);
        for (const MachineOption& mo : op.options) {
          CHECK(mo.ptime >= spec.ptime_min);
          CHECK(mo.ptime <= spec.ptime_max);
        }
        if (op.options.size() == 2) {
          CHECK(in.factory_of(op.options[0].machine) !=
                in.factory_of(op.options[1].machine));
          spans_factories = true;
        }
      }
    }
    CHECK(spans_factories);
  }
}

TEST_CASE("a fully constrained spec yields exactly one variable") {
  GeneratorSpec spec;
  spec.target_variables = 1;
  spec.jobs = 1;
  spec.min_ops_per_job = 1;
  spec.max_machines_per_op = 1;
  spec.factories = 1;
  spec.ptime_min = 1;
  spec.ptime_max = 1;
  spec.ship_min = 0;
  spec.ship_max = 0;
  const Instance in = generate(spec);
  CHECK(build_registry(in).size() == 1);
}

TEST_CASE("generation is deterministic per seed") {
  GeneratorSpec spec;
  spec.target_variables = 80;
  spec.seed = 17;
  CHECK(generate(spec) == generate(spec));
  GeneratorSpec other = spec;
  other.seed = 18;
  CHECK_FALSE(generate(other) == generate(spec));
}

TEST_CASE("generator rejects bad recipes") {
  GeneratorSpec spec;
  spec.target_variables = 0;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
  spec.target_variables = 10;
  spec.ptime_min = 0;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
  spec.ptime_min = 2;
  spec.ptime_max = 1;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
}

TEST_CASE("unreachable targets fail loudly") {
  GeneratorSpec spec;
  spec.target_variables = 100000;
  spec.max_attempts = 5;
  CHECK_THROWS_AS(generate(spec), UnreachableTargetError);
}
