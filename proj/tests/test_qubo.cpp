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

#include "dfjsp/qubo.hpp"

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "dfjsp/compiler.hpp"
#include "dfjsp/worked_example.hpp"

using namespace dfjsp;

namespace {

/// Random integer-coefficient qubo; values stay dyadic through spin
/// conversion, so equality checks below are exact.
Qubo random_qubo(std::mt19937_64& rng, int n) {
  Qubo q;
  q.n = n;
  auto coeff = [&rng]() {
    return static_cast<double>(static_cast<long long>(rng() % 21) - 10);
  };
  q.offset = coeff();
  for (int i = 0; i < n; ++i) q.add_linear(i, coeff());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng() % 2) q.add_quadratic(i, j, coeff());
    }
  }
  return q;
}

std::vector<std::uint8_t> bits_of(std::uint64_t mask, int n) {
  std::vector<std::uint8_t> x(n);
  for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
  return x;
}

}  // namespace

TEST_CASE("energy evaluates offset, linear and quadratic terms") {
  Qubo q;
  q.n = 3;
  q.offset = 2;
  q.add_linear(0, 5);
  q.add_linear(2, -3);
  q.add_quadratic(0, 2, 4);
  CHECK(energy(q, bits_of(0b000, 3)) == 2);
  CHECK(energy(q, bits_of(0b001, 3)) == 7);
  CHECK(energy(q, bits_of(0b101, 3)) == 8);
  CHECK(energy(q, bits_of(0b100, 3)) == -1);
}

TEST_CASE("energy rejects length mismatches") {
  Qubo q;
  q.n = 2;
  CHECK_THROWS_AS(energy(q, bits_of(0, 3)), std::invalid_argument);
}

TEST_CASE("zero coefficients are never stored") {
  Qubo q;
  q.n = 2;
  q.add_linear(0, 3);
  q.add_linear(0, -3);
  q.add_quadratic(0, 1, 2);
  q.add_quadratic(1, 0, -2);
  CHECK(q.linear.empty());
  CHECK(q.quadratic.empty());
  CHECK_THROWS_AS(q.add_quadratic(1, 1, 1.0), std::invalid_argument);
}

TEST_CASE("single linear term converts to a half-weight field") {
  Qubo q;
  q.n = 1;
  q.add_linear(0, 1);
  const IsingModel m = to_ising(q);
  CHECK(m.h.at(0) == 0.5);
  CHECK(m.offset == 0.5);
  CHECK(m.j.empty());
}

TEST_CASE("single quadratic term converts to quarter-weight coupling") {
  Qubo q;
  q.n = 2;
  q.add_quadratic(0, 1, 4);
  const IsingModel m = to_ising(q);
  CHECK(m.j.at({0, 1}) == 1.0);
  CHECK(m.h.at(0) == 1.0);
  CHECK(m.h.at(1) == 1.0);
  CHECK(m.offset == 1.0);
}

TEST_CASE("spin substitution preserves energies exactly") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const Qubo q = random_qubo(rng, n);
    const IsingModel m = to_ising(q);
    const Qubo back = to_qubo(m);
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
      const std::vector<std::uint8_t> x = bits_of(mask, n);
      std::vector<int8_t> s(n);
      for (int i = 0; i < n; ++i) s[i] = x[i] ? 1 : -1;
      const double reference = energy(q, x);
      CHECK(ising_energy(m, s) == reference);
      CHECK(energy(back, x) == reference);
    }
  }
}

TEST_CASE("worked-example qubo survives the spin round-trip") {
  const Instance in = worked_example();
  const VariableRegistry registry = build_registry(in);
  const Qubo q = build_qubo(in, registry, calibrate_weights(in, registry));
  const Qubo back = to_qubo(to_ising(q));
  REQUIRE(back == q);

  // The four combinations over the two starts named by the fixture.
  const int first = *registry.index_of({0, 0, 0, 0});
  const int second = *registry.index_of({0, 1, 2, 1});
  for (int mask = 0; mask < 4; ++mask) {
    std::vector<std::uint8_t> x(registry.size(), 0);
    x[first] = mask & 1;
    x[second] = (mask >> 1) & 1;
    CHECK(energy(back, x) == energy(q, x));
  }
}

TEST_CASE("round-trip reproduces coefficient maps exactly") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Qubo q = random_qubo(rng, 1 + static_cast<int>(rng() % 12));
    CHECK(to_qubo(to_ising(q)) == q);
  }
}

TEST_CASE("export emits the sorted text format") {
  Qubo q;
  q.n = 3;
  q.offset = 2;
  q.add_linear(1, -4);
  q.add_linear(0, 7);
  q.add_quadratic(2, 0, 5);
  q.add_quadratic(1, 2, 0.5);
  CHECK(export_qubo_text(q) ==
        "3 2\n"
        "lin 0 7\n"
        "lin 1 -4\n"
        "quad 0 2 5\n"
        "quad 1 2 0.5\n");
}

TEST_CASE("parse inverts export") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Qubo q = random_qubo(rng, 1 + static_cast<int>(rng() % 12));
    CHECK(parse_qubo_text(export_qubo_text(q)) == q);
  }
}

TEST_CASE("parse rejects malformed documents") {
  CHECK_THROWS_AS(parse_qubo_text(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_qubo_text("2 0\nlin 5 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_qubo_text("2 0\nquad 0 0 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_qubo_text("2 0\nboom\n"), std::invalid_argument);
}
