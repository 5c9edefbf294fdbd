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

#ifndef DFJSP_QUBO_HPP
#define DFJSP_QUBO_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dfjsp {

/// H(x) = offset + sum_i linear[i] x_i + sum_{i<j} quadratic[{i,j}] x_i x_j
/// over x_i in {0,1}.
///
/// Coefficients built from instances are integer-valued; conversions to spin
/// form introduce halves and quarters, which stay exact in binary floating
/// point. Zero coefficients are never stored.
struct Qubo {
  int n = 0;
  double offset = 0.0;
  std::map<int, double> linear;
  std::map<std::pair<int, int>, double> quadratic;

  void add_linear(int i, double value) {
    if (value == 0.0) return;
    double& slot = linear[i];
    slot += value;
    if (slot == 0.0) linear.erase(i);
  }

  void add_quadratic(int i, int j, double value) {
    if (i == j) throw std::invalid_argument("quadratic term requires i != j");
    if (value == 0.0) return;
    if (i > j) std::swap(i, j);
    double& slot = quadratic[{i, j}];
    slot += value;
    if (slot == 0.0) quadratic.erase({i, j});
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [i, a] : linear) m = std::max(m, std::fabs(a));
    for (const auto& [ij, b] : quadratic) m = std::max(m, std::fabs(b));
    return m;
  }

  friend bool operator==(const Qubo&, const Qubo&) = default;
};

/// Spin form over s_i in {-1,+1}: offset + sum h_i s_i + sum J_ij s_i s_j.
struct IsingModel {
  int n = 0;
  double offset = 0.0;
  std::map<int, double> h;
  std::map<std::pair<int, int>, double> j;

  friend bool operator==(const IsingModel&, const IsingModel&) = default;
};

/// Evaluates H(x). Exact for integer and dyadic-rational coefficients.
inline double energy(const Qubo& q, std::span<const std::uint8_t> x) {
  if (static_cast<int>(x.size()) != q.n) {
    throw std::invalid_argument("assignment length " +
                                std::to_string(x.size()) +
                                " does not match variable count " +
                                std::to_string(q.n));
  }
  double e = q.offset;
  for (const auto& [i, a] : q.linear) {
    if (x[i]) e += a;
  }
  for (const auto& [ij, b] : q.quadratic) {
    if (x[ij.first] && x[ij.second]) e += b;
  }
  return e;
}

inline double energy(const Qubo& q, const std::vector<std::uint8_t>& x) {
  return energy(q, std::span<const std::uint8_t>(x));
}

/// Spin-side energy, used to check conversion equivalence.
inline double ising_energy(const IsingModel& m, std::span<const int8_t> s) {
  if (static_cast<int>(s.size()) != m.n) {
    throw std::invalid_argument("spin vector length does not match n");
  }
  double e = m.offset;
  for (const auto& [i, hi] : m.h) e += hi * s[i];
  for (const auto& [ij, jij] : m.j) e += jij * s[ij.first] * s[ij.second];
  return e;
}

/// Substitutes x = (s + 1) / 2. Energies match exactly, including offset.
inline IsingModel to_ising(const Qubo& q) {
  IsingModel m;
  m.n = q.n;
  m.offset = q.offset;
  std::map<int, double> h;
  for (const auto& [i, a] : q.linear) {
    h[i] += a / 2.0;
    m.offset += a / 2.0;
  }
  for (const auto& [ij, b] : q.quadratic) {
    const double quarter = b / 4.0;
    h[ij.first] += quarter;
    h[ij.second] += quarter;
    m.offset += quarter;
    m.j[ij] = quarter;
  }
  for (const auto& [i, hi] : h) {
    if (hi != 0.0) m.h[i] = hi;
  }
  return m;
}

/// Substitutes s = 2x - 1; inverse of to_ising.
inline Qubo to_qubo(const IsingModel& m) {
  Qubo q;
  q.n = m.n;
  q.offset = m.offset;
  for (const auto& [i, hi] : m.h) {
    q.add_linear(i, 2.0 * hi);
    q.offset -= hi;
  }
  for (const auto& [ij, jij] : m.j) {
    q.add_quadratic(ij.first, ij.second, 4.0 * jij);
    q.add_linear(ij.first, -2.0 * jij);
    q.add_linear(ij.second, -2.0 * jij);
    q.offset += jij;
  }
  return q;
}

namespace detail {

/// Canonical number rendering: integers print without a decimal point, other
/// values with round-trip precision.
inline std::string format_coefficient(double value) {
  if (value == 0.0) return "0";
  if (std::fabs(value) < 9.007199254740992e15 && value == std::floor(value)) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%lld",
                  static_cast<long long>(value));
    return buffer;
  }
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace detail

/// Text export: `n offset`, then `lin i a_i`, then `quad i j b_ij`, sorted by
/// index. This is the payload the remote backend receives and the format the
/// golden tests pin down.
inline std::string export_qubo_text(const Qubo& q) {
  std::ostringstream out;
  out << q.n << ' ' << detail::format_coefficient(q.offset) << '\n';
  for (const auto& [i, a] : q.linear) {
    out << "lin " << i << ' ' << detail::format_coefficient(a) << '\n';
  }
  for (const auto& [ij, b] : q.quadratic) {
    out << "quad " << ij.first << ' ' << ij.second << ' '
        << detail::format_coefficient(b) << '\n';
  }
  return out.str();
}

inline Qubo parse_qubo_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("qubo text: empty document");
  }
  Qubo q;
  {
    std::istringstream header(line);
    if (!(header >> q.n >> q.offset) || q.n < 0) {
      throw std::invalid_argument("qubo text: malformed header: " + line);
    }
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string kind;
    row >> kind;
    if (kind == "lin") {
      int i;
      double a;
      if (!(row >> i >> a) || i < 0 || i >= q.n) {
        throw std::invalid_argument("qubo text line " +
                                    std::to_string(line_no) +
                                    ": malformed linear term");
      }
      q.add_linear(i, a);
    } else if (kind == "quad") {
      int i, j;
      double b;
      if (!(row >> i >> j >> b) || i < 0 || j < 0 || i >= q.n || j >= q.n ||
          i == j) {
        throw std::invalid_argument("qubo text line " +
                                    std::to_string(line_no) +
                                    ": malformed quadratic term");
      }
      q.add_quadratic(i, j, b);
    } else {
      throw std::invalid_argument("qubo text line " + std::to_string(line_no) +
                                  ": unknown record \"" + kind + "\"");
    }
  }
  return q;
}

}  // namespace dfjsp

#endif  // DFJSP_QUBO_HPP
