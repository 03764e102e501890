/*
 * Copyright 2026 The dubreil authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "fields.hpp"

namespace dubreil {

// Exponent vector of a monomial; the number of variables is its size.
using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

// Descending lexicographic order on exponent vectors.  Within a fixed total
// degree this sorts pure powers of the first variable first, e.g. for two
// variables and degree 3: X^3, X^2 Y, X Y^2, Y^3.
struct LexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const { return a > b; }
};

// All monomials of the given total degree in nvars variables, in the order
// of LexGreater.  The size is C(deg + nvars - 1, nvars - 1).
inline std::vector<Exponents> monomial_basis(int nvars, int deg) {
  if (nvars < 1) throw input_error("monomial_basis: need at least one variable");
  if (deg < 0) throw input_error("monomial_basis: negative degree");
  std::vector<Exponents> out;
  Exponents cur(nvars, 0);
  // Depth-first over the first nvars-1 exponents, largest first; the last
  // exponent absorbs the remainder.  This emits descending lex order.
  auto rec = [&](auto&& self, int var, int rem) -> void {
    if (var == nvars - 1) {
      cur[var] = rem;
      out.push_back(cur);
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur[var] = e;
      self(self, var + 1, rem - e);
    }
  };
  rec(rec, 0, deg);
  return out;
}

inline std::size_t monomial_count(int nvars, int deg) {
  // C(deg + nvars - 1, nvars - 1), exact in 64 bits for the sizes used here.
  std::uint64_t num = 1, den = 1;
  for (int i = 1; i <= nvars - 1; ++i) {
    num *= static_cast<std::uint64_t>(deg + i);
    den *= static_cast<std::uint64_t>(i);
  }
  return static_cast<std::size_t>(num / den);
}

// Display names: X, Y, Z for up to three variables, X1, X2, ... beyond.
inline std::string variable_name(int nvars, int i) {
  static const char* small[] = {"X", "Y", "Z"};
  if (nvars <= 3) return small[i];
  return "X" + std::to_string(i + 1);
}

inline std::string monomial_to_string(const Exponents& e) {
  std::string s;
  int n = static_cast<int>(e.size());
  for (int i = 0; i < n; ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += variable_name(n, i);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace dubreil
