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

#include <utility>
#include <vector>

#include "form.hpp"

namespace dubreil {

// Exact GCD of binary forms through the univariate correspondence
// f(X, Y) = Y^k * u(X/Y) * Y^deg(u), with Euclid on dense coefficient
// vectors.  Results are normalized to leading coefficient 1.

namespace detail {

// Dense univariate polynomial, coefficients ascending by exponent.
template <class K>
using UniPoly = std::vector<K>;

template <class K>
void uni_trim(UniPoly<K>& p) {
  while (!p.empty() && FieldTraits<K>::is_zero(p.back())) p.pop_back();
}

template <class K>
UniPoly<K> uni_rem(UniPoly<K> a, const UniPoly<K>& b) {
  while (a.size() >= b.size()) {
    const K q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    uni_trim(a);
    if (a.empty()) break;
  }
  return a;
}

template <class K>
UniPoly<K> uni_gcd(UniPoly<K> a, UniPoly<K> b) {
  uni_trim(a);
  uni_trim(b);
  while (!b.empty()) {
    a = uni_rem(std::move(a), b);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const K inv = K(1) / a.back();
    for (auto& c : a) c *= inv;
  }
  return a;
}

// f(X, Y) -> (u, k) with u(T) = f(T, 1) and k the multiplicity of Y in f,
// so that f = Y^k * homogenize(u, deg f - k).
template <class K>
std::pair<UniPoly<K>, int> binary_to_uni(const Form<K>& f) {
  UniPoly<K> u(static_cast<std::size_t>(f.degree()) + 1, K(0));
  for (const auto& [e, c] : f.terms()) u[static_cast<std::size_t>(e[0])] = c;
  uni_trim(u);
  const int k = f.degree() - (static_cast<int>(u.size()) - 1);
  return {u, k};
}

template <class K>
Form<K> uni_to_binary(const UniPoly<K>& u, int ypow) {
  const int d = static_cast<int>(u.size()) - 1 + ypow;
  Form<K> f(2, d);
  for (std::size_t i = 0; i < u.size(); ++i)
    f.add_term({static_cast<int>(i), d - static_cast<int>(i)}, u[i]);
  return f;
}

}  // namespace detail

template <class K>
Form<K> gcd_binary(const Form<K>& f, const Form<K>& g) {
  if (f.nvars() != 2 || g.nvars() != 2)
    throw input_error("gcd_binary: expects binary forms");
  if (f.is_zero() && g.is_zero()) throw input_error("gcd_binary: gcd(0, 0)");
  if (f.is_zero()) return g.normalized();
  if (g.is_zero()) return f.normalized();
  auto [uf, kf] = detail::binary_to_uni(f);
  auto [ug, kg] = detail::binary_to_uni(g);
  auto d = detail::uni_gcd(uf, ug);
  if (d.empty()) d = {K(1)};
  return detail::uni_to_binary(d, std::min(kf, kg));
}

template <class K>
Form<K> gcd_binary(const std::vector<Form<K>>& fs) {
  Form<K> acc;
  bool seen = false;
  for (const auto& f : fs) {
    if (f.is_zero()) continue;
    acc = seen ? gcd_binary(acc, f) : f.normalized();
    seen = true;
    if (acc.degree() == 0) break;
  }
  if (!seen) throw input_error("gcd_binary: all forms are zero");
  return acc;
}

// Reduction of a binary form modulo a linear form W: the quotient ring is a
// univariate polynomial ring, so f maps to gamma * w^deg(f) for a scalar
// gamma and the surviving coordinate w.  Returns gamma.
template <class K>
K gamma_mod_linear(const Form<K>& f, const Form<K>& w) {
  if (f.nvars() != 2 || w.nvars() != 2 || w.degree() != 1 || w.is_zero())
    throw input_error("gamma_mod_linear: expects a nonzero binary linear form");
  const K a = w.coeff({1, 0});
  const K b = w.coeff({0, 1});
  if (!FieldTraits<K>::is_zero(b)) return f.evaluate({K(1), K(0) - a / b});
  return f.evaluate({K(0), K(1)});
}

// Index of the coordinate that survives modulo w (0 for X, 1 for Y).
template <class K>
int surviving_coordinate(const Form<K>& w) {
  const K b = w.coeff({0, 1});
  return FieldTraits<K>::is_zero(b) ? 1 : 0;
}

}  // namespace dubreil
