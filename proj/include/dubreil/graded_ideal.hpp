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

#include <map>
#include <optional>
#include <vector>

#include "binary_gcd.hpp"
#include "form.hpp"
#include "linalg.hpp"

namespace dubreil {

// Homogeneous ideal given by a finite set of forms, with exact graded-piece
// computations.  Pieces are cached per degree; instances are not shared
// across threads.
template <class K>
class GradedIdeal {
 public:
  GradedIdeal(int nvars, std::vector<Form<K>> gens)
      : nvars_(nvars), gens_(std::move(gens)) {
    if (nvars_ < 2) throw input_error("ideal: need at least two variables");
    for (const auto& g : gens_) {
      if (g.nvars() != nvars_) throw input_error("ideal: generator arity mismatch");
      if (g.is_zero()) throw input_error("ideal: zero generator");
      if (g.degree() < 1) throw input_error("ideal: generator of degree zero");
    }
    if (gens_.empty()) throw input_error("ideal: no generators");
  }

  int nvars() const { return nvars_; }
  const std::vector<Form<K>>& gens() const { return gens_; }

  int min_gen_degree() const {
    int m = gens_[0].degree();
    for (const auto& g : gens_) m = std::min(m, g.degree());
    return m;
  }
  int max_gen_degree() const {
    int m = gens_[0].degree();
    for (const auto& g : gens_) m = std::max(m, g.degree());
    return m;
  }

  // Spec'd default computation horizon.
  int default_horizon() const { return 2 * max_gen_degree() + nvars_; }

  const EchelonBasis<K>& piece(int t) const {
    auto it = pieces_.find(t);
    if (it != pieces_.end()) return it->second;
    // Build pieces bottom-up: I_t = S_1 * I_{t-1} + <generators of degree t>.
    int start = min_gen_degree();
    for (int d = start; d <= t; ++d) {
      if (pieces_.count(d)) continue;
      EchelonBasis<K> basis(monomial_count(nvars_, d));
      if (d > start) {
        for (const auto& f : piece_forms(d - 1))
          for (int i = 0; i < nvars_; ++i)
            basis.add((f * Form<K>::variable(nvars_, i)).coefficient_vector());
      }
      for (const auto& g : gens_)
        if (g.degree() == d) basis.add(g.coefficient_vector());
      pieces_.emplace(d, std::move(basis));
    }
    auto found = pieces_.find(t);
    if (found == pieces_.end()) {
      pieces_.emplace(t, EchelonBasis<K>(monomial_count(nvars_, std::max(t, 0))));
      found = pieces_.find(t);
    }
    return found->second;
  }

  std::size_t piece_dim(int t) const {
    if (t < min_gen_degree()) return 0;
    return piece(t).rank();
  }

  std::vector<Form<K>> piece_forms(int t) const {
    std::vector<Form<K>> out;
    if (t < min_gen_degree()) return out;
    for (const auto& row : piece(t).rows())
      out.push_back(Form<K>::from_coefficient_vector(nvars_, t, row));
    return out;
  }

  bool contains(const Form<K>& f) const {
    if (f.is_zero()) return true;
    if (f.nvars() != nvars_) throw input_error("ideal: arity mismatch");
    if (f.degree() < min_gen_degree()) return false;
    return piece(f.degree()).contains(f.coefficient_vector());
  }

  // Number of minimal generators in degree t.
  int nu(int t) const {
    auto it = nu_cache_.find(t);
    if (it != nu_cache_.end()) return it->second;
    int value = 0;
    if (t >= min_gen_degree()) {
      EchelonBasis<K> from_below(monomial_count(nvars_, t));
      if (t > min_gen_degree())
        for (const auto& f : piece_forms(t - 1))
          for (int i = 0; i < nvars_; ++i)
            from_below.add((f * Form<K>::variable(nvars_, i)).coefficient_vector());
      value = static_cast<int>(piece_dim(t)) - static_cast<int>(from_below.rank());
    }
    nu_cache_.emplace(t, value);
    return value;
  }

  int alpha() const {
    for (int t = min_gen_degree(); t <= max_gen_degree(); ++t)
      if (piece_dim(t) > 0) return t;
    throw input_error("ideal: all generators vanish");
  }

  // Subset of the given generators forming a minimal generating set, in the
  // listed order within each degree.
  std::vector<Form<K>> minimal_generators() const {
    std::vector<Form<K>> out;
    for (int t = min_gen_degree(); t <= max_gen_degree(); ++t) {
      if (nu(t) == 0) continue;
      EchelonBasis<K> seen(monomial_count(nvars_, t));
      if (t > min_gen_degree())
        for (const auto& f : piece_forms(t - 1))
          for (int i = 0; i < nvars_; ++i)
            seen.add((f * Form<K>::variable(nvars_, i)).coefficient_vector());
      int taken = 0;
      for (const auto& g : gens_) {
        if (g.degree() != t) continue;
        if (seen.add(g.coefficient_vector())) {
          out.push_back(g);
          ++taken;
        }
      }
      if (taken != nu(t))
        throw theorem_error("ideal: generator list cannot reach nu in degree " +
                            std::to_string(t));
    }
    return out;
  }

  // GCD of the degree-t piece; binary forms only.
  std::optional<Form<K>> piece_gcd(int t) const {
    if (nvars_ != 2) return std::nullopt;
    auto forms = piece_forms(t);
    if (forms.empty()) return std::nullopt;
    return gcd_binary(forms);
  }

  // Least t with GCD(I_t) = 1; binary forms only, searched up to horizon.
  std::optional<int> beta(int horizon) const {
    if (nvars_ != 2) return std::nullopt;
    for (int t = alpha(); t <= horizon; ++t) {
      auto d = piece_gcd(t);
      if (d && d->degree() == 0) return t;
    }
    return std::nullopt;
  }

 private:
  int nvars_;
  std::vector<Form<K>> gens_;
  mutable std::map<int, EchelonBasis<K>> pieces_;
  mutable std::map<int, int> nu_cache_;
};

struct IdealProfile {
  int alpha = 0;
  std::optional<int> beta;
  std::map<int, int> nu;       // minimal generator count per degree
  std::vector<int> hilbert;    // H(S/I, t) for t = 0..horizon
  std::vector<int> gamma;      // iterated difference of order nvars - 2
  long long e = 0;             // multiplicity: sum of gamma
};

// Hilbert data of S/I with the height-2 sanity gate: gamma must be
// nonnegative and vanish on the last max(2, n) degrees of the window.
template <class K>
IdealProfile profile(const GradedIdeal<K>& ideal, int horizon) {
  if (horizon < ideal.max_gen_degree() + ideal.nvars())
    throw input_error("profile: horizon too small for the generator degrees");
  const int n = ideal.nvars();
  IdealProfile p;
  p.alpha = ideal.alpha();
  p.beta = ideal.beta(horizon);
  for (int t = ideal.min_gen_degree(); t <= ideal.max_gen_degree(); ++t)
    if (ideal.nu(t) > 0) p.nu[t] = ideal.nu(t);
  p.hilbert.resize(horizon + 1);
  for (int t = 0; t <= horizon; ++t)
    p.hilbert[t] = static_cast<int>(monomial_count(n, t) - ideal.piece_dim(t));
  p.gamma = p.hilbert;
  for (int iter = 0; iter < n - 2; ++iter)
    for (int t = horizon; t >= 0; --t) p.gamma[t] -= (t > 0 ? p.gamma[t - 1] : 0);
  const int tail = std::max(2, n);
  for (int t = 0; t <= horizon; ++t) {
    if (p.gamma[t] < 0)
      throw input_error("not height 2 at this horizon");
    if (t > horizon - tail && p.gamma[t] != 0)
      throw input_error("not height 2 at this horizon");
    p.e += p.gamma[t];
  }
  if (p.e < 1) throw input_error("not height 2 at this horizon");
  return p;
}

// Campanella maximality of the generator count at degree t: nu(I, t) equals
// Gamma(t-1) - Gamma(t), corrected by +1 at t = alpha.
template <class K>
bool is_maximal_at(const GradedIdeal<K>& ideal, const IdealProfile& p, int t) {
  if (t < 0 || t >= static_cast<int>(p.gamma.size()))
    throw input_error("maximality: degree outside the computed horizon");
  const int gtm1 = t > 0 ? p.gamma[t - 1] : 0;
  return ideal.nu(t) == gtm1 - p.gamma[t] + (t == p.alpha ? 1 : 0);
}

struct DubreilRow {
  int t = 0;
  int nu = 0;
  int bound = 0;        // Gamma(t-1) - Gamma(t) + [t == alpha]
  bool bound_applies = false;  // t <= beta (asserted only when beta is known)
  bool maximal = false;        // nu == bound
};

struct DubreilReport {
  int alpha = 0;
  std::optional<int> beta;
  int nu_total = 0;
  bool dubreil_ok = false;          // nu(I) <= alpha + 1
  bool is_dubreil_maximal = false;  // nu(I) == alpha + 1
  bool campanella_ok = true;        // nu <= bound wherever the bound applies
  std::vector<DubreilRow> rows;
  std::vector<int> max_at;  // degrees where nu meets the bound
  IdealProfile profile;
};

template <class K>
DubreilReport dubreil_check(const GradedIdeal<K>& ideal, int horizon) {
  DubreilReport r;
  r.profile = profile(ideal, horizon);
  r.alpha = r.profile.alpha;
  r.beta = r.profile.beta;
  for (const auto& [t, count] : r.profile.nu) r.nu_total += count;
  r.dubreil_ok = r.nu_total <= r.alpha + 1;
  r.is_dubreil_maximal = r.nu_total == r.alpha + 1;
  const int last = std::max(r.beta.value_or(0), ideal.max_gen_degree());
  for (int t = r.alpha; t <= last; ++t) {
    DubreilRow row;
    row.t = t;
    row.nu = ideal.nu(t);
    const int gtm1 = t > 0 ? r.profile.gamma[t - 1] : 0;
    row.bound = gtm1 - r.profile.gamma[t] + (t == r.alpha ? 1 : 0);
    row.bound_applies = r.beta.has_value() && t <= *r.beta;
    row.maximal = row.bound_applies && row.nu == row.bound;
    if (row.bound_applies && row.nu > row.bound) r.campanella_ok = false;
    if (row.maximal && row.nu > 0) r.max_at.push_back(t);
    r.rows.push_back(row);
  }
  return r;
}

}  // namespace dubreil
