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
#include <string>
#include <vector>

#include "fields.hpp"
#include "monomial.hpp"

namespace dubreil {

// Homogeneous form with exact coefficients in K.  A zero form keeps its
// declared degree so that degree bookkeeping survives cancellation.
// Invariant: every stored term has total degree == deg_ and coefficient != 0.
template <class K>
class Form {
 public:
  using TermMap = std::map<Exponents, K, LexGreater>;

  Form() : nvars_(1), deg_(0) {}
  Form(int nvars, int deg) : nvars_(nvars), deg_(deg) {
    if (nvars < 1) throw input_error("form: need at least one variable");
    if (deg < 0) throw input_error("form: negative degree");
  }

  static Form zero(int nvars, int deg) { return Form(nvars, deg); }

  static Form monomial(int nvars, const Exponents& e, const K& c) {
    Form f(nvars, total_degree(e));
    if (static_cast<int>(e.size()) != nvars)
      throw input_error("form: exponent arity mismatch");
    f.add_term(e, c);
    return f;
  }

  static Form constant(int nvars, const K& c) {
    return monomial(nvars, Exponents(nvars, 0), c);
  }

  static Form variable(int nvars, int i) {
    Exponents e(nvars, 0);
    e[i] = 1;
    return monomial(nvars, e, K(1));
  }

  // a0*X0 + a1*X1 + ... from a coefficient vector.
  static Form linear(const std::vector<K>& coeffs) {
    int n = static_cast<int>(coeffs.size());
    Form f(n, 1);
    for (int i = 0; i < n; ++i) {
      Exponents e(n, 0);
      e[i] = 1;
      f.add_term(e, coeffs[i]);
    }
    return f;
  }

  int nvars() const { return nvars_; }
  int degree() const { return deg_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  K coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? K(0) : it->second;
  }

  void add_term(const Exponents& e, const K& c) {
    if (total_degree(e) != deg_) throw input_error("form: term degree mismatch");
    if (FieldTraits<K>::is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (FieldTraits<K>::is_zero(it->second)) terms_.erase(it);
    }
  }

  friend Form operator+(const Form& a, const Form& b) {
    a.check_compatible(b);
    Form r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }

  friend Form operator-(const Form& a, const Form& b) {
    a.check_compatible(b);
    Form r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, K(0) - c);
    return r;
  }

  Form operator-() const {
    Form r(nvars_, deg_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, K(0) - c);
    return r;
  }

  friend Form operator*(const Form& a, const Form& b) {
    if (a.nvars_ != b.nvars_) throw input_error("form: variable count mismatch");
    Form r(a.nvars_, a.deg_ + b.deg_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e = ea;
        for (int i = 0; i < a.nvars_; ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  friend Form operator*(const K& c, const Form& a) {
    Form r(a.nvars_, a.deg_);
    if (FieldTraits<K>::is_zero(c)) return r;
    for (const auto& [e, cc] : a.terms_) r.terms_.emplace(e, c * cc);
    return r;
  }

  Form pow(int k) const {
    if (k < 0) throw input_error("form: negative power");
    Form r = constant(nvars_, K(1));
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
  }

  friend bool operator==(const Form& a, const Form& b) {
    return a.nvars_ == b.nvars_ && a.deg_ == b.deg_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

  // Proportionality test; zero forms are proportional only to zero forms.
  bool proportional_to(const Form& b) const {
    if (nvars_ != b.nvars_ || deg_ != b.deg_) return false;
    if (is_zero() || b.is_zero()) return is_zero() && b.is_zero();
    if (terms_.size() != b.terms_.size()) return false;
    const K denom = b.coeff(terms_.begin()->first);
    if (FieldTraits<K>::is_zero(denom)) return false;
    const K ratio = terms_.begin()->second / denom;
    for (const auto& [e, c] : terms_)
      if (c != ratio * b.coeff(e)) return false;
    return true;
  }

  // Leading coefficient scaled to 1 (no-op on the zero form).
  Form normalized() const {
    if (is_zero()) return *this;
    const K inv = K(1) / terms_.begin()->second;
    return inv * (*this);
  }

  K evaluate(const std::vector<K>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
      throw input_error("form: evaluation point arity mismatch");
    K acc(0);
    for (const auto& [e, c] : terms_) {
      K t = c;
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= point[i];
      acc += t;
    }
    return acc;
  }

  // Coefficients aligned with monomial_basis(nvars, deg).
  std::vector<K> coefficient_vector() const {
    auto basis = monomial_basis(nvars_, deg_);
    std::vector<K> out;
    out.reserve(basis.size());
    for (const auto& e : basis) out.push_back(coeff(e));
    return out;
  }

  static Form from_coefficient_vector(int nvars, int deg, const std::vector<K>& v) {
    auto basis = monomial_basis(nvars, deg);
    if (basis.size() != v.size())
      throw input_error("form: coefficient vector length mismatch");
    Form f(nvars, deg);
    for (std::size_t i = 0; i < basis.size(); ++i) f.add_term(basis[i], v[i]);
    return f;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      std::string cs = FieldTraits<K>::to_string(c);
      std::string ms = monomial_to_string(e);
      if (!s.empty()) {
        if (!cs.empty() && cs[0] == '-') {
          s += " - ";
          cs = cs.substr(1);
        } else {
          s += " + ";
        }
      }
      if (ms == "1") {
        s += cs;
      } else if (cs == "1") {
        s += ms;
      } else if (cs == "-1") {
        s += "-" + ms;
      } else {
        s += cs + "*" + ms;
      }
    }
    return s;
  }

 private:
  void check_compatible(const Form& b) const {
    if (nvars_ != b.nvars_ || deg_ != b.deg_)
      throw input_error("form: degree or variable count mismatch");
  }

  int nvars_;
  int deg_;
  TermMap terms_;
};

template <class K>
Form<K> multiply(const Form<K>& a, const Form<K>& b) {
  return a * b;
}

// Substitute variable i by images[i]; every image must be linear and share a
// common variable count.  The result is homogeneous of the same degree.
template <class K>
Form<K> substitute_linear(const Form<K>& f, const std::vector<Form<K>>& images) {
  if (static_cast<int>(images.size()) != f.nvars())
    throw input_error("substitute_linear: image count mismatch");
  int target_vars = images.empty() ? 1 : images[0].nvars();
  for (const auto& g : images) {
    if (g.degree() != 1) throw input_error("substitute_linear: image must be linear");
    if (g.nvars() != target_vars)
      throw input_error("substitute_linear: image variable counts differ");
  }
  Form<K> acc(target_vars, f.degree());
  for (const auto& [e, c] : f.terms()) {
    Form<K> t = Form<K>::constant(target_vars, c);
    for (int i = 0; i < f.nvars(); ++i)
      for (int k = 0; k < e[i]; ++k) t = t * images[i];
    acc = acc + t;
  }
  return acc;
}

// Exact division: returns f / g when g divides f, std::nullopt otherwise.
// Solved as a linear system on the coefficients of the quotient; sizes here
// are small enough that this stays cheap and works for any variable count.
template <class K>
std::optional<Form<K>> try_divide(const Form<K>& f, const Form<K>& g) {
  if (g.is_zero()) throw input_error("division by the zero form");
  if (f.is_zero()) return Form<K>::zero(f.nvars(), std::max(0, f.degree() - g.degree()));
  if (f.nvars() != g.nvars()) throw input_error("division: variable count mismatch");
  if (f.degree() < g.degree()) return std::nullopt;
  const int n = f.nvars();
  const int qd = f.degree() - g.degree();
  auto qbasis = monomial_basis(n, qd);
  auto fbasis = monomial_basis(n, f.degree());
  std::map<Exponents, std::size_t, LexGreater> row_of;
  for (std::size_t i = 0; i < fbasis.size(); ++i) row_of.emplace(fbasis[i], i);
  // Build the matrix of "multiply by g" from degree qd to degree f.degree().
  const std::size_t rows = fbasis.size(), cols = qbasis.size();
  std::vector<std::vector<K>> m(rows, std::vector<K>(cols + 1, K(0)));
  for (std::size_t j = 0; j < cols; ++j)
    for (const auto& [e, c] : g.terms()) {
      Exponents e2 = qbasis[j];
      for (int i = 0; i < n; ++i) e2[i] += e[i];
      m[row_of[e2]][j] += c;
    }
  {
    auto fv = f.coefficient_vector();
    for (std::size_t i = 0; i < rows; ++i) m[i][cols] = fv[i];
  }
  // Gaussian elimination on the augmented system.
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && FieldTraits<K>::is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    const K inv = K(1) / m[rank][c];
    for (auto& x : m[rank]) x *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || FieldTraits<K>::is_zero(m[r][c])) continue;
      const K factor = m[r][c];
      for (std::size_t k = c; k <= cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (!FieldTraits<K>::is_zero(m[r][cols])) return std::nullopt;
  std::vector<K> q(cols, K(0));
  for (std::size_t r = 0; r < rank; ++r) q[pivot_col[r]] = m[r][cols];
  Form<K> quotient = Form<K>::from_coefficient_vector(n, qd, q);
  if (!(quotient * g == f)) return std::nullopt;
  return quotient;
}

}  // namespace dubreil
