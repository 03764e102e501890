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

// Three-variable side of the package: bidiagonal chain bases lifted out of
// the plane, the alpha = 3 one-parameter families, quotients by a regular
// linear form, membership in the extremal class (exactly three essential
// generators, every other generator strongly inessential), and stability of
// that class under degree splits.

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dubreil/binary_gcd.hpp"
#include "dubreil/essentiality.hpp"
#include "dubreil/form.hpp"
#include "dubreil/form_matrix.hpp"
#include "dubreil/graded_ideal.hpp"
#include "dubreil/monomial.hpp"

namespace dubreil {

namespace detail {

// Single term c * X_var^deg, c != 0.
template <class K>
bool single_term_power(const Form<K>& f, int var, int deg) {
  if (f.is_zero() || f.terms().size() != 1 || f.degree() != deg) return false;
  return f.terms().begin()->first[var] == deg;
}

}  // namespace detail

// ---------- chain bases and their lifts ----------

// Bidiagonal chain over two variables: diagonal Y^{t_i}, superdiagonal -X.
// Column degrees a_j = t_0 + ... + t_{j-2} + (delta + 1 - j) ascend, row
// degrees are b_i = a_i + t_{i-1}.  Every exponent must be positive.
template <class K>
FormMatrix<K> chain_base(const std::vector<int>& ts) {
  const int delta = static_cast<int>(ts.size());
  if (delta < 2)
    throw input_error("chain base: need at least two diagonal exponents");
  for (int t : ts)
    if (t < 1) throw input_error("chain base: exponents must be positive");
  std::vector<int> a(delta + 1), b(delta);
  int acc = 0;
  for (int j = 1; j <= delta + 1; ++j) {
    a[j - 1] = acc + delta + 1 - j;
    if (j <= delta) acc += ts[j - 1];
  }
  for (int i = 1; i <= delta; ++i) b[i - 1] = a[i - 1] + ts[i - 1];
  FormMatrix<K> m(2, b, a);
  const Form<K> x = Form<K>::variable(2, 0);
  const Form<K> y = Form<K>::variable(2, 1);
  for (int i = 1; i <= delta; ++i) {
    m.set(i, i, y.pow(ts[i - 1]));
    m.set(i, i + 1, -x);
  }
  return m;
}

// Entrywise embedding of a two-variable form into three variables.
template <class K>
Form<K> embed_plane_form(const Form<K>& f) {
  if (f.nvars() != 2)
    throw input_error("embed: expected a two-variable form");
  Form<K> out = Form<K>::zero(3, f.degree());
  for (const auto& [e, c] : f.terms())
    out = out + Form<K>::monomial(3, {e[0], e[1], 0}, c);
  return out;
}

template <class K>
FormMatrix<K> embed_matrix(const FormMatrix<K>& m) {
  if (m.nvars() != 2)
    throw input_error("embed: expected a two-variable matrix");
  FormMatrix<K> out(3, m.row_degrees(), m.col_degrees());
  for (int i = 1; i <= m.rows(); ++i)
    for (int j = 1; j <= m.cols(); ++j)
      if (!m.entry(i, j).is_zero())
        out.set(i, j, embed_plane_form(m.entry(i, j)));
  return out;
}

// A lift datum: a bidiagonal chain base plus one correction form per row
// below the first.  P_i may be zero; a nonzero P_i must be a form in three
// variables of degree t_0 + ... + t_i - i - 1.
template <class K>
struct LiftSpec {
  FormMatrix<K> base;
  std::vector<Form<K>> P;
  LiftSpec(FormMatrix<K> b, std::vector<Form<K>> p)
      : base(std::move(b)), P(std::move(p)) {}
};

// Lift of the chain into three variables.  The diagonal and superdiagonal
// are copied, row i+1 gains Z^{t_{i-1} + t_i - 1} in column i (for
// 2 <= i < delta) and Z * P_i in column 1.  Setting Z = 0 recovers the base.
template <class K>
FormMatrix<K> lift_general(const LiftSpec<K>& spec) {
  const FormMatrix<K>& base = spec.base;
  if (base.nvars() != 2)
    throw input_error("lift: the base must live in two variables");
  const int delta = base.rows();
  if (delta + 1 != base.cols())
    throw input_error("lift: the base must have one more column than rows");
  if (delta < 2) throw input_error("lift: the base needs at least two rows");
  std::vector<int> ts(delta);
  for (int i = 1; i <= delta; ++i) {
    const int deg = base.row_degree(i) - base.col_degree(i);
    if (deg < 1 || !detail::single_term_power(base.entry(i, i), 1, deg))
      throw input_error(
          "lift: diagonal entries must be powers of the second variable");
    ts[i - 1] = deg;
    if (!detail::single_term_power(base.entry(i, i + 1), 0, 1))
      throw input_error(
          "lift: superdiagonal entries must be linear in the first variable");
  }
  for (int i = 1; i <= delta; ++i)
    for (int j = 1; j <= delta + 1; ++j)
      if (j != i && j != i + 1 && !base.entry(i, j).is_zero())
        throw input_error("lift: the base must be bidiagonal");
  if (static_cast<int>(spec.P.size()) != delta - 1)
    throw input_error(
        "lift: expected one correction form per row below the first");
  int degsum = ts[0];
  for (int i = 1; i <= delta - 1; ++i) {
    degsum += ts[i];
    const Form<K>& p = spec.P[i - 1];
    if (p.is_zero()) continue;
    if (p.nvars() != 3)
      throw input_error("lift: correction forms must live in three variables");
    const int want = degsum - i - 1;
    if (p.degree() != want)
      throw input_error("lift: correction form " + std::to_string(i) +
                        " must have degree " + std::to_string(want));
  }
  FormMatrix<K> out(3, base.row_degrees(), base.col_degrees());
  const Form<K> z = Form<K>::variable(3, 2);
  for (int i = 1; i <= delta; ++i) {
    out.set(i, i, embed_plane_form(base.entry(i, i)));
    out.set(i, i + 1, embed_plane_form(base.entry(i, i + 1)));
  }
  for (int i = 2; i <= delta - 1; ++i)
    out.set(i + 1, i, z.pow(ts[i - 1] + ts[i] - 1));
  for (int i = 1; i <= delta - 1; ++i)
    if (!spec.P[i - 1].is_zero()) out.set(i + 1, 1, z * spec.P[i - 1]);
  return out;
}

// ---------- alpha = 3 families ----------

enum class Alpha3Kind { I11, I12, I2 };

inline const char* to_string(Alpha3Kind k) {
  switch (k) {
    case Alpha3Kind::I11: return "I11";
    case Alpha3Kind::I12: return "I12";
    default: return "I2";
  }
}

// One-parameter families with alpha = 3 and a single strongly inessential
// generator.  The parameter t >= 2 fixes the top generator degree t + 2; the
// optional corrections Q_i have degree t - 1.  I11 and I12 degenerate onto a
// triple line, I2 onto a double line plus a line.
template <class K>
FormMatrix<K> family_alpha3(Alpha3Kind kind, int t, const Form<K>& q1,
                            const Form<K>& q2, const Form<K>& q3) {
  if (t < 2) throw input_error("family: the exponent must be at least 2");
  const std::array<const Form<K>*, 3> qs = {&q1, &q2, &q3};
  for (const Form<K>* q : qs) {
    if (q->is_zero()) continue;
    if (q->nvars() != 3)
      throw input_error("family: corrections must live in three variables");
    if (q->degree() != t - 1)
      throw input_error("family: corrections must have degree " +
                        std::to_string(t - 1));
  }
  const std::vector<int> a = {3, t + 2, t + 2, t + 2};
  const std::vector<int> b = {t + 3, t + 3, t + 3};
  FormMatrix<K> m(3, b, a);
  const Form<K> x = Form<K>::variable(3, 0);
  const Form<K> y = Form<K>::variable(3, 1);
  const Form<K> z = Form<K>::variable(3, 2);
  auto corner = [&](const Form<K>& lead, const Form<K>& q) {
    return q.is_zero() ? lead : lead + z * q;
  };
  auto zq = [&](const Form<K>& q, int row) {
    if (!q.is_zero()) m.set(row, 1, z * q);
  };
  switch (kind) {
    case Alpha3Kind::I11:
      m.set(1, 1, corner(y.pow(t), q1));
      m.set(1, 2, -x);
      zq(q2, 2);
      m.set(2, 2, y);
      m.set(2, 3, -x);
      zq(q3, 3);
      m.set(3, 2, z);
      m.set(3, 3, y);
      m.set(3, 4, -x);
      break;
    case Alpha3Kind::I12:
      m.set(1, 1, corner(y.pow(t), q1));
      m.set(1, 2, -x);
      m.set(1, 3, z);
      zq(q2, 2);
      m.set(2, 2, y);
      m.set(2, 3, -x);
      m.set(2, 4, -z);
      zq(q3, 3);
      m.set(3, 3, y);
      m.set(3, 4, -x);
      break;
    case Alpha3Kind::I2:
      m.set(1, 1, corner((x + y).pow(t), q1));
      m.set(1, 2, -x);
      zq(q2, 2);
      m.set(2, 2, x + y);
      m.set(2, 3, -x);
      zq(q3, 3);
      m.set(3, 2, z);
      m.set(3, 3, x);
      m.set(3, 4, -y);
      break;
  }
  return m;
}

template <class K>
FormMatrix<K> family_alpha3(Alpha3Kind kind, int t) {
  const Form<K> none = Form<K>::zero(3, std::max(1, t - 1));
  return family_alpha3(kind, t, none, none, none);
}

// General 3 x 4 lift of the chain with exponents (t, 1, 1): the skeleton has
// -X on the superdiagonal and Y below it, and every entry of the last three
// columns gains a constant multiple of Z taken from the 3 x 3 matrix A.
template <class K>
FormMatrix<K> alpha3_general(int t, const std::array<std::array<K, 3>, 3>& a,
                             const Form<K>& p1, const Form<K>& p2,
                             const Form<K>& p3) {
  if (t < 2) throw input_error("family: the exponent must be at least 2");
  const std::array<const Form<K>*, 3> ps = {&p1, &p2, &p3};
  for (const Form<K>* p : ps) {
    if (p->is_zero()) continue;
    if (p->nvars() != 3)
      throw input_error("family: corrections must live in three variables");
    if (p->degree() != t - 1)
      throw input_error("family: corrections must have degree " +
                        std::to_string(t - 1));
  }
  const std::vector<int> cols = {3, t + 2, t + 2, t + 2};
  const std::vector<int> rows = {t + 3, t + 3, t + 3};
  FormMatrix<K> m(3, rows, cols);
  const Form<K> x = Form<K>::variable(3, 0);
  const Form<K> y = Form<K>::variable(3, 1);
  const Form<K> z = Form<K>::variable(3, 2);
  m.set(1, 1, p1.is_zero() ? y.pow(t) : y.pow(t) + z * p1);
  if (!p2.is_zero()) m.set(2, 1, z * p2);
  if (!p3.is_zero()) m.set(3, 1, z * p3);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      Form<K> entry = Form<K>::zero(3, 1);
      if (j == i) entry = -x;
      if (j == i - 1) entry = y;
      if (!FieldTraits<K>::is_zero(a[i - 1][j - 1]))
        entry = entry + a[i - 1][j - 1] * z;
      if (!entry.is_zero()) m.set(i, j + 1, entry);
    }
  return m;
}

// The second column of the general 3 x 4 lift is strongly inessential over
// the closed field exactly when A is lower triangular Toeplitz with a
// nonzero lower left corner.
template <class K>
bool alpha3_shape_column2(const std::array<std::array<K, 3>, 3>& a) {
  using T = FieldTraits<K>;
  return T::is_zero(a[0][1]) && T::is_zero(a[0][2]) && T::is_zero(a[1][2]) &&
         a[1][1] == a[0][0] && a[2][2] == a[0][0] && a[2][1] == a[1][0] &&
         !T::is_zero(a[2][0]);
}

// The third column is strongly inessential over the closed field exactly
// when A is Toeplitz with opposite signs on the two diagonals adjacent to
// the main one, a zero lower left corner, and a nonzero entry above the
// main diagonal.
template <class K>
bool alpha3_shape_column3(const std::array<std::array<K, 3>, 3>& a) {
  using T = FieldTraits<K>;
  return T::is_zero(a[0][2]) && T::is_zero(a[2][0]) &&
         a[1][1] == a[0][0] && a[2][2] == a[0][0] && a[2][1] == a[1][0] &&
         a[1][2] == -a[0][1] && !T::is_zero(a[0][1]);
}

// Coefficients of the determinant of the substituted column (col = 2 or 3)
// as a polynomial in the two multipliers (u, v) of the partner columns.
// Order: u^3, u^2 v, u^2, u v, (v^2 for col 2, u v^2 for col 3), u, v, 1.
// The column is strongly inessential over the closed field exactly when the
// seven nonconstant coefficients vanish and the constant one does not.
template <class K>
std::array<K, 8> alpha3_substitution_coefficients(
    const std::array<std::array<K, 3>, 3>& a, int col) {
  if (col == 2)
    return {-a[0][1],          -a[0][2],         a[1][1] - a[0][0],
            a[0][1] + a[1][2], a[0][2],          a[1][0] - a[2][1],
            a[0][0] - a[2][2], -a[2][0]};
  if (col == 3)
    return {-a[2][0],          a[0][0] - a[2][2], a[1][0] - a[2][1],
            a[0][1] + a[1][2], a[0][2],           a[1][1] - a[0][0],
            -a[0][2],          -a[0][1]};
  throw input_error("coefficients: only columns 2 and 3 carry the test");
}

// ---------- quotient by a regular linear form ----------

// Image of a three-variable presentation matrix modulo a linear form that is
// regular on the quotient ring.  Regularity is checked two ways: the gcd of
// the substituted maximal minors must be constant, and the dimension of
// (I + (L))_d must equal dim I_d + dim S_{d-1} - dim I_{d-1} for every d up
// to the horizon.  A column certified strongly inessential upstairs whose
// image is certified otherwise raises theorem_error.
template <class K>
FormMatrix<K> quotient_mod_linear(const FormMatrix<K>& m, const Form<K>& ell,
                                  const SIOptions& opt = SIOptions{},
                                  int horizon = -1) {
  if (m.nvars() != 3)
    throw input_error("quotient: expected a three-variable matrix");
  if (ell.is_zero() || ell.nvars() != 3 || ell.degree() != 1)
    throw input_error(
        "quotient: expected a nonzero linear form in three variables");
  const std::array<K, 3> c = {ell.coeff({1, 0, 0}), ell.coeff({0, 1, 0}),
                              ell.coeff({0, 0, 1})};
  int pivot = 2;
  while (pivot >= 0 && FieldTraits<K>::is_zero(c[pivot])) --pivot;
  std::vector<int> kept;
  for (int v = 0; v < 3; ++v)
    if (v != pivot) kept.push_back(v);
  std::vector<Form<K>> img(3, Form<K>::zero(2, 1));
  img[kept[0]] = Form<K>::variable(2, 0);
  img[kept[1]] = Form<K>::variable(2, 1);
  img[pivot] = Form<K>::linear(
      {-c[kept[0]] / c[pivot], -c[kept[1]] / c[pivot]});

  const std::vector<Form<K>> minors = m.signed_minors();
  std::vector<Form<K>> image_minors;
  for (const Form<K>& f : minors) {
    if (f.is_zero()) continue;
    Form<K> g = substitute_linear(f, img);
    if (!g.is_zero()) image_minors.push_back(std::move(g));
  }
  if (image_minors.empty())
    throw input_error("quotient: the linear form is not regular");
  if (gcd_binary(image_minors).degree() > 0)
    throw input_error("quotient: the linear form is not regular");

  GradedIdeal<K> ideal(3, minors);
  const int hor = horizon > 0 ? horizon : ideal.default_horizon();
  std::vector<Form<K>> with_ell = minors;
  with_ell.push_back(ell);
  GradedIdeal<K> sum(3, with_ell);
  for (int d = 1; d <= hor; ++d) {
    const long long lhs = static_cast<long long>(sum.piece_dim(d));
    const long long rhs = static_cast<long long>(ideal.piece_dim(d)) +
                          static_cast<long long>(monomial_count(3, d - 1)) -
                          static_cast<long long>(ideal.piece_dim(d - 1));
    if (lhs != rhs)
      throw input_error("quotient: the linear form is not regular at degree " +
                        std::to_string(d));
  }

  FormMatrix<K> out(2, m.row_degrees(), m.col_degrees());
  for (int i = 1; i <= m.rows(); ++i)
    for (int j = 1; j <= m.cols(); ++j) {
      if (m.entry(i, j).is_zero()) continue;
      Form<K> g = substitute_linear(m.entry(i, j), img);
      if (!g.is_zero()) out.set(i, j, g);
    }

  const auto before = classify_all(m, opt);
  const auto after = classify_all(out, opt);
  for (int j : before.strongly_inessential) {
    const ColumnKind k = after.columns[j - 1].kind;
    const bool lost =
        k == ColumnKind::Essential ||
        std::find(after.inessential_not_si.begin(),
                  after.inessential_not_si.end(),
                  j) != after.inessential_not_si.end();
    if (lost)
      throw theorem_error("quotient: column " + std::to_string(j) +
                          " lost strong inessentiality in the image");
  }
  return out;
}

// ---------- membership in the extremal class ----------

template <class K>
struct SReport {
  bool member = false;
  bool inconclusive = false;      // some column resisted certification
  int alpha = 0;
  std::vector<int> essential_degrees;
  bool degrees_ok = false;        // essential degrees match the expected pattern
  ClassifyAllResult<K> classification;
  std::string detail;
};

// Membership test for the class of three-variable ideals with nu = alpha + 1,
// alpha > 2, exactly three essential generators, and every other generator
// strongly inessential.  When three essential generators are found their
// degrees must be {a_0, a_r, a_r}, or {a_0, a_r, a_{r-1}} when the top degree
// carries a single generator; a certified member violating that pattern
// raises theorem_error.
template <class K>
SReport<K> check_S_membership(const FormMatrix<K>& m,
                              const SIOptions& opt = SIOptions{}) {
  if (m.nvars() != 3)
    throw input_error("membership: expected a three-variable matrix");
  if (m.rows() + 1 != m.cols())
    throw input_error("membership: expected one more column than rows");
  if (m.col_degree(1) != m.rows())
    throw input_error(
        "membership: the generator count must exceed the initial degree "
        "by one");
  SReport<K> rep;
  rep.alpha = m.rows();
  rep.classification = classify_all(m, opt);
  const auto& cls = rep.classification;
  rep.inconclusive = !cls.unknown.empty();
  for (int j : cls.essential) rep.essential_degrees.push_back(m.col_degree(j));
  std::sort(rep.essential_degrees.begin(), rep.essential_degrees.end());

  if (cls.essential.size() == 3) {
    std::map<int, int> counts;
    for (int j = 1; j <= m.cols(); ++j) ++counts[m.col_degree(j)];
    std::vector<int> degs;
    for (const auto& [d, n] : counts) {
      (void)n;
      degs.push_back(d);
    }
    const int r = static_cast<int>(degs.size()) - 1;
    std::vector<int> expected;
    if (r == 0) {
      expected = {degs[0], degs[0], degs[0]};
    } else if (counts[degs[r]] == 1) {
      expected = {degs[0], degs[r - 1], degs[r]};
    } else {
      expected = {degs[0], degs[r], degs[r]};
    }
    std::sort(expected.begin(), expected.end());
    rep.degrees_ok = rep.essential_degrees == expected;
  }

  const int si = static_cast<int>(cls.strongly_inessential.size());
  rep.member = !rep.inconclusive && rep.alpha > 2 &&
               cls.essential.size() == 3 && si == rep.alpha - 2 &&
               cls.inessential_not_si.empty();
  if (rep.inconclusive)
    rep.detail = "some column resisted certification";
  else if (rep.alpha <= 2)
    rep.detail = "alpha must exceed two";
  else if (cls.essential.size() != 3)
    rep.detail = "essential generator count is " +
                 std::to_string(cls.essential.size()) + ", expected three";
  else if (!cls.inessential_not_si.empty())
    rep.detail = "an inessential generator admits an essential replacement";
  else if (si != rep.alpha - 2)
    rep.detail = "strongly inessential count is " + std::to_string(si) +
                 ", expected alpha - 2";
  else
    rep.detail =
        "three essential generators, every other generator strongly "
        "inessential";
  if (rep.member && !rep.degrees_ok)
    throw theorem_error(
        "membership: essential degrees violate the expected pattern");
  return rep;
}

// ---------- shape of a product of level forms ----------

enum class PhiKind { SingleLinePower, TwoLines, ConicPower, Other };

inline const char* to_string(PhiKind k) {
  switch (k) {
    case PhiKind::SingleLinePower: return "SingleLinePower";
    case PhiKind::TwoLines: return "TwoLines";
    case PhiKind::ConicPower: return "ConicPower";
    default: return "Other";
  }
}

template <class K>
struct PhiShape {
  PhiKind kind = PhiKind::Other;
  int delta = 0;                 // degree of the product
  std::optional<Form<K>> first;  // line H, or the conic
  std::optional<Form<K>> second; // line K
  int r = 0;                     // exponent of the first line
  int s = 0;                     // exponent of the second line
  int gamma = 0;                 // exponent of the conic
  std::string detail;
};

// Witnesses offered by the caller: up to two lines, or one conic.  The
// expansion is verified exactly; irreducibility of a conic hint is decided
// through the rank of its symmetric coefficient matrix (skipped in
// characteristic two).
template <class K>
struct PhiHint {
  std::vector<Form<K>> lines;
  std::optional<Form<K>> conic;
};

namespace detail {

// Rank of the symmetric 3 x 3 coefficient matrix of a quadratic form in
// three variables.  Assumes the field characteristic is not two.
template <class K>
int conic_rank(const Form<K>& c) {
  const K two = FieldTraits<K>::from_int(2);
  std::array<std::array<K, 3>, 3> b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Exponents e(3, 0);
      ++e[i];
      ++e[j];
      const K coeff = c.coeff(e);
      b[i][j] = (i == j) ? coeff : coeff / two;
    }
  int rank = 0;
  for (int col = 0; col < 3 && rank < 3; ++col) {
    int pr = -1;
    for (int i = rank; i < 3; ++i)
      if (!FieldTraits<K>::is_zero(b[i][col])) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(b[rank], b[pr]);
    for (int i = rank + 1; i < 3; ++i) {
      if (FieldTraits<K>::is_zero(b[i][col])) continue;
      const K f = b[i][col] / b[rank][col];
      for (int j = col; j < 3; ++j) b[i][j] = b[i][j] - f * b[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

template <class K>
PhiShape<K> phi_shape(const Form<K>& phi, const PhiHint<K>& hint) {
  if (phi.is_zero()) throw input_error("shape: the form is zero");
  PhiShape<K> out;
  out.delta = phi.degree();
  if (hint.conic) {
    const Form<K>& c = *hint.conic;
    if (c.is_zero() || c.degree() != 2 || c.nvars() != 3)
      throw input_error(
          "shape: the conic hint must be a quadratic form in three variables");
    if (!hint.lines.empty())
      throw input_error("shape: give either lines or a conic, not both");
    if (out.delta % 2 != 0)
      throw input_error("shape: odd degree cannot be a conic power");
    bool rank_checked = true;
    if constexpr (FieldTraits<K>::is_finite) {
      if (Fp::modulus() == 2) rank_checked = false;
    }
    if (rank_checked && detail::conic_rank(c) < 3)
      throw input_error("shape: the quadratic hint factors into lines");
    const int gamma = out.delta / 2;
    if (!c.pow(gamma).proportional_to(phi))
      throw input_error("shape: the hint does not expand to the form");
    out.kind = PhiKind::ConicPower;
    out.first = c;
    out.gamma = gamma;
    out.detail = rank_checked ? "irreducible conic power"
                              : "conic power, irreducibility not checked";
    return out;
  }
  if (hint.lines.empty()) {
    out.detail = "no hint supplied";
    return out;
  }
  for (const Form<K>& l : hint.lines)
    if (l.is_zero() || l.degree() != 1 || l.nvars() != phi.nvars())
      throw input_error("shape: line hints must be linear forms");
  if (hint.lines.size() == 1) {
    const Form<K>& h = hint.lines[0];
    if (!h.pow(out.delta).proportional_to(phi))
      throw input_error("shape: the hint does not expand to the form");
    out.kind = PhiKind::SingleLinePower;
    out.first = h;
    out.r = out.delta;
    out.detail = "power of a single line";
    return out;
  }
  if (hint.lines.size() != 2)
    throw input_error("shape: at most two line hints are supported");
  const Form<K>& h = hint.lines[0];
  const Form<K>& k = hint.lines[1];
  for (int r = out.delta; r >= 0; --r) {
    Form<K> cand = r == 0 ? k.pow(out.delta)
                          : (r == out.delta ? h.pow(out.delta)
                                            : h.pow(r) * k.pow(out.delta - r));
    if (!cand.proportional_to(phi)) continue;
    if (r == out.delta || r == 0) {
      out.kind = PhiKind::SingleLinePower;
      out.first = r == 0 ? k : h;
      out.r = out.delta;
      out.detail = "power of a single line";
    } else {
      out.kind = PhiKind::TwoLines;
      out.first = h;
      out.second = k;
      out.r = r;
      out.s = out.delta - r;
      out.detail = "product of powers of two lines";
    }
    return out;
  }
  throw input_error("shape: the hint does not expand to the form");
}

// Necessary condition for the conic shape: above the initial degree, every
// generator count must be a power of two.
inline bool conic_level_filter(const std::map<int, int>& nu) {
  bool first = true;
  for (const auto& [deg, count] : nu) {
    (void)deg;
    if (first) {
      first = false;
      continue;
    }
    if (count <= 0 || (count & (count - 1)) != 0) return false;
  }
  return true;
}

// ---------- stability of the class under degree splits ----------

template <class K>
struct SplitStability {
  int level = 0;    // index of the degree level split at, 1-based
  int degree = 0;   // the generator degree at that level
  FormMatrix<K> part;
  SReport<K> report;
  bool ok = false;
};

// Levels k at which the degree split keeps the class: k < r when the top
// level carries at least two generators, k < r - 1 when it carries one.
template <class K>
std::vector<int> admissible_split_levels(const FormMatrix<K>& m) {
  std::map<int, int> counts;
  for (int j = 1; j <= m.cols(); ++j) ++counts[m.col_degree(j)];
  const int r = static_cast<int>(counts.size()) - 1;
  if (r < 1) return {};
  const int top = counts.rbegin()->second;
  const int bound = top >= 2 ? r - 1 : r - 2;
  std::vector<int> out;
  for (int k = 1; k <= bound; ++k) out.push_back(k);
  return out;
}

// Split a certified class member at the k-th degree level and verify that
// the upper part stays in the class.  A certified departure raises
// theorem_error; an inconclusive membership report is returned with
// ok = false.
template <class K>
SplitStability<K> check_split_stability(const FormMatrix<K>& m, int level,
                                        const SIOptions& opt = SIOptions{}) {
  SReport<K> full = check_S_membership(m, opt);
  if (full.inconclusive)
    throw input_error("stability: membership is inconclusive");
  if (!full.member)
    throw input_error("stability: the matrix is not a certified class member");
  const std::vector<int> levels = admissible_split_levels(m);
  if (std::find(levels.begin(), levels.end(), level) == levels.end())
    throw input_error("stability: split level out of range");
  std::vector<int> degs;
  for (int j = 1; j <= m.cols(); ++j) degs.push_back(m.col_degree(j));
  std::sort(degs.begin(), degs.end());
  degs.erase(std::unique(degs.begin(), degs.end()), degs.end());
  const int p = degs[level];
  int mcut = 0;
  for (int j = 1; j <= m.cols(); ++j)
    if (m.col_degree(j) <= p) ++mcut;
  MatrixSplit<K> ms = split_matrix(m, mcut);
  SplitStability<K> out{level, p, std::move(ms.inherited), SReport<K>{}, false};
  out.report = check_S_membership(out.part, opt);
  if (out.report.inconclusive) return out;
  if (!out.report.member)
    throw theorem_error("stability: the upper part left the class at degree " +
                        std::to_string(p));
  out.ok = true;
  return out;
}

// All admissible levels in turn.  An empty result is a vacuous pass.
template <class K>
std::vector<SplitStability<K>> check_split_stability(
    const FormMatrix<K>& m, const SIOptions& opt = SIOptions{}) {
  std::vector<SplitStability<K>> out;
  for (int k : admissible_split_levels(m))
    out.push_back(check_split_stability(m, k, opt));
  return out;
}

}  // namespace dubreil
