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

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "binary_gcd.hpp"
#include "form_matrix.hpp"
#include "graded_ideal.hpp"
#include "linalg.hpp"

namespace dubreil {

enum class ColumnKind { Essential, Inessential, StronglyInessential, Unknown };

inline const char* to_string(ColumnKind k) {
  switch (k) {
    case ColumnKind::Essential: return "Essential";
    case ColumnKind::Inessential: return "Inessential";
    case ColumnKind::StronglyInessential: return "StronglyInessential";
    default: return "Unknown";
  }
}

enum class SIStrategy { Structural, Exhaustive, MonteCarlo };

struct SIOptions {
  SIStrategy strategy = SIStrategy::Structural;
  bool fallback = true;        // allow structural -> exhaustive -> montecarlo
  int coefficient_budget = 12; // max enumerated coefficients in exhaustive mode
  long long mc_trials = 10000;
  std::uint64_t seed = 0;
};

// A degree-compatible column substitution C_j + sum lambda_h C_h that turned
// out essential, i.e. evidence against strong inessentiality.
template <class K>
struct Replacement {
  int col = 0;
  std::vector<std::pair<int, Form<K>>> lambdas;  // (column, multiplier)
  std::vector<Form<K>> column;                   // the substituted column
  std::string certificate;                       // why it is essential
};

enum class SIVerdict { StronglyInessential, NotStronglyInessential, Unknown };

template <class K>
struct SIOutcome {
  SIVerdict verdict = SIVerdict::Unknown;
  std::string method;     // chain | determinant | lift | exhaustive | montecarlo
  std::string semantics;  // closed-field | field-relative
  std::string detail;
  std::optional<Replacement<K>> replacement;
  long long trials = 0;
};

template <class K>
struct ColumnVerdict {
  int col = 0;
  ColumnKind kind = ColumnKind::Unknown;
  std::string method;
  std::string semantics;
  std::string detail;
  std::optional<int> witness_degree;             // M^t containment for inessential
  std::optional<Replacement<K>> replacement;     // present when certified not s.i.
  long long trials = 0;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Witness search bound: for n entries the column ideal of an inessential
// column is a complete intersection, with socle degree exactly
// sum(deg) - n; beyond n entries the bound is conservative.
template <class K>
int witness_bound(const std::vector<Form<K>>& col, int nvars) {
  int total = 0;
  for (const auto& f : col)
    if (!f.is_zero()) total += f.degree();
  return std::max(1, total - nvars + 1);
}

template <class K>
std::vector<Form<K>> nonzero_entries(const std::vector<Form<K>>& col) {
  std::vector<Form<K>> out;
  for (const auto& f : col)
    if (!f.is_zero()) out.push_back(f);
  return out;
}

// All points of P^(nvars-1) with coordinates in a small set, first nonzero
// coordinate 1.  Over F_p with the full residue range this enumerates the
// whole projective space exactly.
template <class K>
std::vector<std::vector<K>> projective_points(int nvars, const std::vector<K>& range) {
  std::vector<std::vector<K>> pts;
  std::vector<K> cur(nvars, K(0));
  auto rec = [&](auto&& self, int i, bool leading) -> void {
    if (i == nvars) {
      if (!leading) pts.push_back(cur);
      return;
    }
    if (leading) {
      cur[i] = K(0);
      self(self, i + 1, true);
      cur[i] = K(1);
      self(self, i + 1, false);
      cur[i] = K(0);
      return;
    }
    for (const K& v : range) {
      cur[i] = v;
      self(self, i + 1, false);
    }
    cur[i] = K(0);
  };
  rec(rec, 0, true);
  return pts;
}

template <class K>
std::vector<std::vector<K>> essential_point_candidates(int nvars) {
  std::vector<K> range;
  if constexpr (FieldTraits<K>::is_finite) {
    for (long long v = 0; v < Fp::modulus(); ++v) range.push_back(K(v));
  } else {
    for (long long v = -3; v <= 3; ++v) range.push_back(K(v));
  }
  return projective_points<K>(nvars, range);
}

}  // namespace detail

// Exact decision data for one column ideal.
template <class K>
struct ColumnNature {
  ColumnKind kind = ColumnKind::Unknown;
  std::string method;
  std::string detail;
  std::optional<int> witness_degree;
};

// Classifies the ideal generated by the column entries: Essential when the
// entries share a projective zero, Inessential when some power of the
// irrelevant maximal ideal fits inside (with the least such degree as
// witness), Unknown when neither could be certified.
template <class K>
ColumnNature<K> classify_entries(const std::vector<Form<K>>& column, int nvars) {
  ColumnNature<K> r;
  auto entries = detail::nonzero_entries(column);
  if (entries.empty()) throw input_error("classify: zero column");
  if (entries.size() == 1) {
    r.kind = ColumnKind::Essential;
    r.method = "principal";
    r.detail = "single entry " + entries[0].to_string() + " has projective zeros";
    return r;
  }
  if (nvars == 2) {
    Form<K> g = gcd_binary(entries);
    if (g.degree() > 0) {
      r.kind = ColumnKind::Essential;
      r.method = "common-factor";
      r.detail = "entries share the factor " + g.to_string();
      return r;
    }
    GradedIdeal<K> ideal(nvars, entries);
    const int tmax = detail::witness_bound(column, nvars);
    for (int t = 1; t <= tmax; ++t) {
      if (ideal.piece_dim(t) == monomial_count(nvars, t)) {
        r.kind = ColumnKind::Inessential;
        r.method = "witness-degree";
        r.witness_degree = t;
        r.detail = "contains every form of degree " + std::to_string(t);
        return r;
      }
    }
    throw theorem_error("classify: coprime binary entries missed the witness bound");
  }
  // n >= 3: Hilbert loop first (inessential witness or stabilized tail).
  GradedIdeal<K> ideal(nvars, entries);
  const int tmax = detail::witness_bound(column, nvars);
  const int tend = tmax + nvars + 2;
  std::vector<std::size_t> codim;
  for (int t = 1; t <= tend; ++t) {
    const std::size_t h = monomial_count(nvars, t) - ideal.piece_dim(t);
    if (h == 0) {
      r.kind = ColumnKind::Inessential;
      r.method = "witness-degree";
      r.witness_degree = t;
      r.detail = "contains every form of degree " + std::to_string(t);
      return r;
    }
    codim.push_back(h);
  }
  for (const auto& pt : detail::essential_point_candidates<K>(nvars)) {
    bool vanish = true;
    for (const auto& f : entries)
      if (!FieldTraits<K>::is_zero(f.evaluate(pt))) {
        vanish = false;
        break;
      }
    if (vanish) {
      std::string coords;
      for (std::size_t i = 0; i < pt.size(); ++i)
        coords += (i ? ":" : "[") + FieldTraits<K>::to_string(pt[i]);
      r.kind = ColumnKind::Essential;
      r.method = "point";
      r.detail = "entries vanish at " + coords + "]";
      return r;
    }
  }
  bool stable = true;
  for (int k = 1; k < nvars + 2; ++k)
    if (codim[codim.size() - 1 - k] != codim.back()) stable = false;
  if (stable && codim.back() > 0) {
    r.kind = ColumnKind::Essential;
    r.method = "hilbert-tail";
    r.detail = "quotient dimension stabilized at " + std::to_string(codim.back()) +
               " past degree " + std::to_string(tmax);
    return r;
  }
  r.kind = ColumnKind::Unknown;
  r.method = "none";
  r.detail = "no witness up to degree " + std::to_string(tend) +
             ", no projective zero found, tail not stabilized";
  return r;
}

template <class K>
ColumnNature<K> classify_column(const FormMatrix<K>& m, int j) {
  return classify_entries(m.column(j), m.nvars());
}

// C_j + sum lambda_h C_h; multipliers must close the degrees: deg lambda_h =
// a_h - a_j (zero multipliers are dropped).
template <class K>
std::vector<Form<K>> substituted_column(const FormMatrix<K>& m, int j,
                                        const std::vector<std::pair<int, Form<K>>>& lambdas) {
  std::vector<Form<K>> out = m.column(j);
  for (const auto& [h, lam] : lambdas) {
    if (h == j) throw input_error("substitution: multiplier at the replaced column");
    if (lam.is_zero()) continue;
    if (lam.degree() != m.col_degree(h) - m.col_degree(j))
      throw input_error("substitution: multiplier degree must close the column degrees");
    for (int i = 1; i <= m.rows(); ++i) {
      const Form<K>& e = m.entry(i, h);
      if (e.is_zero()) continue;
      Form<K> term = lam * e;
      out[i - 1] = out[i - 1].is_zero() ? term : out[i - 1] + term;
    }
  }
  return out;
}

namespace detail {

// ---------- structural certificate: bidiagonal chain (binary forms) ----------

template <class K>
bool chain_applicable(const FormMatrix<K>& m) {
  if (m.nvars() != 2 || m.rows() + 1 != m.cols()) return false;
  for (int i = 1; i <= m.rows(); ++i)
    for (int j = 1; j <= m.cols(); ++j) {
      const bool on_band = (j == i) || (j == i + 1);
      if (!on_band && !m.entry(i, j).is_zero()) return false;
      if (j == i && (m.entry(i, j).is_zero() || m.entry(i, j).degree() < 1))
        return false;
      if (j == i + 1 && (m.entry(i, j).is_zero() || m.entry(i, j).degree() != 1))
        return false;
    }
  return true;
}

// Exact strong-inessentiality decision for a column of a bidiagonal matrix
// with linear superdiagonal.  Any essential substitution forces a common
// linear factor W proportional to a superdiagonal entry M(g-1, g) where g is
// the least index with nonzero multiplier; all candidates are solved as
// scalar chain systems in the residue ring modulo W.  Complete only when
// column 1 sits strictly below the degree of column j: otherwise g = 1 is
// possible and W is unconstrained.
template <class K>
SIOutcome<K> chain_strong_inessentiality(const FormMatrix<K>& m, int j) {
  if (j < 2 || m.col_degree(1) >= m.col_degree(j))
    throw input_error("chain certificate needs column 1 strictly below the "
                      "replaced degree");
  SIOutcome<K> out;
  out.method = "chain";
  out.semantics = "closed-field";
  const int cols = m.cols();
  const int aj = m.col_degree(j);
  // Candidate divisors, deduplicated by proportionality.
  std::vector<Form<K>> candidates;
  for (int g = 2; g <= j; ++g) {
    if (m.col_degree(g) != aj) continue;
    const Form<K>& w = m.entry(g - 1, g);
    bool seen = false;
    for (const auto& c : candidates)
      if (c.proportional_to(w)) seen = true;
    if (!seen) candidates.push_back(w);
  }
  for (const auto& w : candidates) {
    // Unknowns: one scalar per column with degree >= a_j, except j itself.
    std::vector<int> unknown_cols;
    for (int h = 1; h <= cols; ++h)
      if (h != j && m.col_degree(h) >= aj) unknown_cols.push_back(h);
    std::map<int, std::size_t> slot;
    for (std::size_t s = 0; s < unknown_cols.size(); ++s) slot[unknown_cols[s]] = s;
    std::vector<std::vector<K>> sys;
    std::vector<K> rhs;
    for (int q = 1; q <= m.rows(); ++q) {
      std::vector<K> row(unknown_cols.size(), K(0));
      K r(0);
      bool touched = false;
      for (int h : {q, q + 1}) {
        if (h < 1 || h > cols) continue;
        const Form<K>& e = m.entry(q, h);
        if (e.is_zero()) continue;
        const K ge = gamma_mod_linear(e, w);
        if (h == j) {
          r -= ge;
          touched = true;
        } else if (m.col_degree(h) >= aj) {
          row[slot[h]] += ge;
          touched = true;
        }
      }
      if (touched) {
        sys.push_back(std::move(row));
        rhs.push_back(r);
      }
    }
    auto sol = solve_linear(sys, rhs);
    if (!sol) continue;
    Replacement<K> rep;
    rep.col = j;
    const int wvar = surviving_coordinate(w);
    for (std::size_t s = 0; s < unknown_cols.size(); ++s) {
      if (FieldTraits<K>::is_zero((*sol)[s])) continue;
      const int h = unknown_cols[s];
      Form<K> lam = (*sol)[s] *
                    Form<K>::variable(m.nvars(), wvar).pow(m.col_degree(h) - aj);
      rep.lambdas.emplace_back(h, lam);
    }
    rep.column = substituted_column(m, j, rep.lambdas);
    Form<K> g = gcd_binary(nonzero_entries(rep.column));
    if (g.degree() == 0)
      throw theorem_error("chain: solved substitution lost its common factor");
    rep.certificate = "entries share the factor " + g.to_string();
    out.verdict = SIVerdict::NotStronglyInessential;
    out.detail = "substitution divisible by " + w.normalized().to_string();
    out.replacement = std::move(rep);
    return out;
  }
  out.verdict = SIVerdict::StronglyInessential;
  out.detail = "all " + std::to_string(candidates.size()) +
               " candidate divisors give inconsistent chains";
  return out;
}

// ---------- structural certificate: determinant polynomial ----------

template <class K>
bool determinant_applicable(const FormMatrix<K>& m, int j) {
  if (m.rows() != m.nvars()) return false;
  const int aj = m.col_degree(j);
  for (int h = 1; h <= m.cols(); ++h)
    if (m.col_degree(h) > aj) return false;
  for (int i = 1; i <= m.rows(); ++i)
    if (m.row_degree(i) - aj != 1) return false;
  int partners = 0;
  for (int h = 1; h <= m.cols(); ++h)
    if (h != j && m.col_degree(h) == aj) ++partners;
  return partners >= 1 && partners <= 3;
}

// Determinant of a square matrix of forms by Laplace expansion along the
// first row.  Entries must share one homogeneous degree.
template <class K>
Form<K> form_det(const std::vector<std::vector<Form<K>>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  const int nv = a[0][0].nvars();
  const int entry_deg = a[0][0].degree();
  Form<K> acc = Form<K>::zero(nv, entry_deg * static_cast<int>(n));
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    std::vector<std::vector<Form<K>>> minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Form<K>> row;
      row.reserve(n - 1);
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(a[r][cc]);
      minor.push_back(std::move(row));
    }
    Form<K> md = form_det(minor);
    if (md.is_zero()) continue;
    Form<K> term = a[0][c] * md;
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// Substitutions of an all-linear column on an n x (n+1) matrix are essential
// exactly when the determinant of the substituted coefficient matrix
// vanishes.  That determinant is computed exactly as a form in the scalar
// multipliers, homogenized by an extra variable carrying the column's own
// coefficients: the substitution space is covered completely and constancy
// is a statement about the polynomial, not about its values on the field.
template <class K>
SIOutcome<K> determinant_strong_inessentiality(const FormMatrix<K>& m, int j) {
  SIOutcome<K> out;
  out.method = "determinant";
  out.semantics = "closed-field";
  const int n = m.nvars();
  std::vector<int> partners;
  for (int h = 1; h <= m.cols(); ++h)
    if (h != j && m.col_degree(h) == m.col_degree(j)) partners.push_back(h);
  const std::size_t k = partners.size();
  const int mvars = static_cast<int>(k) + 1;
  std::vector<std::vector<Form<K>>> rows(
      m.rows(), std::vector<Form<K>>(n, Form<K>::zero(mvars, 1)));
  for (int i = 1; i <= m.rows(); ++i)
    for (int v = 0; v < n; ++v) {
      Exponents ex(m.nvars(), 0);
      ex[v] = 1;
      std::vector<K> lin(mvars, K(0));
      if (!m.entry(i, j).is_zero()) lin[0] = m.entry(i, j).coeff(ex);
      for (std::size_t s = 0; s < k; ++s) {
        const Form<K>& add = m.entry(i, partners[s]);
        if (!add.is_zero()) lin[1 + s] = add.coeff(ex);
      }
      rows[i - 1][v] = Form<K>::linear(lin);
    }
  const Form<K> det = form_det(rows);
  Exponents pure(mvars, 0);
  pure[0] = n;
  const K base = det.is_zero() ? K(0) : det.coeff(pure);
  if (FieldTraits<K>::is_zero(base))
    throw input_error("determinant test: column is not inessential");
  if (det.terms().size() == 1) {
    out.verdict = SIVerdict::StronglyInessential;
    out.detail = "determinant polynomial is the constant " +
                 FieldTraits<K>::to_string(base);
    return out;
  }
  // Not strongly inessential over the closure; look for a rational zero.
  std::vector<K> search;
  if constexpr (FieldTraits<K>::is_finite) {
    for (long long v = 0; v < Fp::modulus(); ++v) search.push_back(K(v));
  } else {
    for (long long v = -6; v <= 6; ++v) search.push_back(K(v));
  }
  std::vector<std::size_t> pos(k, 0);
  while (true) {
    std::vector<K> pt(mvars, K(0));
    pt[0] = K(1);
    for (std::size_t s = 0; s < k; ++s) pt[1 + s] = search[pos[s]];
    if (FieldTraits<K>::is_zero(det.evaluate(pt))) {
      Replacement<K> rep;
      rep.col = j;
      for (std::size_t s = 0; s < k; ++s)
        if (!FieldTraits<K>::is_zero(pt[1 + s]))
          rep.lambdas.emplace_back(partners[s],
                                   Form<K>::constant(m.nvars(), pt[1 + s]));
      rep.column = substituted_column(m, j, rep.lambdas);
      rep.certificate = "linear entries become dependent (determinant vanishes)";
      out.verdict = SIVerdict::NotStronglyInessential;
      out.detail = "determinant polynomial vanishes at a rational point";
      out.replacement = std::move(rep);
      return out;
    }
    std::size_t s = 0;
    while (s < k && pos[s] == search.size() - 1) pos[s++] = 0;
    if (s == k) break;
    ++pos[s];
  }
  out.verdict = SIVerdict::Unknown;
  out.detail = "determinant polynomial is nonconstant (not strongly inessential "
               "over the closure) but has no zero on the search set";
  return out;
}

}  // namespace detail

template <class K>
SIOutcome<K> is_strongly_inessential(const FormMatrix<K>& m, int j,
                                     const SIOptions& opt = SIOptions{});

namespace detail {

// ---------- structural certificate: three-variable chain lifts ----------

// Shape of the lifted chain: diagonal Y-powers, linear X superdiagonal,
// Z-divisible first column below row 1, pure Z-power second subdiagonal,
// nothing else.
template <class K>
bool lift_applicable(const FormMatrix<K>& m) {
  if (m.nvars() != 3 || m.rows() + 1 != m.cols() || m.rows() < 3) return false;
  auto pure_power = [](const Form<K>& f, int var) {
    if (f.is_zero() || f.terms().size() != 1) return false;
    const auto& e = f.terms().begin()->first;
    return e[var] == f.degree();
  };
  std::vector<Form<K>> zimg = {Form<K>::variable(3, 0), Form<K>::variable(3, 1),
                               Form<K>::zero(3, 1)};
  for (int i = 1; i <= m.rows(); ++i)
    for (int jj = 1; jj <= m.cols(); ++jj) {
      const Form<K>& e = m.entry(i, jj);
      if (jj == i) {
        if (!pure_power(e, 1)) return false;
      } else if (jj == i + 1) {
        if (e.is_zero() || e.degree() != 1 || !pure_power(e, 0)) return false;
      } else if (jj == 1 && i >= 2) {
        if (!e.is_zero() && !substitute_linear(e, zimg).is_zero()) return false;
      } else if (jj == i - 1 && i >= 3 && jj >= 2) {
        if (!pure_power(e, 2)) return false;
      } else if (!e.is_zero()) {
        return false;
      }
    }
  return true;
}

template <class K>
FormMatrix<K> drop_z(const FormMatrix<K>& m) {
  std::vector<Form<K>> img = {Form<K>::linear({K(1), K(0)}),
                              Form<K>::linear({K(0), K(1)}),
                              Form<K>::zero(2, 1)};
  FormMatrix<K> base(2, m.row_degrees(), m.col_degrees());
  for (int i = 1; i <= m.rows(); ++i)
    for (int j = 1; j <= m.cols(); ++j)
      if (!m.entry(i, j).is_zero()) {
        Form<K> f = substitute_linear(m.entry(i, j), img);
        if (!f.is_zero()) base.set(i, j, f);
      }
  return base;
}

// Column q of a lifted chain, 2 <= q <= rows-1 with a_1 < a_q: a common zero
// of any substituted column would need z = 0 (ruled out because the base
// column is strongly inessential) or z != 0, where the least nonzero
// multiplier index g >= 2 pins x = 0 (row g-1), then y = 0 (row g), and the
// Z-power entry in row g+1 evaluates to a nonzero scalar.
template <class K>
SIOutcome<K> lift_strong_inessentiality(const FormMatrix<K>& m, int j,
                                        const SIOptions& opt) {
  SIOutcome<K> out;
  out.method = "lift";
  out.semantics = "closed-field";
  FormMatrix<K> base = drop_z(m);
  if (!chain_applicable(base)) {
    out.detail = "base matrix is not a bidiagonal chain";
    return out;
  }
  SIOutcome<K> below = chain_strong_inessentiality(base, j);
  if (below.verdict != SIVerdict::StronglyInessential) {
    out.detail = "base column is not strongly inessential";
    return out;
  }
  out.verdict = SIVerdict::StronglyInessential;
  out.detail = "base chain column strongly inessential and every substitution "
               "is blocked off the hyperplane Z = 0";
  (void)opt;
  return out;
}

// ---------- enumerative strategies ----------

template <class K>
struct EnumerationPlan {
  std::vector<int> columns;         // participating columns, ascending
  std::vector<int> degrees;         // multiplier degree per column
  std::vector<std::size_t> widths;  // coefficient count per column
  std::size_t total = 0;
};

template <class K>
EnumerationPlan<K> enumeration_plan(const FormMatrix<K>& m, int j) {
  EnumerationPlan<K> plan;
  for (int h = 1; h <= m.cols(); ++h) {
    if (h == j || m.col_degree(h) < m.col_degree(j)) continue;
    const int d = m.col_degree(h) - m.col_degree(j);
    plan.columns.push_back(h);
    plan.degrees.push_back(d);
    plan.widths.push_back(monomial_count(m.nvars(), d));
    plan.total += plan.widths.back();
  }
  return plan;
}

template <class K>
std::vector<std::pair<int, Form<K>>> lambdas_from_flat(const FormMatrix<K>& m,
                                                       const EnumerationPlan<K>& plan,
                                                       const std::vector<K>& flat) {
  std::vector<std::pair<int, Form<K>>> lambdas;
  std::size_t at = 0;
  for (std::size_t s = 0; s < plan.columns.size(); ++s) {
    std::vector<K> coeffs(flat.begin() + at, flat.begin() + at + plan.widths[s]);
    at += plan.widths[s];
    Form<K> lam =
        Form<K>::from_coefficient_vector(m.nvars(), plan.degrees[s], coeffs);
    if (!lam.is_zero()) lambdas.emplace_back(plan.columns[s], lam);
  }
  return lambdas;
}

template <class K>
SIOutcome<K> exhaustive_strong_inessentiality(const FormMatrix<K>& m, int j,
                                              const SIOptions& opt) {
  static_assert(FieldTraits<K>::is_finite,
                "exhaustive enumeration needs a finite coefficient field");
  SIOutcome<K> out;
  out.method = "exhaustive";
  out.semantics = "field-relative";
  auto plan = enumeration_plan(m, j);
  if (plan.total > static_cast<std::size_t>(opt.coefficient_budget))
    throw budget_exceeded(
        "exhaustive enumeration needs " + std::to_string(plan.total) +
        " coefficients, over the budget of " +
        std::to_string(opt.coefficient_budget) +
        "; raise the budget or fall back to the montecarlo strategy");
  const long long p = Fp::modulus();
  std::vector<K> flat(plan.total, K(0));
  std::vector<long long> digits(plan.total, 0);
  bool saw_unknown = false;
  while (true) {
    auto lambdas = lambdas_from_flat(m, plan, flat);
    auto column = substituted_column(m, j, lambdas);
    auto nature = classify_entries(column, m.nvars());
    ++out.trials;
    if (nature.kind == ColumnKind::Essential) {
      Replacement<K> rep;
      rep.col = j;
      rep.lambdas = std::move(lambdas);
      rep.column = std::move(column);
      rep.certificate = nature.detail;
      out.verdict = SIVerdict::NotStronglyInessential;
      out.detail = "enumeration found an essential substitution";
      out.replacement = std::move(rep);
      return out;
    }
    if (nature.kind == ColumnKind::Unknown) saw_unknown = true;
    // Odometer: last slot fastest, so the lowest column's leading
    // coefficient is the most significant digit.
    std::size_t s = plan.total;
    while (s > 0 && digits[s - 1] == p - 1) {
      digits[s - 1] = 0;
      flat[s - 1] = K(0);
      --s;
    }
    if (s == 0) break;
    ++digits[s - 1];
    flat[s - 1] = K(digits[s - 1]);
  }
  if (saw_unknown) {
    out.verdict = SIVerdict::Unknown;
    out.detail = "some substitutions could not be classified";
    return out;
  }
  out.verdict = SIVerdict::StronglyInessential;
  out.detail = "all " + std::to_string(out.trials) +
               " substitutions over the field are inessential";
  return out;
}

template <class K>
SIOutcome<K> montecarlo_strong_inessentiality(const FormMatrix<K>& m, int j,
                                              const SIOptions& opt) {
  SIOutcome<K> out;
  out.method = "montecarlo";
  out.semantics = "field-relative";
  auto plan = enumeration_plan(m, j);
  std::mt19937_64 eng(mix_seed(opt.seed, static_cast<std::uint64_t>(j) * 1000003ULL));
  for (long long trial = 0; trial < opt.mc_trials; ++trial) {
    std::vector<K> flat(plan.total);
    for (auto& v : flat) {
      if constexpr (FieldTraits<K>::is_finite) {
        v = K(static_cast<long long>(eng() % static_cast<std::uint64_t>(Fp::modulus())));
      } else {
        v = K(static_cast<long long>(eng() % 7) - 3);
      }
    }
    auto lambdas = lambdas_from_flat(m, plan, flat);
    auto column = substituted_column(m, j, lambdas);
    auto nature = classify_entries(column, m.nvars());
    ++out.trials;
    if (nature.kind == ColumnKind::Essential) {
      Replacement<K> rep;
      rep.col = j;
      rep.lambdas = std::move(lambdas);
      rep.column = std::move(column);
      rep.certificate = nature.detail;
      out.verdict = SIVerdict::NotStronglyInessential;
      out.detail = "random search found an essential substitution";
      out.replacement = std::move(rep);
      return out;
    }
  }
  out.verdict = SIVerdict::Unknown;
  out.detail = "no essential substitution in " + std::to_string(out.trials) +
               " random trials (absence certifies nothing)";
  return out;
}

template <class K>
std::optional<SIOutcome<K>> structural_strong_inessentiality(const FormMatrix<K>& m,
                                                             int j,
                                                             const SIOptions& opt) {
  if (chain_applicable(m) && j >= 2 && m.col_degree(1) < m.col_degree(j))
    return chain_strong_inessentiality(m, j);
  if (lift_applicable(m) && j >= 2 && j <= m.rows() - 1 &&
      m.col_degree(1) < m.col_degree(j)) {
    SIOutcome<K> lifted = lift_strong_inessentiality(m, j, opt);
    if (lifted.verdict == SIVerdict::StronglyInessential) return lifted;
  }
  if (determinant_applicable(m, j)) return determinant_strong_inessentiality(m, j);
  return std::nullopt;
}

}  // namespace detail

// Strong-inessentiality decision for an inessential column.  The structural
// strategy applies exact certificates where the matrix shape supports them;
// exhaustive enumerates all substitutions over a finite field within the
// coefficient budget; montecarlo only ever disproves.
template <class K>
SIOutcome<K> is_strongly_inessential(const FormMatrix<K>& m, int j,
                                     const SIOptions& opt) {
  auto nature = classify_column(m, j);
  if (nature.kind != ColumnKind::Inessential)
    throw input_error("strong inessentiality asked for a column that is not "
                      "certified inessential");
  switch (opt.strategy) {
    case SIStrategy::Structural: {
      auto structural = detail::structural_strong_inessentiality(m, j, opt);
      // A certificate that could not decide (nonconstant determinant without
      // a rational zero) is not terminal: the enumerative fallback still owns
      // the field-relative question.
      if (structural && structural->verdict != SIVerdict::Unknown)
        return *structural;
      if (!opt.fallback) {
        if (structural) return *structural;
        SIOutcome<K> out;
        out.method = "structural";
        out.verdict = SIVerdict::Unknown;
        out.detail = "no structural certificate applies to this matrix shape";
        return out;
      }
      SIOutcome<K> fallback;
      if constexpr (FieldTraits<K>::is_finite) {
        try {
          fallback = detail::exhaustive_strong_inessentiality(m, j, opt);
        } catch (const budget_exceeded&) {
          fallback = detail::montecarlo_strong_inessentiality(m, j, opt);
        }
      } else {
        fallback = detail::montecarlo_strong_inessentiality(m, j, opt);
      }
      if (fallback.verdict == SIVerdict::Unknown && structural)
        return *structural;
      return fallback;
    }
    case SIStrategy::Exhaustive:
      if constexpr (FieldTraits<K>::is_finite) {
        return detail::exhaustive_strong_inessentiality(m, j, opt);
      } else {
        throw input_error("exhaustive strategy needs a finite coefficient field");
      }
    case SIStrategy::MonteCarlo:
      return detail::montecarlo_strong_inessentiality(m, j, opt);
  }
  throw input_error("unknown strategy");
}

template <class K>
struct ClassifyAllResult {
  std::vector<ColumnVerdict<K>> columns;
  std::vector<int> essential;
  std::vector<int> strongly_inessential;
  std::vector<int> inessential_not_si;
  std::vector<int> unknown;
  bool e_maximal = false;  // every inessential column certified s.i.
};

template <class K>
ClassifyAllResult<K> classify_all(const FormMatrix<K>& m,
                                  const SIOptions& opt = SIOptions{}) {
  ClassifyAllResult<K> result;
  bool all_certified = true;
  for (int j = 1; j <= m.cols(); ++j) {
    ColumnVerdict<K> v;
    v.col = j;
    auto nature = classify_column(m, j);
    if (nature.kind == ColumnKind::Essential) {
      v.kind = ColumnKind::Essential;
      v.method = nature.method;
      v.detail = nature.detail;
      result.essential.push_back(j);
    } else if (nature.kind == ColumnKind::Unknown) {
      v.kind = ColumnKind::Unknown;
      v.method = nature.method;
      v.detail = nature.detail;
      result.unknown.push_back(j);
      all_certified = false;
    } else {
      v.witness_degree = nature.witness_degree;
      auto si = is_strongly_inessential(m, j, opt);
      v.method = si.method;
      v.semantics = si.semantics;
      v.detail = si.detail;
      v.trials = si.trials;
      if (si.verdict == SIVerdict::StronglyInessential) {
        v.kind = ColumnKind::StronglyInessential;
        result.strongly_inessential.push_back(j);
      } else if (si.verdict == SIVerdict::NotStronglyInessential) {
        v.kind = ColumnKind::Inessential;
        v.replacement = si.replacement;
        result.inessential_not_si.push_back(j);
        all_certified = false;
      } else {
        v.kind = ColumnKind::Unknown;
        result.unknown.push_back(j);
        all_certified = false;
      }
    }
    result.columns.push_back(std::move(v));
  }
  result.e_maximal = all_certified;
  return result;
}

}  // namespace dubreil
