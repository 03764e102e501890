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

// Constructive side of the package, over two variables: a layered datum
// (beta0, gaps, level factorizations) determines an ideal with maximal
// generator count nu = alpha + 1, a canonical bidiagonal presentation
// matrix, closed-form counts of the strongly inessential generators, and
// the degree-p split into a low part and a high part.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "binary_gcd.hpp"
#include "essentiality.hpp"
#include "form.hpp"
#include "form_matrix.hpp"
#include "graded_ideal.hpp"
#include "linalg.hpp"
#include "monomial.hpp"

namespace dubreil {

// One linear factor of a level product, with its multiplicity.
template <class K>
struct LinearPower {
  Form<K> line;
  int mult = 1;
};

// Layered datum over two variables.  Level k contributes the product
// phi_k of its linear powers; the ideal is generated, for each i, by
// phi_{i+1}...phi_r times the full degree-beta_i piece, where the beta
// ladder is beta_i = beta_{i-1} + deg(phi_i) + gaps[i-1].
//
// Line constraints: u, the ls, and the distinct factor lines are pairwise
// non-proportional; a line may repeat across levels (that is the shared
// factor case) but not inside one level.
template <class K>
struct DubreilDatum {
  int beta0 = 0;
  std::vector<int> gaps;                             // t_1..t_r, each >= 1
  std::vector<std::vector<LinearPower<K>>> phis;     // levels 1..r
  Form<K> u;                                         // the corner line U
  std::vector<Form<K>> ls;                           // L_0..L_beta0

  int r() const { return static_cast<int>(phis.size()); }

  int level_degree(int k) const {  // deg phi_k, k in 1..r
    int s = 0;
    for (const auto& f : phis[k - 1]) s += f.mult;
    return s;
  }

  int delta() const {
    int s = 0;
    for (int k = 1; k <= r(); ++k) s += level_degree(k);
    return s;
  }

  int delta_prefix(int k) const {  // deg(phi_1...phi_k), k in 0..r
    int s = 0;
    for (int l = 1; l <= k; ++l) s += level_degree(l);
    return s;
  }

  int alpha0() const { return beta0 + delta(); }

  int alpha_at(int k) const {  // initial degree of level k's generators
    int a = alpha0();
    for (int l = 1; l <= k; ++l) a += gaps[l - 1];
    return a;
  }

  int beta_at(int k) const {  // the beta ladder, k in 0..r
    int b = beta0;
    for (int l = 1; l <= k; ++l) b += level_degree(l) + gaps[l - 1];
    return b;
  }

  // Number of distinct lines among all level factors.
  int distinct_lines() const {
    std::vector<Form<K>> seen;
    for (const auto& level : phis)
      for (const auto& f : level) {
        bool fresh = true;
        for (const auto& g : seen)
          if (f.line.proportional_to(g)) { fresh = false; break; }
        if (fresh) seen.push_back(f.line);
      }
    return static_cast<int>(seen.size());
  }

  // Factor lines in layer order, each repeated by its multiplicity.
  std::vector<Form<K>> slot_lines() const {
    std::vector<Form<K>> d;
    for (const auto& level : phis)
      for (const auto& f : level)
        for (int j = 0; j < f.mult; ++j) d.push_back(f.line);
    return d;
  }

  // Column degrees of the canonical matrix: alpha_0 repeated beta0 + 1
  // times, then alpha_k repeated deg(phi_k) times.
  std::vector<int> a_vector() const {
    std::vector<int> a(static_cast<std::size_t>(beta0) + 1, alpha0());
    for (int k = 1; k <= r(); ++k) {
      const int ak = alpha_at(k);
      for (int j = 0; j < level_degree(k); ++j) a.push_back(ak);
    }
    return a;
  }

  std::vector<int> b_vector() const {  // b_i = a_{i+1} + 1
    std::vector<int> a = a_vector(), b;
    for (std::size_t i = 1; i < a.size(); ++i) b.push_back(a[i] + 1);
    return b;
  }

  // Product of all factors at levels strictly above k, with multiplicity.
  Form<K> tail_product(int k) const {
    Form<K> acc = Form<K>::constant(2, K(1));
    for (int l = k + 1; l <= r(); ++l)
      for (const auto& f : phis[l - 1]) acc = multiply(acc, f.line.pow(f.mult));
    return acc;
  }

  void validate() const {
    if (beta0 < 0) throw input_error("datum: beta0 must be nonnegative");
    if (gaps.size() != phis.size())
      throw input_error("datum: one gap per level is required");
    if (static_cast<int>(ls.size()) != beta0 + 1)
      throw input_error("datum: expected beta0 + 1 chain lines");
    if (beta0 + delta() < 1) throw input_error("datum: empty datum");
    auto check_line = [](const Form<K>& f, const char* what) {
      if (f.nvars() != 2 || f.degree() != 1 || f.is_zero())
        throw input_error(std::string("datum: ") + what +
                          " must be a nonzero binary linear form");
    };
    check_line(u, "u");
    for (const auto& l : ls) check_line(l, "chain line");
    for (int k = 1; k <= r(); ++k) {
      if (gaps[k - 1] < 1) throw input_error("datum: gaps must be positive");
      if (phis[k - 1].empty()) throw input_error("datum: empty level");
      for (const auto& f : phis[k - 1]) {
        check_line(f.line, "factor");
        if (f.mult < 1) throw input_error("datum: factor multiplicity must be positive");
      }
      for (std::size_t i = 0; i < phis[k - 1].size(); ++i)
        for (std::size_t j = i + 1; j < phis[k - 1].size(); ++j)
          if (phis[k - 1][i].line.proportional_to(phis[k - 1][j].line))
            throw input_error("datum: repeated line inside one level");
    }
    // u, the chain lines, and every factor line are pairwise independent;
    // only factor lines of different levels may coincide.
    for (const auto& l : ls)
      if (l.proportional_to(u))
        throw input_error("datum: chain line proportional to u");
    for (std::size_t i = 0; i < ls.size(); ++i)
      for (std::size_t j = i + 1; j < ls.size(); ++j)
        if (ls[i].proportional_to(ls[j]))
          throw input_error("datum: repeated chain line");
    for (const auto& level : phis)
      for (const auto& f : level) {
        if (f.line.proportional_to(u))
          throw input_error("datum: factor proportional to u");
        for (const auto& l : ls)
          if (f.line.proportional_to(l))
            throw input_error("datum: factor proportional to a chain line");
      }
  }
};

namespace detail {

// Diagonal and superdiagonal of the canonical matrix.  The diagonal entry
// after a slot whose line reappears later degenerates to a power of u; at
// the last slot of a non-final level the power picks up the next gap.
template <class K>
struct BidiagonalData {
  std::vector<Form<K>> diag;   // c_1..c_alpha
  std::vector<Form<K>> super;  // d_1..d_alpha (stored without the sign)
};

template <class K>
BidiagonalData<K> canonical_bidiagonal(const DubreilDatum<K>& d) {
  d.validate();
  const int alpha = d.alpha0();
  const int delta = d.delta();
  const auto slots = d.slot_lines();
  BidiagonalData<K> out;
  out.diag.reserve(alpha);
  out.super.reserve(alpha);
  for (int i = 1; i <= d.beta0; ++i) {
    out.diag.push_back(d.ls[i - 1]);
    out.super.push_back(d.ls[i]);
  }
  if (d.r() == 0) return out;
  const int t1 = d.gaps[0];
  out.diag.push_back(d.beta0 >= 1 ? multiply(d.ls[d.beta0], d.u.pow(t1))
                                  : d.u.pow(t1 + 1));
  out.super.push_back(slots[0]);
  for (int q = 1; q <= delta - 1; ++q) {
    const Form<K>& w = slots[q - 1];
    bool reappears = false;
    for (int qq = q + 1; qq <= delta; ++qq)
      if (slots[qq - 1].proportional_to(w)) { reappears = true; break; }
    int e = 0;
    for (int k = 1; k <= d.r() - 1; ++k)
      if (q == d.delta_prefix(k)) { e = d.gaps[k]; break; }
    out.diag.push_back(reappears ? d.u.pow(1 + e) : multiply(w, d.u.pow(e)));
    out.super.push_back(slots[q]);
  }
  return out;
}

template <class K>
FormMatrix<K> matrix_from_bidiagonal(const DubreilDatum<K>& d,
                                     const BidiagonalData<K>& bd) {
  FormMatrix<K> m(2, d.b_vector(), d.a_vector());
  for (int i = 1; i <= m.rows(); ++i) {
    m.set(i, i, bd.diag[i - 1]);
    m.set(i, i + 1, bd.super[i - 1] * Form<K>::constant(2, K(-1)));
  }
  return m;
}

// Maximal minors of an upper bidiagonal matrix, up to one common sign:
// the j-th minor is the product of the first j - 1 diagonal entries and
// the last alpha - j + 1 superdiagonal entries.
template <class K>
std::vector<Form<K>> bidiagonal_minors(const BidiagonalData<K>& bd) {
  const int alpha = static_cast<int>(bd.diag.size());
  std::vector<Form<K>> pre(alpha + 1), suf(alpha + 2);
  pre[0] = Form<K>::constant(2, K(1));
  for (int i = 1; i <= alpha; ++i) pre[i] = multiply(pre[i - 1], bd.diag[i - 1]);
  suf[alpha + 1] = Form<K>::constant(2, K(1));
  for (int i = alpha; i >= 1; --i) suf[i] = multiply(suf[i + 1], bd.super[i - 1]);
  std::vector<Form<K>> gens;
  gens.reserve(alpha + 1);
  for (int j = 1; j <= alpha + 1; ++j) gens.push_back(multiply(pre[j - 1], suf[j]));
  return gens;
}

}  // namespace detail

// Generators carried by the canonical matrix, one per column, listed by
// ascending degree.
template <class K>
std::vector<Form<K>> canonical_generators(const DubreilDatum<K>& d) {
  return detail::bidiagonal_minors(detail::canonical_bidiagonal(d));
}

// The canonical presentation matrix: upper bidiagonal of shape
// alpha x (alpha + 1) with the chain lines first, the corner entry
// carrying the first gap, and the layered factor lines on the
// superdiagonal.
template <class K>
FormMatrix<K> canonical_matrix(const DubreilDatum<K>& d) {
  auto bd = detail::canonical_bidiagonal(d);
  FormMatrix<K> m = detail::matrix_from_bidiagonal(d, bd);
  if (!verify_syzygies(m, detail::bidiagonal_minors(bd)))
    throw theorem_error("canonical matrix: syzygy check failed");
  return m;
}

// Spanning set realizing the layered sum: for each i = 0..r, the tail
// product phi_{i+1}...phi_r times every monomial of degree beta_i.
template <class K>
std::vector<Form<K>> spanning_forms(const DubreilDatum<K>& d) {
  d.validate();
  std::vector<Form<K>> out;
  for (int i = 0; i <= d.r(); ++i) {
    const Form<K> tail = d.tail_product(i);
    for (const auto& e : monomial_basis(2, d.beta_at(i)))
      out.push_back(multiply(Form<K>::monomial(2, e, K(1)), tail));
  }
  return out;
}

template <class K>
GradedIdeal<K> build_ideal(const DubreilDatum<K>& d) {
  return GradedIdeal<K>(2, spanning_forms(d));
}

// ---------------------------------------------------------------------------
// Complement decomposition: S_b = phi * S_t (+) T, with T spanned by the
// F_ij below, b = t + sum of the multiplicities.

template <class K>
struct SbDecomposition {
  int t = 0;
  int b = 0;
  Form<K> phi;
  std::vector<Form<K>> cofactors;            // C_1..C_v
  std::vector<std::vector<Form<K>>> blocks;  // blocks[i-1][j-1] = F_ij
  std::vector<Form<K>> flat;                 // all F_ij in block order
};

// Decomposes the degree-b piece along phi = prod H_i^{mu_i}.  The default
// cofactors are C_1 = u^{t+1} and C_i = H_1...H_{i-1} u^{nu_i}; custom
// cofactors must have degree t + mu_1 + ... + mu_{i-1} + 1 and share no
// factor with H_i.
template <class K>
SbDecomposition<K> decompose_Sb(const std::vector<LinearPower<K>>& factors,
                                int t, const Form<K>& u,
                                const std::optional<std::vector<Form<K>>>&
                                    custom_cofactors = std::nullopt) {
  if (t < 0) throw input_error("decompose: the gap t must be nonnegative");
  if (u.nvars() != 2 || u.degree() != 1 || u.is_zero())
    throw input_error("decompose: u must be a nonzero binary linear form");
  const int v = static_cast<int>(factors.size());
  int m = 0;
  for (const auto& f : factors) {
    if (f.line.nvars() != 2 || f.line.degree() != 1 || f.line.is_zero())
      throw input_error("decompose: factors must be nonzero binary linear forms");
    if (f.mult < 1) throw input_error("decompose: multiplicities must be positive");
    if (f.line.proportional_to(u))
      throw input_error("decompose: a factor is proportional to u");
    m += f.mult;
  }
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j)
      if (factors[i].line.proportional_to(factors[j].line))
        throw input_error("decompose: repeated factor line");

  SbDecomposition<K> out;
  out.t = t;
  out.b = t + m;
  out.phi = Form<K>::constant(2, K(1));
  for (const auto& f : factors) out.phi = multiply(out.phi, f.line.pow(f.mult));
  if (v == 0) return out;

  std::vector<int> prefix(v, 0);  // mu_1 + ... + mu_{i-1}
  for (int i = 1; i < v; ++i) prefix[i] = prefix[i - 1] + factors[i - 1].mult;

  if (custom_cofactors) {
    if (static_cast<int>(custom_cofactors->size()) != v)
      throw input_error("decompose: expected one cofactor per factor");
    for (int i = 0; i < v; ++i) {
      const Form<K>& c = (*custom_cofactors)[i];
      if (c.is_zero() || c.nvars() != 2 || c.degree() != t + prefix[i] + 1)
        throw input_error("decompose: cofactor degree mismatch");
      if (gcd_binary(c, factors[i].line).degree() != 0)
        throw input_error("decompose: cofactor shares a factor with its line");
    }
    out.cofactors = *custom_cofactors;
  } else {
    for (int i = 0; i < v; ++i) {
      if (i == 0) {
        out.cofactors.push_back(u.pow(t + 1));
      } else {
        Form<K> c = u.pow(t + prefix[i] - i + 1);
        for (int l = 0; l < i; ++l) c = multiply(c, factors[l].line);
        out.cofactors.push_back(c);
      }
    }
  }

  for (int i = 1; i <= v; ++i) {
    std::vector<Form<K>> row;
    Form<K> high = Form<K>::constant(2, K(1));  // H_{i+1}^{mu} ... H_v^{mu}
    for (int l = i + 1; l <= v; ++l)
      high = multiply(high, factors[l - 1].line.pow(factors[l - 1].mult));
    for (int j = 1; j <= factors[i - 1].mult; ++j) {
      Form<K> a = multiply(factors[i - 1].line.pow(factors[i - 1].mult - j), high);
      a = multiply(a, u.pow(j - 1));
      row.push_back(multiply(a, out.cofactors[i - 1]));
    }
    for (const auto& f : row) out.flat.push_back(f);
    out.blocks.push_back(std::move(row));
  }

  // The direct sum test: phi * S_t plus the F_ij must fill S_b exactly.
  std::vector<Form<K>> span;
  for (const auto& e : monomial_basis(2, t))
    span.push_back(multiply(Form<K>::monomial(2, e, K(1)), out.phi));
  for (const auto& f : out.flat) span.push_back(f);
  if (span_dimension(span) != static_cast<std::size_t>(out.b + 1))
    throw theorem_error("decompose: complement does not fill the piece");
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form count of the strongly inessential generators.

struct SICount {
  int total = 0;                 // delta - (number of distinct lines)
  std::vector<int> per_level;    // level k contributes sum (mu - 1) + tau_k
  std::map<int, int> per_degree; // keyed by the level's generator degree
};

template <class K>
SICount si_count(const DubreilDatum<K>& d) {
  d.validate();
  SICount out;
  out.total = d.delta() - d.distinct_lines();
  for (int k = 1; k <= d.r(); ++k) {
    int level = 0;
    for (const auto& f : d.phis[k - 1]) {
      level += f.mult - 1;
      bool later = false;
      for (int l = k + 1; l <= d.r() && !later; ++l)
        for (const auto& g : d.phis[l - 1])
          if (g.line.proportional_to(f.line)) { later = true; break; }
      if (later) ++level;
    }
    out.per_level.push_back(level);
    out.per_degree[d.alpha_at(k)] = level;
  }
  int sum = 0;
  for (int x : out.per_level) sum += x;
  if (sum != out.total) throw theorem_error("si count: level sum mismatch");
  return out;
}

// ---------------------------------------------------------------------------
// Variant matrices.  Each keeps the generator degrees of the canonical
// matrix but changes selected entries.

// Single level, no chain: turning the diagonal entry after the last slot
// of the k-th factor into u trades one strong certificate away; the
// column after that slot becomes inessential but not strongly so.
template <class K>
FormMatrix<K> variant_drop_factor(const DubreilDatum<K>& d, int k) {
  d.validate();
  if (d.r() != 1 || d.beta0 != 0)
    throw input_error("variant: needs a single level and no chain");
  const int v = static_cast<int>(d.phis[0].size());
  if (k < 1 || k >= v)
    throw input_error("variant: the dropped factor must not be the last");
  int pos = 0;
  for (int l = 1; l <= k; ++l) pos += d.phis[0][l - 1].mult;
  auto bd = detail::canonical_bidiagonal(d);
  bd.diag[pos] = d.u;  // entry (pos + 1, pos + 1)
  return detail::matrix_from_bidiagonal(d, bd);
}

// No chain: the corner power of u may be replaced by any form of the same
// degree that is coprime to the full factor product; the classification
// of every column survives.
template <class K>
FormMatrix<K> variant_corner(const DubreilDatum<K>& d, const Form<K>& eta) {
  d.validate();
  if (d.beta0 != 0) throw input_error("variant: needs an empty chain");
  if (d.r() < 1) throw input_error("variant: needs at least one level");
  if (eta.is_zero() || eta.nvars() != 2 || eta.degree() != d.gaps[0] + 1)
    throw input_error("variant: corner degree mismatch");
  Form<K> phi = d.tail_product(0);
  if (gcd_binary(eta, phi).degree() != 0)
    throw input_error("variant: corner must be coprime to the factor product");
  auto bd = detail::canonical_bidiagonal(d);
  bd.diag[0] = eta;
  return detail::matrix_from_bidiagonal(d, bd);
}

// Single level, no chain: the factor lines may be laid on the
// superdiagonal in any order realizing the multiplicities; order[q] names
// the factor (1-based) in slot q.
template <class K>
FormMatrix<K> variant_permuted(const DubreilDatum<K>& d,
                               const std::vector<int>& order) {
  d.validate();
  if (d.r() != 1 || d.beta0 != 0)
    throw input_error("variant: needs a single level and no chain");
  const int v = static_cast<int>(d.phis[0].size());
  const int delta = d.delta();
  if (static_cast<int>(order.size()) != delta)
    throw input_error("variant: order must cover every slot");
  std::vector<int> count(v, 0);
  for (int idx : order) {
    if (idx < 1 || idx > v) throw input_error("variant: factor index out of range");
    ++count[idx - 1];
  }
  for (int i = 0; i < v; ++i)
    if (count[i] != d.phis[0][i].mult)
      throw input_error("variant: order does not realize the multiplicities");

  std::vector<Form<K>> slots;
  for (int idx : order) slots.push_back(d.phis[0][idx - 1].line);
  detail::BidiagonalData<K> bd;
  bd.diag.push_back(d.u.pow(d.gaps[0] + 1));
  bd.super.push_back(slots[0]);
  for (int q = 1; q <= delta - 1; ++q) {
    bool reappears = false;
    for (int qq = q + 1; qq <= delta; ++qq)
      if (slots[qq - 1].proportional_to(slots[q - 1])) { reappears = true; break; }
    bd.diag.push_back(reappears ? d.u : slots[q - 1]);
    bd.super.push_back(slots[q]);
  }
  return detail::matrix_from_bidiagonal(d, bd);
}

// ---------------------------------------------------------------------------
// Prescribing the strongly inessential counts: given strictly increasing
// degrees d_1 < ... < d_s and positive counts r_1..r_s, a datum with
// exactly r_i strongly inessential generators in degree d_i exists iff
// d_1 > r_1 + ... + r_s + 1, and a single repeated line realizes it in
// the least possible initial degree.

template <class K>
DubreilDatum<K> prescribe(const std::vector<int>& degrees,
                          const std::vector<int>& counts) {
  const int s = static_cast<int>(degrees.size());
  if (s < 1 || counts.size() != degrees.size())
    throw input_error("prescribe: need matching nonempty degree and count lists");
  int m = 0;
  for (int c : counts) {
    if (c < 1) throw input_error("prescribe: counts must be positive");
    m += c;
  }
  for (int i = 1; i < s; ++i)
    if (degrees[i] <= degrees[i - 1])
      throw input_error("prescribe: degrees must be strictly increasing");
  if (degrees[0] <= m + 1)
    throw input_error("prescribe: infeasible, the first degree must exceed the total count plus one");

  const Form<K> h = Form<K>::variable(2, 0);
  const Form<K> u = Form<K>::variable(2, 1);
  const Form<K> l0 = Form<K>::linear({K(1), K(1)});
  DubreilDatum<K> d;
  d.beta0 = 0;
  d.u = u;
  d.ls = {l0};
  for (int j = 0; j < s; ++j) {
    const int mult = counts[j] + (j == s - 1 ? 1 : 0);
    d.phis.push_back({LinearPower<K>{h, mult}});
    d.gaps.push_back(j == 0 ? degrees[0] - (m + 1)
                            : degrees[j] - degrees[j - 1]);
  }
  d.validate();
  return d;
}

// Further data realizing the same counts, obtained by widening the last
// level with extra simple lines; each keeps every count intact while
// raising the initial degree by one.  Over a finite field the supply of
// fresh lines bounds how many alternatives exist.
template <class K>
std::vector<DubreilDatum<K>> prescribe_alternatives(
    const std::vector<int>& degrees, const std::vector<int>& counts,
    int max_count) {
  DubreilDatum<K> base = prescribe<K>(degrees, counts);
  int m = 0;
  for (int c : counts) m += c;
  int room = degrees[0] - m - 2;  // extra lines still allowed by gap >= 1
  if (max_count < room) room = max_count;
  if constexpr (FieldTraits<K>::is_finite) {
    const int supply = static_cast<int>(K::modulus()) - 2;
    if (room > supply) room = supply;
  }
  std::vector<DubreilDatum<K>> out;
  for (int w = 1; w <= room; ++w) {
    DubreilDatum<K> d = base;
    d.gaps[0] -= w;
    for (int i = 1; i <= w; ++i)
      d.phis.back().push_back(LinearPower<K>{Form<K>::linear({K(1), K(i + 1)}), 1});
    d.validate();
    out.push_back(std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Degree-p split.  For an ideal of height two with maximal generator
// count at p + 1, dividing the degree-p piece by its common factor D
// gives the low part, and D together with the generators above p gives
// the high part; both parts are again of height two and the presentation
// matrix splits along the same line.

template <class K>
struct SplitPair {
  int p = 0;
  Form<K> common;  // D, the common factor of the degree-p piece
  GradedIdeal<K> low;
  GradedIdeal<K> high;
  std::optional<FormMatrix<K>> low_matrix;
  std::optional<FormMatrix<K>> high_matrix;
  std::optional<Form<K>> extracted;  // det of the lower-right block
};

template <class K>
SplitPair<K> split(const GradedIdeal<K>& ideal, int p,
                   const std::optional<FormMatrix<K>>& matrix = std::nullopt,
                   int horizon = -1) {
  if (ideal.nvars() != 2) throw input_error("split: expects two variables");
  if (horizon < 0) horizon = std::max(ideal.default_horizon(), p + 4);
  const IdealProfile prof = profile(ideal, horizon);
  if (p < prof.alpha)
    throw input_error("split: the degree must reach the initial degree");
  if (ideal.nu(p + 1) != prof.gamma[p] - prof.gamma[p + 1])
    throw theorem_error("split: generator count at p + 1 is not maximal");

  const auto gcd = ideal.piece_gcd(p);
  if (!gcd || gcd->degree() < 1)
    throw input_error("split: no common factor at the split degree");
  const Form<K> d = *gcd;

  // The common factor of the piece divides every minimal generator of
  // degree at most p; those quotients generate the low part.
  std::vector<Form<K>> low_gens;
  std::vector<Form<K>> high_gens{d};
  for (const auto& g : ideal.minimal_generators()) {
    if (g.degree() <= p) {
      auto q = try_divide(g, d);
      if (!q) throw theorem_error("split: a low generator escapes the common factor");
      low_gens.push_back(*q);
    } else {
      high_gens.push_back(g);
    }
  }
  if (high_gens.size() < 2)
    throw input_error("split: degenerate, no generators above the degree");

  SplitPair<K> out{p, d, GradedIdeal<K>(2, std::move(low_gens)),
                   GradedIdeal<K>(2, std::move(high_gens)), std::nullopt,
                   std::nullopt, std::nullopt};
  try {
    profile(out.low, out.low.default_horizon());
    profile(out.high, out.high.default_horizon());
  } catch (const input_error&) {
    throw theorem_error("split: a part lost height two");
  }

  if (matrix) {
    if (matrix->nvars() != 2 || matrix->rows() + 1 != matrix->cols())
      throw input_error("split: matrix shape mismatch");
    const auto& a = matrix->col_degrees();
    for (std::size_t i = 1; i < a.size(); ++i)
      if (a[i] < a[i - 1])
        throw input_error("split: matrix columns must be sorted by degree");
    if (multiplicity_from_degrees(*matrix) != prof.e)
      throw input_error("split: matrix multiplicity differs from the ideal");
    for (const auto& g : matrix->signed_minors())
      if (!ideal.contains(g))
        throw input_error("split: matrix minors do not lie in the ideal");
    int m = 0;
    for (int j = 1; j <= matrix->cols(); ++j)
      if (matrix->col_degree(j) <= p) ++m;
    if (m < 1 || m > matrix->rows())
      throw input_error("split: the degree cuts off no column block");
    MatrixSplit<K> ms = split_matrix(*matrix, m);
    if (!ms.extracted.proportional_to(d))
      throw theorem_error("split: extracted factor differs from the piece gcd");
    out.low_matrix = std::move(ms.upper);
    out.high_matrix = std::move(ms.inherited);
    out.extracted = std::move(ms.extracted);
  }
  return out;
}

template <class K>
SplitPair<K> split(const GradedIdeal<K>& ideal, int p,
                   const FormMatrix<K>& matrix, int horizon = -1) {
  return split(ideal, p, std::optional<FormMatrix<K>>(matrix), horizon);
}

// ---------------------------------------------------------------------------
// Transfer check: strong inessentiality passes from the parts to the
// whole.  A strongly inessential column of the low matrix must be
// strongly inessential in the full matrix (the converse can fail and is
// reported as an observation); for the high matrix, the columns beyond
// the extracted one match the tail columns of the full matrix exactly.

template <class K>
struct TransferRecord {
  std::string part;     // "low" or "high"
  int column_part = 0;  // column in the part matrix
  int column_full = 0;  // corresponding column of the full matrix
  ColumnKind kind_part = ColumnKind::Unknown;
  ColumnKind kind_full = ColumnKind::Unknown;
  std::string status;   // "consistent", "observation", or "skipped"
};

template <class K>
struct TransferReport {
  ClassifyAllResult<K> full;
  ClassifyAllResult<K> low;
  ClassifyAllResult<K> high;
  std::vector<TransferRecord<K>> records;
  std::vector<std::string> notes;
};

namespace detail {

inline bool certified(ColumnKind k) { return k != ColumnKind::Unknown; }

}  // namespace detail

template <class K>
TransferReport<K> check_transfer(const FormMatrix<K>& m, const SplitPair<K>& sp,
                                 const SIOptions& opt = {}) {
  if (!sp.low_matrix || !sp.high_matrix)
    throw input_error("transfer: the split carries no matrices");
  TransferReport<K> rep{classify_all(m, opt), classify_all(*sp.low_matrix, opt),
                        classify_all(*sp.high_matrix, opt), {}, {}};
  const int cut = sp.low_matrix->cols();

  for (int j = 1; j <= cut; ++j) {
    const ColumnKind kp = rep.low.columns[j - 1].kind;
    const ColumnKind kf = rep.full.columns[j - 1].kind;
    TransferRecord<K> rec{"low", j, j, kp, kf, "skipped"};
    if (kp == ColumnKind::StronglyInessential) {
      if (!detail::certified(kf)) {
        rep.notes.push_back("low column " + std::to_string(j) +
                            ": full matrix verdict unknown, skipped");
      } else if (kf == ColumnKind::StronglyInessential) {
        rec.status = "consistent";
      } else {
        throw theorem_error("transfer: low column " + std::to_string(j) +
                            " is strongly inessential but the full column is not");
      }
    } else if (kf == ColumnKind::StronglyInessential && detail::certified(kp)) {
      rec.status = "observation";
      rep.notes.push_back("full column " + std::to_string(j) +
                          " is strongly inessential but the low column is not");
    } else if (!detail::certified(kp) || !detail::certified(kf)) {
      rep.notes.push_back("column " + std::to_string(j) +
                          ": verdict unknown on one side, skipped");
    } else {
      rec.status = "consistent";
    }
    rep.records.push_back(std::move(rec));
  }

  for (int i = 1; i <= sp.high_matrix->cols() - 1; ++i) {
    const int jf = cut + i;
    const ColumnKind kp = rep.high.columns[i].kind;  // column 1 + i
    const ColumnKind kf = rep.full.columns[jf - 1].kind;
    TransferRecord<K> rec{"high", 1 + i, jf, kp, kf, "skipped"};
    if (!detail::certified(kp) || !detail::certified(kf)) {
      rep.notes.push_back("high column " + std::to_string(1 + i) +
                          ": verdict unknown on one side, skipped");
    } else {
      const bool sp_si = kp == ColumnKind::StronglyInessential;
      const bool sf_si = kf == ColumnKind::StronglyInessential;
      if (sp_si != sf_si)
        throw theorem_error("transfer: high column " + std::to_string(1 + i) +
                            " disagrees with full column " + std::to_string(jf));
      rec.status = "consistent";
    }
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

}  // namespace dubreil
