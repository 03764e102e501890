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
#include <string>
#include <vector>

#include "form.hpp"
#include "graded_ideal.hpp"

namespace dubreil {

// Matrix of forms with graded row and column degrees: a nonzero entry at
// (i, j) is homogeneous of degree row_degree(i) - col_degree(j).
// Indices are 1-based in the public interface, matching the reports.
template <class K>
class FormMatrix {
 public:
  FormMatrix(int nvars, std::vector<int> row_degrees, std::vector<int> col_degrees)
      : nvars_(nvars),
        rows_(static_cast<int>(row_degrees.size())),
        cols_(static_cast<int>(col_degrees.size())),
        row_deg_(std::move(row_degrees)),
        col_deg_(std::move(col_degrees)) {
    if (rows_ < 1 || cols_ < 1) throw input_error("matrix: empty shape");
    entries_.assign(rows_, {});
    for (int i = 0; i < rows_; ++i) {
      entries_[i].reserve(cols_);
      for (int j = 0; j < cols_; ++j)
        entries_[i].push_back(
            Form<K>::zero(nvars_, std::max(0, row_deg_[i] - col_deg_[j])));
    }
  }

  int nvars() const { return nvars_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int row_degree(int i) const { return row_deg_[check_row(i) - 1]; }
  int col_degree(int j) const { return col_deg_[check_col(j) - 1]; }
  const std::vector<int>& row_degrees() const { return row_deg_; }
  const std::vector<int>& col_degrees() const { return col_deg_; }

  const Form<K>& entry(int i, int j) const {
    return entries_[check_row(i) - 1][check_col(j) - 1];
  }

  void set(int i, int j, const Form<K>& f) {
    check_row(i);
    check_col(j);
    if (f.nvars() != nvars_) throw input_error("matrix: entry arity mismatch");
    if (!f.is_zero() && f.degree() != row_deg_[i - 1] - col_deg_[j - 1])
      throw input_error("matrix: entry degree violates the degree data at (" +
                        std::to_string(i) + ", " + std::to_string(j) + ")");
    entries_[i - 1][j - 1] = f;
  }

  std::vector<Form<K>> column(int j) const {
    check_col(j);
    std::vector<Form<K>> out;
    out.reserve(rows_);
    for (int i = 1; i <= rows_; ++i) out.push_back(entry(i, j));
    return out;
  }

  void replace_column(int j, const std::vector<Form<K>>& col) {
    check_col(j);
    if (static_cast<int>(col.size()) != rows_)
      throw input_error("matrix: column length mismatch");
    for (int i = 1; i <= rows_; ++i) set(i, j, col[i - 1]);
  }

  // Determinant of the submatrix on 1-based index lists.
  Form<K> subdeterminant(const std::vector<int>& row_idx,
                         const std::vector<int>& col_idx) const {
    if (row_idx.size() != col_idx.size())
      throw input_error("matrix: non-square determinant request");
    int expected = 0;
    for (int i : row_idx) expected += row_deg_[check_row(i) - 1];
    for (int j : col_idx) expected -= col_deg_[check_col(j) - 1];
    Form<K> acc = det_rec(row_idx, col_idx);
    if (acc.is_zero()) return Form<K>::zero(nvars_, std::max(0, expected));
    return acc;
  }

  // Maximal minor deleting column j (requires rows + 1 == cols).
  Form<K> minor_deleting(int j) const {
    require_resolution_shape();
    check_col(j);
    std::vector<int> ri(rows_), ci;
    for (int i = 0; i < rows_; ++i) ri[i] = i + 1;
    for (int c = 1; c <= cols_; ++c)
      if (c != j) ci.push_back(c);
    return subdeterminant(ri, ci);
  }

  // Signed maximal minors ((-1)^(j+1) det of the deletion), the generators
  // carved out by the resolution; M * minors == 0 row by row.
  std::vector<Form<K>> signed_minors() const {
    require_resolution_shape();
    std::vector<Form<K>> out;
    out.reserve(cols_);
    for (int j = 1; j <= cols_; ++j) {
      Form<K> m = minor_deleting(j);
      out.push_back(j % 2 == 1 ? m : -m);
    }
    return out;
  }

 private:
  Form<K> det_rec(std::vector<int> row_idx, std::vector<int> col_idx) const {
    const std::size_t n = row_idx.size();
    if (n == 0) return Form<K>::constant(nvars_, K(1));
    if (n == 1) return entry(row_idx[0], col_idx[0]);
    // Expand along the sparsest column of the active block.
    std::size_t best = 0, best_nonzero = n + 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t nz = 0;
      for (std::size_t r = 0; r < n; ++r)
        if (!entry(row_idx[r], col_idx[c]).is_zero()) ++nz;
      if (nz < best_nonzero) {
        best_nonzero = nz;
        best = c;
      }
    }
    if (best_nonzero == 0) return Form<K>::zero(nvars_, 0);
    std::vector<int> sub_cols;
    for (std::size_t c = 0; c < n; ++c)
      if (c != best) sub_cols.push_back(col_idx[c]);
    Form<K> acc = Form<K>::zero(nvars_, 0);
    bool first = true;
    for (std::size_t r = 0; r < n; ++r) {
      const Form<K>& e = entry(row_idx[r], col_idx[best]);
      if (e.is_zero()) continue;
      std::vector<int> sub_rows;
      for (std::size_t rr = 0; rr < n; ++rr)
        if (rr != r) sub_rows.push_back(row_idx[rr]);
      Form<K> sub = det_rec(sub_rows, sub_cols);
      if (sub.is_zero()) continue;
      Form<K> term = e * sub;
      if ((r + best) % 2 == 1) term = -term;
      if (first) {
        acc = term;
        first = false;
      } else {
        acc = acc + term;
      }
    }
    return acc;
  }

  void require_resolution_shape() const {
    if (rows_ + 1 != cols_)
      throw input_error("matrix: expected one more column than rows");
  }

  int check_row(int i) const {
    if (i < 1 || i > rows_) throw input_error("matrix: row index out of range");
    return i;
  }
  int check_col(int j) const {
    if (j < 1 || j > cols_) throw input_error("matrix: column index out of range");
    return j;
  }

  int nvars_, rows_, cols_;
  std::vector<int> row_deg_, col_deg_;
  std::vector<std::vector<Form<K>>> entries_;
};

// Checks M * gens == 0 exactly, after checking the degree alignment.
template <class K>
bool verify_syzygies(const FormMatrix<K>& m, const std::vector<Form<K>>& gens) {
  if (static_cast<int>(gens.size()) != m.cols())
    throw input_error("syzygies: generator count mismatch");
  for (int i = 1; i <= m.rows(); ++i) {
    Form<K> acc;
    bool first = true;
    for (int j = 1; j <= m.cols(); ++j) {
      if (m.entry(i, j).is_zero() || gens[j - 1].is_zero()) continue;
      Form<K> term = m.entry(i, j) * gens[j - 1];
      if (first) {
        acc = term;
        first = false;
      } else {
        if (acc.degree() != term.degree())
          throw input_error("syzygies: generator degrees inconsistent");
        acc = acc + term;
      }
    }
    if (!first && !acc.is_zero()) return false;
  }
  return true;
}

// Multiplicity from the degree data alone: (sum b^2 - sum a^2) / 2.
inline long long multiplicity_from_degrees(const std::vector<int>& col_degrees,
                                           const std::vector<int>& row_degrees) {
  if (row_degrees.size() + 1 != col_degrees.size())
    throw input_error("multiplicity: expected one more column than rows");
  long long sa = 0, sb = 0, qa = 0, qb = 0;
  for (int a : col_degrees) {
    sa += a;
    qa += static_cast<long long>(a) * a;
  }
  for (int b : row_degrees) {
    sb += b;
    qb += static_cast<long long>(b) * b;
  }
  if (sa != sb)
    throw input_error("multiplicity: row and column degrees have unequal sums");
  if ((qb - qa) % 2 != 0)
    throw input_error("multiplicity: degree data gives a non-integral value");
  return (qb - qa) / 2;
}

template <class K>
long long multiplicity_from_degrees(const FormMatrix<K>& m) {
  return multiplicity_from_degrees(m.col_degrees(), m.row_degrees());
}

struct DegreeBoundReport {
  bool fired = false;
  std::vector<std::string> criteria;  // which sufficient conditions fired
  long long e = 0;
  int nu = 0;
  int alpha = 0;
  int nu_alpha = 0;  // generators in the initial degree
};

// Sufficient conditions, from degree data alone, for every minimal basis to
// consist of essential generators (equivalently: no strongly inessential
// generator exists).  Conservative: silence proves nothing.
inline DegreeBoundReport essentiality_by_degree_bound(int nvars,
                                                      std::vector<int> a,
                                                      std::vector<int> b) {
  DegreeBoundReport r;
  const int n = nvars;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a.empty()) throw input_error("degree bound: no generators");
  r.nu = static_cast<int>(a.size());
  r.alpha = a.front();
  r.nu_alpha = static_cast<int>(std::count(a.begin(), a.end(), r.alpha));
  r.e = multiplicity_from_degrees(a, b);
  if (r.nu < n + 1) r.criteria.push_back("few generators: nu < n + 1");
  if (r.alpha < n) r.criteria.push_back("low initial degree: alpha < n");
  if (r.e < static_cast<long long>(n) * (n + 1) / 2)
    r.criteria.push_back("low multiplicity: e < n(n+1)/2");
  // Degree-matrix entry test: with a and b ascending, a nonpositive entry at
  // row nu - n, column nu(alpha) + 1 forces an essential basis.
  if (r.nu > n && r.nu_alpha + 1 <= r.nu) {
    const int row = r.nu - n;           // 1-based
    const int col = r.nu_alpha + 1;     // 1-based
    if (b[row - 1] - a[col - 1] <= 0)
      r.criteria.push_back("degree matrix: d(nu-n, nu(alpha)+1) <= 0");
  }
  if (r.e < static_cast<long long>(n) * (n + 3) / 2)
    r.criteria.push_back("moderate multiplicity: e < n(n+3)/2");
  r.fired = !r.criteria.empty();
  return r;
}

template <class K>
DegreeBoundReport essentiality_by_degree_bound(const FormMatrix<K>& m) {
  return essentiality_by_degree_bound(m.nvars(), m.col_degrees(), m.row_degrees());
}

template <class K>
struct MatrixSplit {
  FormMatrix<K> upper;      // A: rows 1..m-1, cols 1..m
  FormMatrix<K> inherited;  // [B''|C]: rows m.., col 1 replaces cols 1..m
  Form<K> extracted;        // det of the lower-right block, the factor D
  std::vector<Form<K>> upper_minors;  // signed minors of A
};

// Block split at column m.  Requires the upper-right block (rows < m,
// cols > m) to vanish; then the upper block is a resolution matrix of the
// low-degree part and [B''|C] resolves the complement, where B'' = B * F^t
// with F the signed minors of the upper block.
template <class K>
MatrixSplit<K> split_matrix(const FormMatrix<K>& m, int split_col) {
  if (m.rows() + 1 != m.cols())
    throw input_error("split: expected one more column than rows");
  const int mm = split_col;
  if (mm < 1 || mm > m.rows())
    throw input_error("split: column index out of range");
  for (int i = 1; i <= mm - 1; ++i)
    for (int j = mm + 1; j <= m.cols(); ++j)
      if (!m.entry(i, j).is_zero())
        throw input_error("split: upper-right block is not zero at column " +
                          std::to_string(mm));
  std::vector<int> arows, acols;
  for (int i = 1; i <= mm - 1; ++i) arows.push_back(m.row_degree(i));
  for (int j = 1; j <= mm; ++j) acols.push_back(m.col_degree(j));
  FormMatrix<K> a(m.nvars(), arows, acols);
  for (int i = 1; i <= mm - 1; ++i)
    for (int j = 1; j <= mm; ++j) a.set(i, j, m.entry(i, j));
  std::vector<Form<K>> f = a.signed_minors();

  int dprime = 0;  // column degree of B'': sum(a of A) - sum(b of A)
  for (int j = 1; j <= mm; ++j) dprime += m.col_degree(j);
  for (int i = 1; i <= mm - 1; ++i) dprime -= m.row_degree(i);

  std::vector<int> brows, bcols;
  for (int i = mm; i <= m.rows(); ++i) brows.push_back(m.row_degree(i));
  bcols.push_back(dprime);
  for (int j = mm + 1; j <= m.cols(); ++j) bcols.push_back(m.col_degree(j));
  FormMatrix<K> inherited(m.nvars(), brows, bcols);
  for (int i = mm; i <= m.rows(); ++i) {
    Form<K> acc = Form<K>::zero(m.nvars(), std::max(0, m.row_degree(i) - dprime));
    bool first = true;
    for (int j = 1; j <= mm; ++j) {
      if (m.entry(i, j).is_zero() || f[j - 1].is_zero()) continue;
      Form<K> term = m.entry(i, j) * f[j - 1];
      if (first) {
        acc = term;
        first = false;
      } else {
        acc = acc + term;
      }
    }
    inherited.set(i - mm + 1, 1, acc);
    for (int j = mm + 1; j <= m.cols(); ++j)
      inherited.set(i - mm + 1, j - mm + 1, m.entry(i, j));
  }

  std::vector<int> crows, ccols;
  for (int i = mm; i <= m.rows(); ++i) crows.push_back(i);
  for (int j = mm + 1; j <= m.cols(); ++j) ccols.push_back(j);
  Form<K> extracted = m.subdeterminant(crows, ccols);

  return MatrixSplit<K>{std::move(a), std::move(inherited), std::move(extracted),
                        std::move(f)};
}

}  // namespace dubreil
