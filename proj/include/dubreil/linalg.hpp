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

#include <optional>
#include <vector>

#include "fields.hpp"
#include "form.hpp"

namespace dubreil {

// Incremental reduced row echelon form over an exact field.  Rows are kept
// reduced with pivot coefficient 1, ordered by pivot column.
template <class K>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t width) : width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<K>>& rows() const { return rows_; }

  // Reduces v against the basis in place; returns the remainder.
  std::vector<K> reduce(std::vector<K> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const K& c = v[pivots_[r]];
      if (FieldTraits<K>::is_zero(c)) continue;
      const K factor = c;
      for (std::size_t j = pivots_[r]; j < width_; ++j)
        v[j] -= factor * rows_[r][j];
    }
    return v;
  }

  bool contains(const std::vector<K>& v) const {
    for (const K& c : reduce(v))
      if (!FieldTraits<K>::is_zero(c)) return false;
    return true;
  }

  // Returns true when v enlarged the span.
  bool add(std::vector<K> v) {
    if (v.size() != width_) throw input_error("echelon: row width mismatch");
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < width_ && FieldTraits<K>::is_zero(v[p])) ++p;
    if (p == width_) return false;
    const K inv = K(1) / v[p];
    for (std::size_t j = p; j < width_; ++j) v[j] *= inv;
    // Back-substitute into existing rows to keep the form reduced.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const K factor = rows_[r][p];
      if (FieldTraits<K>::is_zero(factor)) continue;
      for (std::size_t j = p; j < width_; ++j) rows_[r][j] -= factor * v[j];
    }
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < p) ++at;
    rows_.insert(rows_.begin() + at, std::move(v));
    pivots_.insert(pivots_.begin() + at, p);
    return true;
  }

 private:
  std::size_t width_;
  std::vector<std::vector<K>> rows_;
  std::vector<std::size_t> pivots_;
};

// Dimension of the span of a set of forms of equal degree.
template <class K>
std::size_t span_dimension(const std::vector<Form<K>>& forms) {
  if (forms.empty()) return 0;
  const int n = forms[0].nvars();
  const int d = forms[0].degree();
  EchelonBasis<K> basis(monomial_count(n, d));
  for (const auto& f : forms) {
    if (f.nvars() != n || f.degree() != d)
      throw input_error("span_dimension: mixed degrees or variable counts");
    if (!f.is_zero()) basis.add(f.coefficient_vector());
  }
  return basis.rank();
}

// One solution of A x = b, or nullopt when inconsistent.  Free variables are
// set to zero.  A is rows x cols, row-major.
template <class K>
std::optional<std::vector<K>> solve_linear(std::vector<std::vector<K>> a,
                                           std::vector<K> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (std::size_t r = 0; r < rows; ++r) a[r].push_back(b[r]);
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && FieldTraits<K>::is_zero(a[p][c])) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    const K inv = K(1) / a[rank][c];
    for (auto& x : a[rank]) x *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const K factor = a[r][c];
      if (FieldTraits<K>::is_zero(factor)) continue;
      for (std::size_t j = c; j <= cols; ++j) a[r][j] -= factor * a[rank][j];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (!FieldTraits<K>::is_zero(a[r][cols])) return std::nullopt;
  std::vector<K> x(cols, K(0));
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = a[r][cols];
  return x;
}

// Determinant of a square scalar matrix, by elimination.
template <class K>
K scalar_det(std::vector<std::vector<K>> m) {
  const std::size_t n = m.size();
  K det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && FieldTraits<K>::is_zero(m[p][c])) ++p;
    if (p == n) return K(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = K(0) - det;
    }
    det *= m[c][c];
    const K inv = K(1) / m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const K factor = m[r][c] * inv;
      if (FieldTraits<K>::is_zero(factor)) continue;
      for (std::size_t j = c; j < n; ++j) m[r][j] -= factor * m[c][j];
    }
  }
  return det;
}

}  // namespace dubreil
