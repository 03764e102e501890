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
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dubreil2.hpp"
#include "lifting.hpp"

namespace dubreil {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& json_field(const Json& j, const char* key) {
  if (!j.is_object())
    throw input_error(std::string("json: expected an object carrying '") +
                      key + "'");
  auto it = j.find(key);
  if (it == j.end())
    throw input_error(std::string("json: missing field '") + key + "'");
  return *it;
}

inline int json_int(const Json& j, const char* what) {
  if (!j.is_number_integer())
    throw input_error(std::string("json: ") + what + " must be an integer");
  return j.get<int>();
}

inline std::vector<int> json_int_list(const Json& j, const char* what) {
  if (!j.is_array())
    throw input_error(std::string("json: ") + what + " must be a list");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(json_int(x, what));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Coefficients and forms.  Coefficients serialize as strings ("2/3" over the
// rationals, a canonical residue over a prime field) and parse from integers
// or strings.

template <class K>
K coeff_from_json(const Json& j) {
  if (j.is_number_integer()) return K(j.get<long long>());
  if (j.is_string()) return FieldTraits<K>::from_string(j.get<std::string>());
  throw input_error("json: a coefficient must be an integer or a string");
}

template <class K>
Json form_to_json(const Form<K>& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms())
    terms.push_back(Json{{"exp", e}, {"c", FieldTraits<K>::to_string(c)}});
  return Json{{"vars", f.nvars()}, {"deg", f.degree()}, {"terms", terms}};
}

// Accepted shapes: a full {"vars", "deg", "terms"} object, a coefficient
// vector for a linear form, or 0 / null for the zero form of a slot whose
// arity and degree are known from context.
template <class K>
Form<K> form_from_json(const Json& j, int nvars_hint = 0, int deg_hint = 0) {
  if (j.is_null() || (j.is_number_integer() && j.get<long long>() == 0)) {
    if (nvars_hint < 1)
      throw input_error("json: a bare zero form needs a typed slot");
    return Form<K>::zero(nvars_hint, std::max(deg_hint, 1));
  }
  if (j.is_array()) {
    std::vector<K> c;
    for (const auto& x : j) c.push_back(coeff_from_json<K>(x));
    if (c.size() < 2)
      throw input_error("json: a coefficient vector needs two or more entries");
    return Form<K>::linear(c);
  }
  if (!j.is_object())
    throw input_error(
        "json: a form must be an object, a coefficient vector, or 0");
  const int nv = detail::json_int(detail::json_field(j, "vars"), "vars");
  const int deg = detail::json_int(detail::json_field(j, "deg"), "deg");
  if (nv < 1 || deg < 0)
    throw input_error("json: a form needs vars >= 1 and deg >= 0");
  Form<K> f = Form<K>::zero(nv, deg);
  const Json& terms = detail::json_field(j, "terms");
  if (!terms.is_array()) throw input_error("json: terms must be a list");
  for (const auto& t : terms) {
    const std::vector<int> e =
        detail::json_int_list(detail::json_field(t, "exp"), "exponent");
    if (static_cast<int>(e.size()) != nv)
      throw input_error("json: exponent arity mismatch");
    int total = 0;
    for (int x : e) {
      if (x < 0) throw input_error("json: negative exponent");
      total += x;
    }
    if (total != deg)
      throw input_error("json: term degree disagrees with deg");
    const K c = coeff_from_json<K>(detail::json_field(t, "c"));
    if (FieldTraits<K>::is_zero(c)) continue;
    f = f + Form<K>::monomial(nv, e, c);
  }
  return f;
}

// A linear form as a plain coefficient vector, the compact shape used by
// datum files.
template <class K>
Json linear_to_json(const Form<K>& f) {
  Json out = Json::array();
  std::vector<int> e(static_cast<std::size_t>(f.nvars()), 0);
  for (int v = 0; v < f.nvars(); ++v) {
    e[v] = 1;
    out.push_back(FieldTraits<K>::to_string(f.coeff(e)));
    e[v] = 0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrices: degree data plus a dense 2-D array of form objects.

template <class K>
Json matrix_to_json(const FormMatrix<K>& m) {
  Json entries = Json::array();
  for (int i = 1; i <= m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 1; j <= m.cols(); ++j) row.push_back(form_to_json(m.entry(i, j)));
    entries.push_back(std::move(row));
  }
  return Json{{"vars", m.nvars()},
              {"row_degrees", m.row_degrees()},
              {"col_degrees", m.col_degrees()},
              {"entries", std::move(entries)}};
}

template <class K>
FormMatrix<K> matrix_from_json(const Json& j) {
  const int nv = detail::json_int(detail::json_field(j, "vars"), "vars");
  FormMatrix<K> m(nv,
                  detail::json_int_list(detail::json_field(j, "row_degrees"),
                                        "row degree"),
                  detail::json_int_list(detail::json_field(j, "col_degrees"),
                                        "col degree"));
  const Json& entries = detail::json_field(j, "entries");
  if (!entries.is_array() || static_cast<int>(entries.size()) != m.rows())
    throw input_error("json: entries must hold one list per row");
  for (int i = 1; i <= m.rows(); ++i) {
    const Json& row = entries[i - 1];
    if (!row.is_array() || static_cast<int>(row.size()) != m.cols())
      throw input_error("json: entry row length mismatch");
    for (int jc = 1; jc <= m.cols(); ++jc) {
      const Form<K> f =
          form_from_json<K>(row[jc - 1], nv,
                            m.row_degree(i) - m.col_degree(jc));
      if (!f.is_zero()) m.set(i, jc, f);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Layered data.

template <class K>
Json datum_to_json(const DubreilDatum<K>& d) {
  Json phis = Json::array();
  for (const auto& level : d.phis) {
    Json lv = Json::array();
    for (const auto& f : level)
      lv.push_back(Json{{"lin", linear_to_json(f.line)}, {"mu", f.mult}});
    phis.push_back(std::move(lv));
  }
  Json ls = Json::array();
  for (const auto& l : d.ls) ls.push_back(linear_to_json(l));
  return Json{{"beta0", d.beta0},
              {"gaps", d.gaps},
              {"phis", std::move(phis)},
              {"U", linear_to_json(d.u)},
              {"Ls", std::move(ls)}};
}

template <class K>
DubreilDatum<K> datum_from_json(const Json& j) {
  DubreilDatum<K> d;
  d.beta0 = detail::json_int(detail::json_field(j, "beta0"), "beta0");
  d.gaps = detail::json_int_list(detail::json_field(j, "gaps"), "gap");
  const Json& phis = detail::json_field(j, "phis");
  if (!phis.is_array()) throw input_error("json: phis must be a list");
  for (const auto& lv : phis) {
    if (!lv.is_array()) throw input_error("json: each level must be a list");
    std::vector<LinearPower<K>> level;
    for (const auto& f : lv) {
      LinearPower<K> p;
      p.line = form_from_json<K>(detail::json_field(f, "lin"), 2, 1);
      p.mult = f.contains("mu") ? detail::json_int(f.at("mu"), "mu") : 1;
      level.push_back(std::move(p));
    }
    d.phis.push_back(std::move(level));
  }
  d.u = form_from_json<K>(detail::json_field(j, "U"), 2, 1);
  const Json& ls = detail::json_field(j, "Ls");
  if (!ls.is_array()) throw input_error("json: Ls must be a list");
  for (const auto& l : ls) d.ls.push_back(form_from_json<K>(l, 2, 1));
  d.validate();
  return d;
}

// ---------------------------------------------------------------------------
// Profiles and check reports.

inline Json profile_to_json(const IdealProfile& p) {
  Json nu = Json::object();
  for (const auto& [t, c] : p.nu) nu[std::to_string(t)] = c;
  Json out{{"alpha", p.alpha},
           {"beta", nullptr},
           {"nu", std::move(nu)},
           {"hilbert", p.hilbert},
           {"gamma", p.gamma},
           {"e", p.e}};
  if (p.beta) out["beta"] = *p.beta;
  return out;
}

inline Json dubreil_report_to_json(const DubreilReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"t", row.t},
                        {"nu", row.nu},
                        {"bound", row.bound},
                        {"applies", row.bound_applies},
                        {"maximal", row.maximal}});
  Json out = profile_to_json(r.profile);
  out["dubreil"] = Json{{"nu_total", r.nu_total},
                        {"ok", r.dubreil_ok},
                        {"maximal", r.is_dubreil_maximal},
                        {"count_bound_ok", r.campanella_ok},
                        {"max_at", r.max_at},
                        {"rows", std::move(rows)}};
  return out;
}

// ---------------------------------------------------------------------------
// Column verdicts.

template <class K>
Json replacement_to_json(const Replacement<K>& r) {
  Json lambdas = Json::array();
  for (const auto& [col, f] : r.lambdas)
    lambdas.push_back(Json{{"col", col}, {"form", form_to_json(f)}});
  Json column = Json::array();
  for (const auto& f : r.column) column.push_back(form_to_json(f));
  return Json{{"col", r.col},
              {"lambdas", std::move(lambdas)},
              {"column", std::move(column)},
              {"certificate", r.certificate}};
}

template <class K>
Json verdict_to_json(const ColumnVerdict<K>& v) {
  Json out{{"col", v.col},
           {"kind", to_string(v.kind)},
           {"method", v.method},
           {"semantics", v.semantics},
           {"detail", v.detail},
           {"witness", nullptr},
           {"replacement", nullptr},
           {"trials", v.trials}};
  if (v.witness_degree) out["witness"] = *v.witness_degree;
  if (v.replacement) out["replacement"] = replacement_to_json(*v.replacement);
  return out;
}

template <class K>
Json classification_to_json(const ClassifyAllResult<K>& c) {
  Json cols = Json::array();
  for (const auto& v : c.columns) cols.push_back(verdict_to_json(v));
  return Json{{"columns", std::move(cols)},
              {"essential", c.essential},
              {"strongly_inessential", c.strongly_inessential},
              {"inessential_not_si", c.inessential_not_si},
              {"unknown", c.unknown},
              {"e_maximal", c.e_maximal}};
}

inline Json si_count_to_json(const SICount& c) {
  Json per_degree = Json::object();
  for (const auto& [d, n] : c.per_degree) per_degree[std::to_string(d)] = n;
  return Json{{"total", c.total},
              {"per_level", c.per_level},
              {"per_degree", std::move(per_degree)}};
}

template <class K>
Json sreport_to_json(const SReport<K>& r) {
  return Json{{"member", r.member},
              {"inconclusive", r.inconclusive},
              {"alpha", r.alpha},
              {"essential_degrees", r.essential_degrees},
              {"degrees_ok", r.degrees_ok},
              {"detail", r.detail},
              {"classification", classification_to_json(r.classification)}};
}

template <class K>
Json transfer_to_json(const TransferReport<K>& r) {
  Json records = Json::array();
  for (const auto& rec : r.records)
    records.push_back(Json{{"part", rec.part},
                           {"column_part", rec.column_part},
                           {"column_full", rec.column_full},
                           {"kind_part", to_string(rec.kind_part)},
                           {"kind_full", to_string(rec.kind_full)},
                           {"status", rec.status}});
  return Json{{"full", classification_to_json(r.full)},
              {"low", classification_to_json(r.low)},
              {"high", classification_to_json(r.high)},
              {"records", std::move(records)},
              {"notes", r.notes}};
}

template <class K>
Json ideal_to_json(const GradedIdeal<K>& ideal) {
  Json gens = Json::array();
  for (const auto& g : ideal.gens()) gens.push_back(form_to_json(g));
  return Json{{"vars", ideal.nvars()}, {"generators", std::move(gens)}};
}

template <class K>
Json split_to_json(const SplitPair<K>& sp) {
  Json out{{"p", sp.p},
           {"common", form_to_json(sp.common)},
           {"low", ideal_to_json(sp.low)},
           {"high", ideal_to_json(sp.high)},
           {"low_matrix", nullptr},
           {"high_matrix", nullptr},
           {"extracted", nullptr}};
  if (sp.low_matrix) out["low_matrix"] = matrix_to_json(*sp.low_matrix);
  if (sp.high_matrix) out["high_matrix"] = matrix_to_json(*sp.high_matrix);
  if (sp.extracted) out["extracted"] = form_to_json(*sp.extracted);
  return out;
}

}  // namespace dubreil
