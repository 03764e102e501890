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

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <dubreil/json_io.hpp>
#include <dubreil/session.hpp>

namespace {

using dubreil::Json;
using dubreil::SessionConfig;
using dubreil::input_error;
using dubreil::theorem_error;

// Exit codes: 0 ok, 1 theorem check failed, 2 bad input, 3 inconclusive.
constexpr int kOk = 0;
constexpr int kTheorem = 1;
constexpr int kInput = 2;
constexpr int kInconclusive = 3;
constexpr int kInternal = 4;

struct Invocation {
  std::string cmd;
  std::string path;              // input file; empty only for flag-driven prescribe
  std::vector<int> degrees;      // prescribe -d
  std::vector<int> counts;       // prescribe -r
  int alternatives = 0;
};

Json load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot read input file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw input_error(std::string("invalid JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Aligned-text rendering.

std::string fmt_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v[i]);
  }
  return s.empty() ? "-" : s;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct Table {
  std::vector<std::string> head;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }

  void print(std::ostream& out, const char* indent = "  ") const {
    std::vector<std::size_t> w(head.size());
    for (std::size_t c = 0; c < head.size(); ++c) w[c] = head[c].size();
    for (const auto& r : rows)
      for (std::size_t c = 0; c < r.size() && c < w.size(); ++c)
        w[c] = std::max(w[c], r[c].size());
    auto line = [&](const std::vector<std::string>& r) {
      out << indent;
      for (std::size_t c = 0; c < r.size(); ++c) {
        out << r[c];
        if (c + 1 < r.size())
          out << std::string(w[c] - r[c].size() + 2, ' ');
      }
      out << '\n';
    };
    line(head);
    for (const auto& r : rows) line(r);
  }
};

void text_config(std::ostream& out, const SessionConfig& cfg) {
  out << "field: " << cfg.field << "  seed: " << cfg.seed
      << "  si-strategy: " << cfg.si_strategy
      << "  mc-trials: " << cfg.mc_trials;
  if (cfg.horizon) out << "  horizon: " << *cfg.horizon;
  out << '\n';
}

void text_profile(std::ostream& out, const dubreil::DubreilReport& r) {
  out << "alpha: " << r.alpha << "  beta: "
      << (r.beta ? std::to_string(*r.beta) : std::string("unknown"))
      << "  nu(I): " << r.nu_total << "  e(I): " << r.profile.e << '\n';
  out << "generator count: nu = alpha + 1 "
      << (r.is_dubreil_maximal ? "holds" : "fails")
      << "; nu <= alpha + 1 " << (r.dubreil_ok ? "holds" : "fails") << '\n';
  out << "H(S/I): " << fmt_ints(r.profile.hilbert) << '\n';
  out << "gamma:  " << fmt_ints(r.profile.gamma) << '\n';
  Table t;
  t.head = {"t", "nu", "bound", "applies", "maximal"};
  for (const auto& row : r.rows)
    t.add({std::to_string(row.t), std::to_string(row.nu),
           std::to_string(row.bound), yes_no(row.bound_applies),
           yes_no(row.maximal)});
  if (!t.rows.empty()) t.print(out);
}

template <class K>
void text_matrix(std::ostream& out, const dubreil::FormMatrix<K>& m,
                 const std::string& label) {
  out << label << ": " << m.rows() << " x " << m.cols() << " over "
      << m.nvars() << " variables\n";
  out << "  row degrees: " << fmt_ints(m.row_degrees()) << '\n';
  out << "  col degrees: " << fmt_ints(m.col_degrees()) << '\n';
  std::vector<std::size_t> w(static_cast<std::size_t>(m.cols()), 0);
  std::vector<std::vector<std::string>> cells;
  for (int i = 1; i <= m.rows(); ++i) {
    std::vector<std::string> row;
    for (int j = 1; j <= m.cols(); ++j) {
      row.push_back(m.entry(i, j).to_string());
      w[j - 1] = std::max(w[j - 1], row.back().size());
    }
    cells.push_back(std::move(row));
  }
  for (const auto& row : cells) {
    out << "  [ ";
    for (int j = 0; j < m.cols(); ++j) {
      out << row[j] << std::string(w[j] - row[j].size(), ' ');
      out << (j + 1 < m.cols() ? " | " : " ]\n");
    }
  }
}

template <class K>
void text_classification(std::ostream& out,
                         const dubreil::ClassifyAllResult<K>& c,
                         const dubreil::FormMatrix<K>& m) {
  Table t;
  t.head = {"col", "degree", "kind", "method", "semantics", "witness",
            "trials", "detail"};
  for (const auto& v : c.columns)
    t.add({std::to_string(v.col), std::to_string(m.col_degree(v.col)),
           dubreil::to_string(v.kind), v.method.empty() ? "-" : v.method,
           v.semantics.empty() ? "-" : v.semantics,
           v.witness_degree ? std::to_string(*v.witness_degree) : "-",
           v.trials ? std::to_string(v.trials) : "-", v.detail});
  t.print(out);
  for (const auto& v : c.columns)
    if (v.replacement) {
      out << "  replacement for column " << v.col << ":";
      for (const auto& [col, f] : v.replacement->lambdas)
        out << " + (" << f.to_string() << ") * C" << col;
      out << "  [" << v.replacement->certificate << "]\n";
    }
  out << "essential: " << fmt_ints(c.essential)
      << "   strongly inessential: " << fmt_ints(c.strongly_inessential)
      << "   inessential not s.i.: " << fmt_ints(c.inessential_not_si)
      << "   unknown: " << fmt_ints(c.unknown) << '\n';
  out << "e-maximal basis: " << yes_no(c.e_maximal) << '\n';
}

void text_si(std::ostream& out, const dubreil::SICount& si) {
  out << "strongly inessential elements: " << si.total << '\n';
  if (!si.per_degree.empty()) {
    Table t;
    t.head = {"degree", "count"};
    for (const auto& [d, n] : si.per_degree)
      t.add({std::to_string(d), std::to_string(n)});
    t.print(out);
  }
}

// ---------------------------------------------------------------------------
// Report assembly shared by all commands.

Json report_skeleton(const Invocation& inv, const SessionConfig& cfg,
                     const Json& input) {
  return Json{{"command", inv.cmd},
              {"config", dubreil::config_to_json(cfg)},
              {"input", input},
              {"result", Json::object()}};
}

void emit(std::ostream& out, const SessionConfig& cfg, const Json& report,
          const std::function<void(std::ostream&)>& text) {
  if (cfg.format == "json") {
    out << report.dump(2) << '\n';
  } else {
    text(out);
  }
}

// ---------------------------------------------------------------------------
// Command runners.

template <class K>
int run_build(const Invocation& inv, const SessionConfig& cfg,
              std::ostream& out) {
  const Json input = load_input(inv.path);
  const dubreil::DubreilDatum<K> d = dubreil::datum_from_json<K>(input);
  const dubreil::GradedIdeal<K> ideal = dubreil::build_ideal(d);
  const int horizon = cfg.horizon.value_or(ideal.default_horizon());
  const dubreil::DubreilReport rep = dubreil::dubreil_check(ideal, horizon);
  const dubreil::FormMatrix<K> m = dubreil::canonical_matrix(d);
  const std::vector<dubreil::Form<K>> gens = dubreil::canonical_generators(d);
  if (!dubreil::verify_syzygies(m, gens))
    throw theorem_error("build: the canonical matrix fails the syzygy check");
  const dubreil::SICount si = dubreil::si_count(d);
  const auto cls = dubreil::classify_all(m, dubreil::make_si_options(cfg));
  std::vector<std::string> notes;
  if (si.total == 0)
    notes.push_back("the standard basis has no strongly inessential elements");

  Json report = report_skeleton(inv, cfg, input);
  Json gens_json = Json::array();
  for (const auto& g : gens) gens_json.push_back(dubreil::form_to_json(g));
  report["result"] = Json{{"profile", dubreil::dubreil_report_to_json(rep)},
                          {"matrix", dubreil::matrix_to_json(m)},
                          {"generators", std::move(gens_json)},
                          {"si", dubreil::si_count_to_json(si)},
                          {"classification",
                           dubreil::classification_to_json(cls)},
                          {"notes", notes}};
  emit(out, cfg, report, [&](std::ostream& o) {
    o << "command: build (" << inv.path << ")\n";
    text_config(o, cfg);
    text_profile(o, rep);
    text_matrix(o, m, "canonical matrix");
    text_classification(o, cls, m);
    text_si(o, si);
    for (const auto& n : notes) o << "note: " << n << '\n';
  });
  return cls.unknown.empty() ? kOk : kInconclusive;
}

template <class K>
int run_classify(const Invocation& inv, const SessionConfig& cfg,
                 std::ostream& out) {
  const Json input = load_input(inv.path);
  const dubreil::FormMatrix<K> m = dubreil::matrix_from_json<K>(input);
  const auto cls = dubreil::classify_all(m, dubreil::make_si_options(cfg));
  const long long e = dubreil::multiplicity_from_degrees(m);

  Json report = report_skeleton(inv, cfg, input);
  report["result"] = Json{{"e_from_degrees", e},
                          {"classification",
                           dubreil::classification_to_json(cls)}};
  emit(out, cfg, report, [&](std::ostream& o) {
    o << "command: classify (" << inv.path << ")\n";
    text_config(o, cfg);
    text_matrix(o, m, "matrix");
    o << "e from degree data: " << e << '\n';
    text_classification(o, cls, m);
  });
  return cls.unknown.empty() ? kOk : kInconclusive;
}

template <class K>
int run_count_si(const Invocation& inv, const SessionConfig& cfg,
                 std::ostream& out) {
  const Json input = load_input(inv.path);
  const dubreil::DubreilDatum<K> d = dubreil::datum_from_json<K>(input);
  const dubreil::SICount si = dubreil::si_count(d);

  Json report = report_skeleton(inv, cfg, input);
  report["result"] = Json{{"alpha", d.alpha0()},
                          {"generator_degrees", d.a_vector()},
                          {"si", dubreil::si_count_to_json(si)}};
  emit(out, cfg, report, [&](std::ostream& o) {
    o << "command: count-si (" << inv.path << ")\n";
    text_config(o, cfg);
    o << "alpha: " << d.alpha0() << '\n';
    o << "generator degrees: " << fmt_ints(d.a_vector()) << '\n';
    text_si(o, si);
  });
  return kOk;
}

template <class K>
int run_split(const Invocation& inv, const SessionConfig& cfg,
              std::ostream& out) {
  const Json input = load_input(inv.path);
  const int p = dubreil::detail::json_int(
      dubreil::detail::json_field(input, "p"), "p");
  const bool transfer = input.contains("transfer") &&
                        input.at("transfer").is_boolean() &&
                        input.at("transfer").get<bool>();

  std::optional<dubreil::FormMatrix<K>> m;
  std::optional<dubreil::GradedIdeal<K>> ideal;
  if (input.contains("datum")) {
    const auto d = dubreil::datum_from_json<K>(input.at("datum"));
    ideal.emplace(dubreil::build_ideal(d));
    m.emplace(dubreil::canonical_matrix(d));
  } else if (input.contains("matrix")) {
    m.emplace(dubreil::matrix_from_json<K>(input.at("matrix")));
    ideal.emplace(m->nvars(), m->signed_minors());
  } else {
    throw input_error("split: the input needs a datum or a matrix");
  }

  const auto sp = dubreil::split(*ideal, p, m, cfg.horizon.value_or(-1));
  const dubreil::DubreilReport low_rep =
      dubreil::dubreil_check(sp.low, cfg.horizon.value_or(sp.low.default_horizon()));
  const dubreil::DubreilReport high_rep =
      dubreil::dubreil_check(sp.high,
                             cfg.horizon.value_or(sp.high.default_horizon()));
  std::optional<dubreil::TransferReport<K>> tr;
  if (transfer)
    tr = dubreil::check_transfer(*m, sp, dubreil::make_si_options(cfg));

  Json report = report_skeleton(inv, cfg, input);
  report["result"] = Json{{"split", dubreil::split_to_json(sp)},
                          {"low_profile",
                           dubreil::dubreil_report_to_json(low_rep)},
                          {"high_profile",
                           dubreil::dubreil_report_to_json(high_rep)},
                          {"transfer", nullptr}};
  if (tr) report["result"]["transfer"] = dubreil::transfer_to_json(*tr);
  emit(out, cfg, report, [&](std::ostream& o) {
    o << "command: split (" << inv.path << ") at degree " << p << '\n';
    text_config(o, cfg);
    o << "common factor at degree " << p << ": " << sp.common.to_string()
      << '\n';
    if (sp.extracted)
      o << "extracted block determinant: " << sp.extracted->to_string()
        << '\n';
    if (sp.low_matrix) text_matrix(o, *sp.low_matrix, "low matrix");
    o << "low part ";
    text_profile(o, low_rep);
    if (sp.high_matrix) text_matrix(o, *sp.high_matrix, "high matrix");
    o << "high part ";
    text_profile(o, high_rep);
    if (tr) {
      Table t;
      t.head = {"part", "col", "full col", "kind (part)", "kind (full)",
                "status"};
      for (const auto& rec : tr->records)
        t.add({rec.part, std::to_string(rec.column_part),
               std::to_string(rec.column_full),
               dubreil::to_string(rec.kind_part),
               dubreil::to_string(rec.kind_full), rec.status});
      t.print(o);
      for (const auto& n : tr->notes) o << "note: " << n << '\n';
    }
  });
  return kOk;
}

template <class K>
int run_prescribe(const Invocation& inv, const SessionConfig& cfg,
                  std::ostream& out) {
  std::vector<int> degrees = inv.degrees;
  std::vector<int> counts = inv.counts;
  int alternatives = inv.alternatives;
  Json input;
  if (!inv.path.empty()) {
    input = load_input(inv.path);
    degrees = dubreil::detail::json_int_list(
        dubreil::detail::json_field(input, "degrees"), "degree");
    counts = dubreil::detail::json_int_list(
        dubreil::detail::json_field(input, "counts"), "count");
    if (input.contains("alternatives"))
      alternatives =
          dubreil::detail::json_int(input.at("alternatives"), "alternatives");
  } else {
    input = Json{{"degrees", degrees}, {"counts", counts}};
    if (alternatives) input["alternatives"] = alternatives;
  }

  const dubreil::DubreilDatum<K> d = dubreil::prescribe<K>(degrees, counts);
  const dubreil::SICount si = dubreil::si_count(d);
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    auto it = si.per_degree.find(degrees[i]);
    if (it == si.per_degree.end() || it->second != counts[i])
      throw theorem_error("prescribe: realized counts miss the request");
  }
  const dubreil::GradedIdeal<K> ideal = dubreil::build_ideal(d);
  const dubreil::DubreilReport rep = dubreil::dubreil_check(
      ideal, cfg.horizon.value_or(ideal.default_horizon()));
  std::vector<dubreil::DubreilDatum<K>> alts;
  if (alternatives > 0)
    alts = dubreil::prescribe_alternatives<K>(degrees, counts, alternatives);

  Json report = report_skeleton(inv, cfg, input);
  Json alts_json = Json::array();
  for (const auto& a : alts) alts_json.push_back(dubreil::datum_to_json(a));
  report["result"] = Json{{"datum", dubreil::datum_to_json(d)},
                          {"profile", dubreil::dubreil_report_to_json(rep)},
                          {"si", dubreil::si_count_to_json(si)},
                          {"alternatives", std::move(alts_json)}};
  emit(out, cfg, report, [&](std::ostream& o) {
    o << "command: prescribe  degrees: " << fmt_ints(degrees)
      << "  counts: " << fmt_ints(counts) << '\n';
    text_config(o, cfg);
    o << "datum: beta0 = " << d.beta0 << ", gaps = " << fmt_ints(d.gaps)
      << ", levels = " << d.r() << '\n';
    text_profile(o, rep);
    text_si(o, si);
    o << "alternatives realizing the same counts: " << alts.size() << '\n';
  });
  return kOk;
}

template <class K>
dubreil::FormMatrix<K> lift_from_json(const Json& input) {
  if (input.contains("kind")) {
    const Json& kj = input.at("kind");
    if (!kj.is_string()) throw input_error("lift: kind must be a string");
    const std::string ks = kj.get<std::string>();
    dubreil::Alpha3Kind kind;
    if (ks == "I11") kind = dubreil::Alpha3Kind::I11;
    else if (ks == "I12") kind = dubreil::Alpha3Kind::I12;
    else if (ks == "I2") kind = dubreil::Alpha3Kind::I2;
    else throw input_error("lift: kind must be I11, I12, or I2");
    const int t =
        dubreil::detail::json_int(dubreil::detail::json_field(input, "t"), "t");
    std::vector<dubreil::Form<K>> q(
        3, dubreil::Form<K>::zero(3, std::max(1, t - 1)));
    if (input.contains("Q")) {
      const Json& qj = input.at("Q");
      if (!qj.is_array() || qj.size() > 3)
        throw input_error("lift: Q must be a list of at most three forms");
      for (std::size_t i = 0; i < qj.size(); ++i)
        q[i] = dubreil::form_from_json<K>(qj[i], 3, t - 1);
    }
    return dubreil::family_alpha3(kind, t, q[0], q[1], q[2]);
  }

  dubreil::FormMatrix<K> base = [&] {
    if (input.contains("ts"))
      return dubreil::chain_base<K>(dubreil::detail::json_int_list(
          input.at("ts"), "exponent"));
    if (input.contains("base"))
      return dubreil::matrix_from_json<K>(input.at("base"));
    throw input_error("lift: the input needs a kind, a ts list, or a base");
  }();
  const int delta = base.rows();
  // P_i lives in row i + 1 and has degree t_0 + ... + t_i - i - 1, read off
  // the base degree data.
  std::vector<dubreil::Form<K>> p;
  for (int i = 1; i <= delta - 1; ++i) {
    int deg = 0;
    for (int k = 0; k <= i; ++k)
      deg += base.row_degree(k + 1) - base.col_degree(k + 1);
    deg -= i + 1;
    p.push_back(dubreil::Form<K>::zero(3, std::max(1, deg)));
  }
  if (input.contains("P")) {
    const Json& pj = input.at("P");
    if (!pj.is_array() || static_cast<int>(pj.size()) > delta - 1)
      throw input_error("lift: P must list at most one form per lower row");
    for (std::size_t i = 0; i < pj.size(); ++i)
      p[i] = dubreil::form_from_json<K>(pj[i], 3, p[i].degree());
  }
  return dubreil::lift_general(dubreil::LiftSpec<K>(std::move(base),
                                                    std::move(p)));
}

template <class K>
int run_lift(const Invocation& inv, const SessionConfig& cfg,
             std::ostream& out) {
  const Json input = load_input(inv.path);
  const dubreil::FormMatrix<K> m = lift_from_json<K>(input);
  const auto sr = dubreil::check_S_membership(m, dubreil::make_si_options(cfg));
  const long long e_deg = dubreil::multiplicity_from_degrees(m);
  const dubreil::GradedIdeal<K> ideal(m.nvars(), m.signed_minors());
  const dubreil::IdealProfile prof = dubreil::profile(
      ideal, cfg.horizon.value_or(ideal.default_horizon()));
  if (prof.e != e_deg)
    throw theorem_error("lift: multiplicity disagrees with the degree data");

  Json report = report_skeleton(inv, cfg, input);
  report["result"] = Json{{"matrix", dubreil::matrix_to_json(m)},
                          {"membership", dubreil::sreport_to_json(sr)},
                          {"e", prof.e},
                          {"profile", dubreil::profile_to_json(prof)}};
  emit(out, cfg, report, [&](std::ostream& o) {
    o << "command: lift (" << inv.path << ")\n";
    text_config(o, cfg);
    text_matrix(o, m, "lifted matrix");
    o << "e(I): " << prof.e << "  alpha: " << sr.alpha << '\n';
    o << "extremal class member: " << yes_no(sr.member)
      << "  inconclusive: " << yes_no(sr.inconclusive) << '\n';
    if (!sr.detail.empty()) o << "detail: " << sr.detail << '\n';
    o << "essential degrees: " << fmt_ints(sr.essential_degrees) << '\n';
    text_classification(o, sr.classification, m);
  });
  return sr.inconclusive ? kInconclusive : kOk;
}

template <class K>
int run_quotient(const Invocation& inv, const SessionConfig& cfg,
                 std::ostream& out) {
  const Json input = load_input(inv.path);
  const dubreil::FormMatrix<K> m = [&] {
    const Json& mj = dubreil::detail::json_field(input, "matrix");
    if (mj.is_object() && mj.contains("kind")) return lift_from_json<K>(mj);
    if (mj.is_object() && (mj.contains("ts") || mj.contains("base")))
      return lift_from_json<K>(mj);
    return dubreil::matrix_from_json<K>(mj);
  }();
  const dubreil::Form<K> ell =
      dubreil::form_from_json<K>(dubreil::detail::json_field(input, "L"), 3, 1);
  const auto opt = dubreil::make_si_options(cfg);
  const dubreil::FormMatrix<K> image =
      dubreil::quotient_mod_linear(m, ell, opt, cfg.horizon.value_or(-1));
  const auto cls = dubreil::classify_all(image, opt);

  Json report = report_skeleton(inv, cfg, input);
  report["result"] = Json{{"matrix", dubreil::matrix_to_json(image)},
                          {"classification",
                           dubreil::classification_to_json(cls)}};
  emit(out, cfg, report, [&](std::ostream& o) {
    o << "command: quotient (" << inv.path << ") modulo "
      << ell.to_string() << '\n';
    text_config(o, cfg);
    text_matrix(o, image, "image matrix");
    text_classification(o, cls, image);
  });
  return cls.unknown.empty() ? kOk : kInconclusive;
}

template <class K>
int run_verify_all(const Invocation& inv, const SessionConfig& cfg,
                   std::ostream& out) {
  const Json input = load_input(inv.path);
  const dubreil::DubreilDatum<K> d = dubreil::datum_from_json<K>(input);
  const dubreil::GradedIdeal<K> ideal = dubreil::build_ideal(d);
  const int horizon = cfg.horizon.value_or(ideal.default_horizon());
  const dubreil::FormMatrix<K> m = dubreil::canonical_matrix(d);
  const std::vector<dubreil::Form<K>> gens = dubreil::canonical_generators(d);
  std::vector<std::pair<std::string, std::string>> checks;

  if (!dubreil::verify_syzygies(m, gens))
    throw theorem_error("verify: the canonical matrix fails the syzygy check");
  checks.emplace_back("syzygies", "every column annihilates the basis");

  const dubreil::GradedIdeal<K> minors(2, m.signed_minors());
  for (const auto& g : gens)
    if (!minors.contains(g))
      throw theorem_error("verify: a generator escapes the minor ideal");
  for (int t = ideal.min_gen_degree(); t <= horizon; ++t)
    if (ideal.piece_dim(t) != minors.piece_dim(t))
      throw theorem_error("verify: minor ideal piece mismatch at degree " +
                          std::to_string(t));
  checks.emplace_back("minors", "maximal minors regenerate the ideal");

  const dubreil::DubreilReport rep = dubreil::dubreil_check(ideal, horizon);
  if (!rep.dubreil_ok || !rep.is_dubreil_maximal)
    throw theorem_error("verify: the generator count is not extremal");
  if (!rep.campanella_ok)
    throw theorem_error("verify: a generator count exceeds its bound");
  checks.emplace_back("counts", "nu = alpha + 1 and every bound holds");

  if (dubreil::multiplicity_from_degrees(m) != rep.profile.e)
    throw theorem_error("verify: multiplicity disagrees with the degree data");
  checks.emplace_back("multiplicity", "degree data reproduces e(I)");

  const dubreil::SICount si = dubreil::si_count(d);
  const auto cls = dubreil::classify_all(m, dubreil::make_si_options(cfg));
  if (cls.unknown.empty()) {
    if (static_cast<int>(cls.strongly_inessential.size()) != si.total)
      throw theorem_error("verify: classified s.i. count misses the formula");
    std::map<int, int> by_degree;
    for (int j : cls.strongly_inessential) ++by_degree[m.col_degree(j)];
    for (const auto& [deg, n] : si.per_degree) {
      auto it = by_degree.find(deg);
      const int have = it == by_degree.end() ? 0 : it->second;
      if (have != n)
        throw theorem_error("verify: s.i. count mismatch in degree " +
                            std::to_string(deg));
    }
    if (!cls.e_maximal)
      throw theorem_error("verify: the canonical basis is not e-maximal");
    checks.emplace_back("si-count",
                        "classification matches the closed-form count");
    checks.emplace_back("e-maximal", "every inessential column is s.i.");
  }

  Json report = report_skeleton(inv, cfg, input);
  Json checks_json = Json::array();
  for (const auto& [name, detail] : checks)
    checks_json.push_back(Json{{"name", name}, {"ok", true},
                               {"detail", detail}});
  report["result"] = Json{{"checks", std::move(checks_json)},
                          {"profile", dubreil::dubreil_report_to_json(rep)},
                          {"si", dubreil::si_count_to_json(si)},
                          {"classification",
                           dubreil::classification_to_json(cls)}};
  emit(out, cfg, report, [&](std::ostream& o) {
    o << "command: verify-all (" << inv.path << ")\n";
    text_config(o, cfg);
    Table t;
    t.head = {"check", "ok", "detail"};
    for (const auto& [name, detail] : checks) t.add({name, "yes", detail});
    t.print(o);
    text_profile(o, rep);
    text_classification(o, cls, m);
    text_si(o, si);
  });
  return cls.unknown.empty() ? kOk : kInconclusive;
}

template <class K>
int run_command(const Invocation& inv, const SessionConfig& cfg) {
  std::ostream& out = std::cout;
  if (inv.cmd == "build") return run_build<K>(inv, cfg, out);
  if (inv.cmd == "classify") return run_classify<K>(inv, cfg, out);
  if (inv.cmd == "count-si") return run_count_si<K>(inv, cfg, out);
  if (inv.cmd == "split") return run_split<K>(inv, cfg, out);
  if (inv.cmd == "prescribe") return run_prescribe<K>(inv, cfg, out);
  if (inv.cmd == "lift") return run_lift<K>(inv, cfg, out);
  if (inv.cmd == "quotient") return run_quotient<K>(inv, cfg, out);
  if (inv.cmd == "verify-all") return run_verify_all<K>(inv, cfg, out);
  throw input_error("unknown command: " + inv.cmd);
}

}  // namespace

int main(int argc, char** argv) {
  SessionConfig cfg;
  Invocation inv;
  int horizon_flag = -1;

  CLI::App app{"exact engine for layered ideals and their graded matrices",
               "dubreil"};
  app.require_subcommand(1);
  app.add_option("--field", cfg.field, "coefficient field: q or fp:<prime>")
      ->envname("DUBREIL_FIELD");
  app.add_option("--seed", cfg.seed, "seed for randomized strategies")
      ->envname("DUBREIL_SEED");
  app.add_option("--horizon", horizon_flag, "degree horizon override")
      ->envname("DUBREIL_HORIZON");
  app.add_option("--si-strategy", cfg.si_strategy,
                 "structural, exhaustive, or montecarlo")
      ->envname("DUBREIL_SI_STRATEGY");
  app.add_option("--mc-trials", cfg.mc_trials, "Monte Carlo trial count")
      ->envname("DUBREIL_MC_TRIALS");
  app.add_option("--format", cfg.format, "output format: json or text")
      ->envname("DUBREIL_FORMAT");

  struct SubSpec {
    const char* name;
    const char* help;
    bool needs_input;
  };
  const std::vector<SubSpec> subs = {
      {"build", "profile a layered datum and its canonical matrix", true},
      {"classify", "classify the columns of a matrix file", true},
      {"count-si", "closed-form strongly inessential counts of a datum", true},
      {"split", "split an ideal at a degree with maximal generator count",
       true},
      {"prescribe", "realize prescribed s.i. degrees and counts", false},
      {"lift", "lift a chain into three variables or build a family member",
       true},
      {"quotient", "reduce a three-variable matrix modulo a linear form",
       true},
      {"verify-all", "run every consistency check on a datum", true},
  };
  std::map<std::string, std::string> paths;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    auto* opt = sub->add_option("input", paths[s.name], "JSON input file");
    if (s.needs_input) opt->required();
    if (std::string(s.name) == "prescribe") {
      sub->add_option("-d,--degrees", inv.degrees,
                      "target degrees, strictly increasing");
      sub->add_option("-r,--counts", inv.counts,
                      "s.i. counts, one per degree");
      sub->add_option("--alternatives", inv.alternatives,
                      "number of alternative data to emit");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  const auto chosen = app.get_subcommands();
  inv.cmd = chosen.at(0)->get_name();
  inv.path = paths[inv.cmd];
  if (horizon_flag >= 0) cfg.horizon = horizon_flag;
  if (inv.cmd == "prescribe" && inv.path.empty() &&
      (inv.degrees.empty() || inv.counts.empty())) {
    std::cerr << "input error: prescribe needs an input file or both "
                 "--degrees and --counts\n";
    return kInput;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kInternal;
  try {
    dubreil::validate_config(cfg);
    const dubreil::FieldChoice fc = dubreil::parse_field(cfg.field);
    if (fc.prime == 0) {
      code = run_command<dubreil::Rational>(inv, cfg);
    } else {
      dubreil::Fp::set_modulus(fc.prime);
      code = run_command<dubreil::Fp>(inv, cfg);
    }
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    code = kInput;
  } catch (const theorem_error& e) {
    std::cerr << "theorem check failed: " << e.what() << '\n';
    code = kTheorem;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    code = kInternal;
  }
  const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  std::cerr << "timing: " << inv.cmd << " wall_ms=" << wall.count() << '\n';
  return code;
}
