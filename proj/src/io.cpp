// Copyright 2026 The qspforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qspforge/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qspforge::io {

namespace {

[[noreturn]] void schema_error(const std::string &where, const std::string &what) {
  throw Error(ErrorCode::Schema, where + ": " + what);
}

const Json &field(const Json &doc, const char *key, const std::string &where) {
  if (!doc.is_object()) schema_error(where, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) schema_error(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string get_string(const Json &doc, const char *key, const std::string &where) {
  const Json &v = field(doc, key, where);
  if (!v.is_string()) schema_error(where + "." + key, "expected a string");
  return v.get<std::string>();
}

int get_int(const Json &doc, const char *key, const std::string &where) {
  const Json &v = field(doc, key, where);
  if (!v.is_number_integer()) schema_error(where + "." + key, "expected an integer");
  return v.get<int>();
}

void check_version(const Json &doc, const std::string &where) {
  const std::string v = get_string(doc, "schema_version", where);
  if (v != kSchemaVersion) {
    schema_error(where + ".schema_version", "unsupported version \"" + v + "\"");
  }
}

double parse_real_text(const std::string &text, const std::string &where) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception &) {
    schema_error(where, "not a number: \"" + text + "\"");
  }
  if (used != text.size()) schema_error(where, "not a number: \"" + text + "\"");
  return value;
}

// A number, or a string "p" or "p/q".
double parse_real(const Json &v, const std::string &where) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) schema_error(where, "expected a number or a rational string");
  const std::string text = v.get<std::string>();
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_real_text(text, where);
  const double num = parse_real_text(text.substr(0, slash), where);
  const double den = parse_real_text(text.substr(slash + 1), where);
  if (den == 0) schema_error(where, "zero denominator");
  return num / den;
}

Complex parse_complex(const Json &v, const std::string &where) {
  if (v.is_number() || v.is_string()) return {parse_real(v, where), 0.0};
  if (!v.is_array() || v.size() != 2) schema_error(where, "expected [re, im]");
  return {parse_real(v[0], where + "[0]"), parse_real(v[1], where + "[1]")};
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Matrix parse_matrix(const Json &v, std::size_t dim, const std::string &where) {
  if (!v.is_array() || v.size() != dim) {
    schema_error(where, "expected " + std::to_string(dim) + " rows");
  }
  Matrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const Json &row = v[r];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != dim) {
      schema_error(rw, "expected " + std::to_string(dim) + " entries");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      m(r, c) = parse_complex(row[c], rw + "[" + std::to_string(c) + "]");
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
        schema_error(rw, "non-finite entry");
      }
    }
  }
  return m;
}

Json matrix_json(const UnitaryMatrix &u) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < u.dim(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < u.dim(); ++c) row.push_back(complex_json(u(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<UnitaryMatrix> parse_ops(const Json &doc, std::size_t dim, const Tolerances &tol) {
  const Json &ops = field(doc, "ops", "protocol");
  if (!ops.is_array() || ops.empty()) schema_error("protocol.ops", "expected a non-empty list");
  std::vector<UnitaryMatrix> out;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const std::string where = "protocol.ops[" + std::to_string(k) + "]";
    const Matrix m = parse_matrix(ops[k], dim, where);
    try {
      out.emplace_back(m, tol.unitary);
    } catch (const Error &e) {
      auto details = e.details();
      details["op"] = static_cast<double>(k);
      throw Error(e.code(), where + ": " + e.what(), details);
    }
  }
  return out;
}

Json ops_json(const std::vector<UnitaryMatrix> &ops) {
  Json out = Json::array();
  for (const auto &op : ops) out.push_back(matrix_json(op));
  return out;
}

SignalConvention parse_convention(const Json &doc, Picture picture) {
  SignalConvention c;
  c.picture = picture;
  if (doc.contains("basis")) c.basis = parse_basis(get_string(doc, "basis", "protocol"));
  if (doc.contains("algebra")) c.algebra = parse_algebra(get_string(doc, "algebra", "protocol"));
  return c;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const auto head = text.substr(0, byte);
    const auto line = 1 + std::count(head.begin(), head.end(), '\n');
    const auto last = head.rfind('\n');
    const auto column = last == std::string_view::npos ? byte : byte - last - 1;
    throw Error(ErrorCode::Schema,
                "malformed JSON at line " + std::to_string(line) + ", column " +
                    std::to_string(column),
                {{"line", static_cast<double>(line)}, {"column", static_cast<double>(column)}});
  }
}

Json load_json_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_json(buffer.str());
  } catch (const Error &e) {
    throw Error(e.code(), path.string() + ": " + e.what(), e.details());
  }
}

std::string dump(const Json &doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// States

bool is_state_document(const Json &doc) { return doc.is_object() && doc.contains("terms"); }

PolynomialState state_from_json(const Json &doc, const Tolerances &tol) {
  check_version(doc, "state");
  const int num_vars = get_int(doc, "num_vars", "state");
  const int dim = get_int(doc, "dim", "state");
  if (num_vars < 1 || num_vars > static_cast<int>(kMaxVars)) {
    schema_error("state.num_vars", "must be 1 or 2");
  }
  if (dim < 2 || dim > 3) schema_error("state.dim", "must be 2 or 3");
  const std::string kind_text = get_string(doc, "kind", "state");
  PolyKind kind;
  if (kind_text == "analytic") {
    kind = PolyKind::Analytic;
  } else if (kind_text == "laurent") {
    kind = PolyKind::Laurent;
  } else {
    schema_error("state.kind", "expected \"analytic\" or \"laurent\"");
  }
  const Json &terms = field(doc, "terms", "state");
  if (!terms.is_array()) schema_error("state.terms", "expected a list");

  PolynomialState::Terms map;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "state.terms[" + std::to_string(i) + "]";
    const Json &exp = field(terms[i], "exp", where);
    if (!exp.is_array() || exp.size() != static_cast<std::size_t>(num_vars)) {
      schema_error(where + ".exp", "expected " + std::to_string(num_vars) + " exponents");
    }
    std::vector<int> e;
    for (const auto &x : exp) {
      if (!x.is_number_integer()) schema_error(where + ".exp", "exponents must be integers");
      e.push_back(x.get<int>());
    }
    const Json &coeff = field(terms[i], "coeff", where);
    if (!coeff.is_array() || coeff.size() != static_cast<std::size_t>(dim)) {
      schema_error(where + ".coeff", "expected " + std::to_string(dim) + " components");
    }
    CVector v(static_cast<std::size_t>(dim));
    for (int c = 0; c < dim; ++c) {
      v[c] = parse_complex(coeff[c], where + ".coeff[" + std::to_string(c) + "]");
    }
    if (!v.is_finite()) schema_error(where + ".coeff", "non-finite component");
    if (!map.emplace(MultiIndex(std::span<const int>(e)), v).second) {
      schema_error(where + ".exp", "duplicate exponent");
    }
  }
  std::optional<PolynomialState> state;
  try {
    state.emplace(num_vars, dim, kind, std::move(map), tol.prune);
  } catch (const Error &e) {
    if (e.is_io_error()) throw;
    throw Error(ErrorCode::Schema, std::string("state: ") + e.what(), e.details());
  }
  if (doc.contains("normalize") && doc["normalize"].is_boolean() &&
      doc["normalize"].get<bool>()) {
    const double w = state->total_weight();
    if (!(w > 0)) schema_error("state", "cannot normalize the zero state");
    return state->scaled(1.0 / std::sqrt(w));
  }
  return *state;
}

Json state_to_json(const PolynomialState &state) {
  Json terms = Json::array();
  for (const auto &[k, v] : state.terms()) {
    Json exp = Json::array();
    for (int e : k.exponents()) exp.push_back(e);
    Json coeff = Json::array();
    for (const auto &z : v.entries()) coeff.push_back(complex_json(z));
    terms.push_back({{"exp", std::move(exp)}, {"coeff", std::move(coeff)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"num_vars", state.num_vars()},
          {"dim", state.dim()},
          {"kind", state.kind() == PolyKind::Analytic ? "analytic" : "laurent"},
          {"terms", std::move(terms)}};
}

// ---------------------------------------------------------------------------
// Protocols

AnyProtocol protocol_from_json(const Json &doc, const Tolerances &tol) {
  check_version(doc, "protocol");
  const std::string family = get_string(doc, "family", "protocol");
  if (family == "univariate-laurent" || family == "univariate-analytic") {
    const Picture picture =
        family == "univariate-laurent" ? Picture::Laurent : Picture::Analytic;
    const SignalConvention conv = parse_convention(doc, picture);
    Protocol1D p;
    if (!doc.contains("ops") && doc.contains("phases")) {
      const auto phases = doc["phases"].get<std::vector<double>>();
      p = make_rotation_protocol(conv, phases);
    } else {
      p.convention = conv;
      p.ops = parse_ops(doc, 2, tol);
      if (doc.contains("phases")) p.phases = doc["phases"].get<std::vector<double>>();
    }
    validate_protocol(p, tol);
    return p;
  }
  if (family == "mqsp-choice") {
    Protocol2DChoice p;
    if (doc.contains("picture")) p.picture = parse_picture(get_string(doc, "picture", "protocol"));
    const Json &choices = field(doc, "choices", "protocol");
    if (choices.is_string()) {
      p.choices = parse_choices(choices.get<std::string>());
    } else if (choices.is_array()) {
      std::string joined;
      for (const auto &c : choices) {
        if (!c.is_string()) schema_error("protocol.choices", "expected \"a\" or \"b\" entries");
        joined += c.get<std::string>();
      }
      p.choices = parse_choices(joined);
    } else {
      schema_error("protocol.choices", "expected a list");
    }
    p.ops = parse_ops(doc, 2, tol);
    if (p.ops.size() != p.choices.size() + 1) {
      schema_error("protocol.ops", "expected one more op than choices");
    }
    return p;
  }
  if (family == "three-dim") {
    Protocol3D p;
    p.ops = parse_ops(doc, 3, tol);
    return p;
  }
  schema_error("protocol.family", "unknown family \"" + family + "\"");
}

Json protocol_to_json(const AnyProtocol &protocol) {
  Json doc{{"schema_version", kSchemaVersion}};
  std::visit(
      [&](const auto &p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Protocol1D>) {
          doc["family"] = p.convention.picture == Picture::Laurent ? "univariate-laurent"
                                                                   : "univariate-analytic";
          doc["basis"] = to_string(p.convention.basis);
          doc["algebra"] = to_string(p.convention.algebra);
          if (p.phases) doc["phases"] = *p.phases;
        } else if constexpr (std::is_same_v<T, Protocol2DChoice>) {
          doc["family"] = "mqsp-choice";
          doc["picture"] = to_string(p.picture);
          doc["choices"] = choices_to_json(p.choices);
        } else {
          doc["family"] = "three-dim";
        }
        doc["ops"] = ops_json(p.ops);
      },
      protocol);
  return doc;
}

PolynomialState evaluate(const AnyProtocol &protocol) {
  return std::visit(
      [](const auto &p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Protocol1D>) {
          return evaluate_protocol_1d(p);
        } else if constexpr (std::is_same_v<T, Protocol2DChoice>) {
          return evaluate_protocol_2d_choice(p);
        } else {
          return evaluate_protocol_3d(p);
        }
      },
      protocol);
}

// ---------------------------------------------------------------------------
// Reports and small parsers

Json report_to_json(const DiagnosticReport &report) {
  Json verdicts = Json::array();
  for (const auto &v : report.verdicts) {
    Json w = Json::object();
    if (!v.witness.indices.empty()) {
      Json idx = Json::array();
      for (const auto &k : v.witness.indices) {
        idx.push_back(std::vector<int>(k.exponents().begin(), k.exponents().end()));
      }
      w["indices"] = std::move(idx);
    }
    if (v.witness.rank) w["rank"] = *v.witness.rank;
    if (v.witness.magnitude) w["magnitude"] = *v.witness.magnitude;
    if (!v.witness.note.empty()) w["note"] = v.witness.note;
    verdicts.push_back({{"id", v.id}, {"passed", v.passed}, {"witness", std::move(w)}});
  }
  Json doc{{"all_passed", report.all_passed()}, {"verdicts", std::move(verdicts)}};
  if (report.implementability) doc["implementability"] = to_string(*report.implementability);
  return doc;
}

Json error_to_json(const Error &error) {
  Json details = Json::object();
  for (const auto &[k, v] : error.details()) details[k] = v;
  return {{"error", to_string(error.code())},
          {"message", error.what()},
          {"details", std::move(details)}};
}

ChoiceVector parse_choices(std::string_view text) {
  ChoiceVector out;
  for (char c : text) {
    if (c == 'a' || c == 'A') {
      out.choices.push_back(Variable::A);
    } else if (c == 'b' || c == 'B') {
      out.choices.push_back(Variable::B);
    } else if (c != ',' && c != ' ') {
      throw Error(ErrorCode::Schema,
                  "choices: unexpected character '" + std::string(1, c) + "'");
    }
  }
  return out;
}

Json choices_to_json(const ChoiceVector &choices) {
  Json out = Json::array();
  for (auto v : choices.choices) out.push_back(v == Variable::A ? "a" : "b");
  return out;
}

Picture parse_picture(std::string_view text) {
  if (text == "laurent") return Picture::Laurent;
  if (text == "analytic") return Picture::Analytic;
  throw Error(ErrorCode::Schema, "unknown picture \"" + std::string(text) + "\"");
}

SignalBasis parse_basis(std::string_view text) {
  if (text == "Wz" || text == "wz") return SignalBasis::Wz;
  if (text == "Wx" || text == "wx") return SignalBasis::Wx;
  throw Error(ErrorCode::Schema, "unknown signal basis \"" + std::string(text) + "\"");
}

Algebra parse_algebra(std::string_view text) {
  if (text == "full") return Algebra::FullSU2;
  if (text == "x-rotations") return Algebra::XRotations;
  if (text == "z-rotations") return Algebra::ZRotations;
  throw Error(ErrorCode::Schema, "unknown algebra \"" + std::string(text) + "\"");
}

std::string first_difference(const Json &actual, const Json &expected, double tol) {
  if (actual.is_number() && expected.is_number()) {
    const double a = actual.get<double>();
    const double e = expected.get<double>();
    return std::abs(a - e) <= tol * std::max(1.0, std::abs(e)) ? "" : "/";
  }
  if (actual.type() != expected.type()) return "/";
  if (actual.is_array()) {
    if (actual.size() != expected.size()) return "/";
    for (std::size_t i = 0; i < actual.size(); ++i) {
      const std::string d = first_difference(actual[i], expected[i], tol);
      if (!d.empty()) return "/" + std::to_string(i) + (d == "/" ? "" : d);
    }
    return "";
  }
  if (actual.is_object()) {
    if (actual.size() != expected.size()) return "/";
    for (const auto &[key, value] : expected.items()) {
      if (!actual.contains(key)) return "/" + key;
      const std::string d = first_difference(actual[key], value, tol);
      if (!d.empty()) return "/" + key + (d == "/" ? "" : d);
    }
    return "";
  }
  return actual == expected ? "" : "/";
}

}  // namespace qspforge::io
