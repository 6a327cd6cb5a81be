#pragma once

#include <json.hpp>

#include "fpbrace/brace_verify.hpp"
#include "fpbrace/classify.hpp"
#include "fpbrace/holomorph.hpp"
#include "fpbrace/oracle.hpp"

// Wire formats. Field elements are coefficient sequences (low degree first);
// every container is self-describing through an embedded FieldSpec.

namespace fpbrace {

using json = nlohmann::json;

inline json to_json(const FieldSpec& spec) {
  return json{{"p", spec.p()}, {"k", spec.k()}, {"modulus", spec.modulus()}};
}

inline json to_json(const FieldElement& e) { return json(e.coeffs()); }

inline json to_json(const Vec& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(to_json(e));
  return a;
}

inline json to_json(const MatFp& m) {
  json rows = json::array();
  for (size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return json{{"field", to_json(*m.spec())}, {"rows", rows}};
}

inline json to_json(SquareClass c) {
  return c == SquareClass::Square ? "square" : "nonsquare";
}

inline json theta_to_json(const DefiningMatrix& t) {
  json rows = json::array();
  for (size_t i = 0; i < t.m(); ++i) {
    json row = json::array();
    for (size_t j = 0; j < t.m(); ++j) row.push_back(to_json(t.cell(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const AlgebraSpec& alg) {
  return json{{"field", to_json(*alg.field)},
              {"n", alg.n},
              {"d", alg.d},
              {"theta", theta_to_json(alg.theta)}};
}

inline json to_json(const Verdict& v) {
  json w;
  if (v.witness.empty()) {
    w = nullptr;
  } else {
    w = json::array();
    for (const auto& x : v.witness) w.push_back(to_json(x));
  }
  return json{{"pass", v.pass},
              {"axiom", v.axiom},
              {"witness", w},
              {"mode", v.mode},
              {"seed", v.seed ? json(*v.seed) : json(nullptr)}};
}

inline json to_json(const AffineMap& m) {
  return json{{"linear", to_json(m.linear())}, {"translation", to_json(m.translation())}};
}

inline json to_json(const ThetaReport& r) {
  return json{{"symmetric", r.symmetric},
              {"independent", r.independent},
              {"invertible", r.invertible ? json(*r.invertible) : json(nullptr)},
              {"dependency", r.dependency ? to_json(*r.dependency) : json(nullptr)},
              {"valid", r.valid()}};
}

inline json to_json(const ClassLabel& c) {
  return json{{"class", c.form == AlgebraClass::IdentityForm ? "identity" : "nonsquare"},
              {"p", c.p},
              {"k", c.k},
              {"n", c.n}};
}

inline json to_json(const IsoWitness& w) {
  return json{{"A", to_json(w.A)}, {"l", to_json(w.l)}};
}

inline json to_json(const PropertyCheck& c) {
  json w = json::array();
  for (const auto& x : c.witness) w.push_back(to_json(x));
  return json{{"pass", c.pass}, {"witness", c.witness.empty() ? json(nullptr) : w}};
}

inline json to_json(const SubgroupReport& r) {
  return json{{"closure", to_json(r.closure)},
              {"abelian", to_json(r.abelian)},
              {"regular", to_json(r.regular)},
              {"exponent_p", to_json(r.exponent_p)},
              {"normalized_by_translations", to_json(r.normalized_by_translations)},
              {"all", r.all()}};
}

inline json to_json(const BibraceReport& r) {
  json j = to_json(r.verdict);
  j["nilpotency_index"] = r.nilpotency_index;
  j["consistent_with_nilpotency"] = r.consistent_with_nilpotency;
  return j;
}

// ---------------------------------------------------------------------------
// Parsing. Containers embed their FieldSpec; elements need one from context.
// ---------------------------------------------------------------------------

inline FieldSpecPtr parse_field_spec(const json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("k"))
    throw Error(errc::bad_input, "field spec must have p and k");
  const uint32_t p = j.at("p").get<uint32_t>();
  const uint32_t k = j.at("k").get<uint32_t>();
  if (j.contains("modulus") && !j.at("modulus").is_null())
    return FieldSpec::create(p, k, j.at("modulus").get<std::vector<uint32_t>>());
  return FieldSpec::create(p, k);
}

inline FieldElement parse_element(const FieldSpecPtr& spec, const json& j) {
  if (!j.is_array()) throw Error(errc::bad_input, "element must be a coefficient array");
  return FieldElement(spec, j.get<std::vector<uint32_t>>());
}

inline Vec parse_vec(const FieldSpecPtr& spec, const json& j) {
  if (!j.is_array()) throw Error(errc::bad_input, "vector must be an array");
  Vec v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(parse_element(spec, e));
  return v;
}

inline MatFp parse_matrix(const json& j) {
  if (!j.is_object() || !j.contains("field") || !j.contains("rows"))
    throw Error(errc::bad_input, "matrix must have field and rows");
  const FieldSpecPtr spec = parse_field_spec(j.at("field"));
  std::vector<Vec> rows;
  for (const auto& r : j.at("rows")) rows.push_back(parse_vec(spec, r));
  return MatFp::from_rows(spec, rows);
}

inline AlgebraSpec parse_algebra_spec(const json& j) {
  if (!j.is_object() || !j.contains("field") || !j.contains("n") || !j.contains("d") ||
      !j.contains("theta"))
    throw Error(errc::bad_input, "algebra spec must have field, n, d, theta");
  const FieldSpecPtr spec = parse_field_spec(j.at("field"));
  const size_t n = j.at("n").get<size_t>();
  const size_t d = j.at("d").get<size_t>();
  if (n < 2 || d < 1 || d >= n) throw Error(errc::bad_input, "need n >= 2, 1 <= d < n");
  const size_t m = n - d;
  const json& tj = j.at("theta");
  if (!tj.is_array() || tj.size() != m)
    throw Error(errc::bad_input, "theta must be an m x m grid");
  DefiningMatrix theta(spec, m, d);
  for (size_t i = 0; i < m; ++i) {
    if (!tj[i].is_array() || tj[i].size() != m)
      throw Error(errc::bad_input, "theta must be an m x m grid");
    for (size_t jx = 0; jx < m; ++jx) {
      const Vec cell = parse_vec(spec, tj[i][jx]);
      if (cell.size() != d) throw Error(errc::bad_input, "theta cells must have length d");
      for (size_t t = 0; t < d; ++t) theta.entry(i, jx, t) = cell[t];
    }
  }
  return AlgebraSpec(spec, n, d, std::move(theta));
}

}  // namespace fpbrace
