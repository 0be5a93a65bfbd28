// JSON schemas for equations, divisors and solutions. All numbers travel as
// exact "num/den" strings; nothing is ever serialized through floating point.
#ifndef ELLSHIFT_JSON_IO_HPP
#define ELLSHIFT_JSON_IO_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ellshift/equation.hpp"
#include "ellshift/solve.hpp"

namespace ellshift {

using Json = nlohmann::json;

inline Json field_element_json(const FieldElement& e, const FieldPtr& K) {
  Json arr = Json::array();
  std::vector<Rational> cs = e.coeffs();
  cs.resize(K->degree(), Rational(0));
  for (const auto& q : cs) arr.push_back(to_string(q));
  return arr;
}

inline FieldElement field_element_from_json(const Json& j, const FieldPtr& K) {
  if (j.is_string()) return FieldElement::from(K, parse_rational(j.get<std::string>()));
  if (!j.is_array()) throw SchemaError("field element must be an array of num/den strings");
  std::vector<Rational> cs;
  for (const auto& item : j) {
    if (!item.is_string()) throw SchemaError("field element entries must be strings");
    cs.push_back(parse_rational(item.get<std::string>()));
  }
  if (cs.empty() || cs.size() > static_cast<size_t>(K->degree()))
    throw SchemaError("field element has wrong length for the field degree");
  cs.resize(K->degree(), Rational(0));
  return FieldElement(K, cs);
}

inline Json point_json(const CurvePoint& p, const FieldPtr& K) {
  if (p.is_infinity()) return Json("O");
  Json j = Json::array();
  j.push_back(field_element_json(p.x(), K));
  j.push_back(field_element_json(p.y(), K));
  return j;
}

inline CurvePoint point_from_json(const Json& j, const CurvePtr& c) {
  if (j.is_string()) {
    if (j.get<std::string>() == "O") return CurvePoint::infinity(c);
    throw SchemaError("point must be [\"x\",\"y\"] arrays or the string \"O\"");
  }
  if (!j.is_array() || j.size() != 2) throw SchemaError("point must have two coordinates");
  return CurvePoint(c, field_element_from_json(j[0], c->field()),
                    field_element_from_json(j[1], c->field()));
}

inline Json curve_poly_json(const CurvePoly<FieldElement>& p, const FieldPtr& K) {
  Json terms = Json::array();
  for (int k = 0; k <= p.A().degree(); ++k) {
    if (is_zero(p.A().coeff(k))) continue;
    terms.push_back(Json{{"du", k}, {"dv", 0}, {"coeff", field_element_json(p.A().coeff(k), K)}});
  }
  for (int k = 0; k <= p.B().degree(); ++k) {
    if (is_zero(p.B().coeff(k))) continue;
    terms.push_back(Json{{"du", k}, {"dv", 1}, {"coeff", field_element_json(p.B().coeff(k), K)}});
  }
  return terms;
}

inline CurvePoly<FieldElement> curve_poly_from_json(const Json& j, const CurvePtr& c) {
  if (!j.is_array()) throw SchemaError("polynomial must be an array of terms");
  std::vector<std::tuple<int, int, FieldElement>> terms;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("du") || !t.contains("dv") || !t.contains("coeff"))
      throw SchemaError("term must be {du, dv, coeff}");
    int du = t.at("du").get<int>();
    int dv = t.at("dv").get<int>();
    if (du < 0 || dv < 0) throw SchemaError("negative exponent in term");
    terms.emplace_back(du, dv, field_element_from_json(t.at("coeff"), c->field()));
  }
  return CurvePoly<FieldElement>::from_terms(params_of(c), terms);
}

inline Json divisor_json(const Divisor& d, const FieldPtr& K) {
  Json arr = Json::array();
  for (const auto& [p, m] : d.entries())
    arr.push_back(Json{{"point", point_json(p, K)}, {"multiplicity", m}});
  return arr;
}

struct ParsedInput {
  FieldPtr field;
  CurvePtr curve;
  CurvePoint delta;
  std::shared_ptr<EllipticDifferenceEquation> equation;
};

// Parse and fully validate an equation document:
// {"field":{"minpoly":[...]}, "curve":{"a":...,"b":...}, "delta":..., "coeffs":[[term...],...]}
inline ParsedInput parse_input(const Json& doc, int torsion_cap = 16,
                               const HeightContext& hctx = {}) {
  if (!doc.is_object()) throw SchemaError("input document must be a JSON object");
  for (const char* key : {"field", "curve", "delta", "coeffs"})
    if (!doc.contains(key)) throw SchemaError(std::string("missing key: ") + key);

  const Json& jf = doc.at("field");
  if (!jf.is_object() || !jf.contains("minpoly"))
    throw SchemaError("field must be {\"minpoly\": [...]}");
  std::vector<Rational> mp;
  for (const auto& s : jf.at("minpoly")) mp.push_back(parse_rational(s.get<std::string>()));
  ParsedInput out;
  out.field = std::make_shared<FieldDescription>(mp);

  const Json& jc = doc.at("curve");
  if (!jc.is_object() || !jc.contains("a") || !jc.contains("b"))
    throw SchemaError("curve must be {\"a\":..., \"b\":...}");
  out.curve = Curve::make(field_element_from_json(jc.at("a"), out.field),
                          field_element_from_json(jc.at("b"), out.field));

  out.delta = point_from_json(doc.at("delta"), out.curve);
  if (out.delta.is_infinity()) throw TorsionShift(1);
  {
    HeightCalculator calc(out.curve, hctx);
    auto order = calc.torsion_order(out.delta, torsion_cap);
    if (order) throw TorsionShift(*order);
  }

  const Json& jcs = doc.at("coeffs");
  if (!jcs.is_array() || jcs.size() < 2)
    throw SchemaError("coeffs must list a_0 .. a_l with l >= 1");
  std::vector<CurvePoly<FieldElement>> coeffs;
  for (const auto& jp : jcs) coeffs.push_back(curve_poly_from_json(jp, out.curve));
  out.equation =
      std::make_shared<EllipticDifferenceEquation>(out.curve, out.delta, std::move(coeffs));
  return out;
}

inline Json solution_json(const Solution& s, const FieldPtr& K) {
  Json j;
  j["rational"] = Json{{"num", curve_poly_json(s.rational.num(), K)},
                       {"den", curve_poly_json(s.rational.den(), K)}};
  if (s.theta) {
    j["theta"] = Json{{"lambda", field_element_json(s.theta->lambda, K)},
                      {"pole", point_json(s.theta->pole, K)}};
  }
  if (s.hyper) {
    j["hyper"] = Json{{"ratio", Json{{"num", curve_poly_json(s.hyper->ratio.num(), K)},
                                     {"den", curve_poly_json(s.hyper->ratio.den(), K)}}}};
  }
  return j;
}

inline Json error_json(const Error& e) {
  return Json{{"error", Json{{"code", e.code()}, {"message", e.what()}}}};
}

}  // namespace ellshift

#endif
