// Theta factors (order-1 objects defined by their shift ratio) and the
// Solution bundle rational x Theta x Hyper. Only ratios are ever computed
// with; the factors themselves stay symbolic.
#ifndef ELLSHIFT_THETA_HPP
#define ELLSHIFT_THETA_HPP

#include <optional>
#include <string>
#include <utility>

#include "ellshift/divisor.hpp"

namespace ellshift {

// shift ratio of Theta_{lambda,pole}: the function with divisor
//   -I_(pole - delta) + I_pole + I_(-delta) - I_O
// normalized so its dominant coefficient at O is 1, then scaled by lambda;
// for pole = O the ratio is the constant lambda.
inline CurveFunc<FieldElement> theta_ratio(const FieldElement& lambda, const CurvePoint& pole,
                                           const CurvePoint& delta, const CurvePtr& c) {
  if (is_zero(lambda)) throw Error("Internal", "theta ratio with lambda = 0");
  auto ring = params_of(c);
  if (pole.is_infinity())
    return CurveFunc<FieldElement>(CurvePoly<FieldElement>::constant(ring, lambda));
  CurvePoint shifted = sub(pole, delta);
  CurveFunc<FieldElement> r(line_through(c, pole, -delta), vertical_through(c, shifted));
  FieldElement dom = r.dominant_coefficient();
  return (lambda / dom) * r;
}

struct ThetaFactor {
  FieldElement lambda;
  CurvePoint pole;  // may be O
};

struct HyperFactor {
  CurveFunc<FieldElement> ratio;  // H(p + delta) / H(p)
};

struct Solution {
  CurveFunc<FieldElement> rational;  // nonzero
  std::optional<ThetaFactor> theta;  // absent: lambda = 1, pole = O
  std::optional<HyperFactor> hyper;
};

// exact f(p + i delta) / f(p) as an element of K(C)
inline CurveFunc<FieldElement> solution_ratio(const Solution& sol, long i, const CurvePtr& c,
                                              const CurvePoint& delta) {
  FieldPtr K = c->field();
  auto ring = params_of(c);
  CurveFunc<FieldElement> r = CurveFunc<FieldElement>::one(ring, FieldElement::one(K));
  if (i == 0) return r;
  if (i < 0) throw Error("Internal", "solution_ratio with negative shift");
  // rational part: F(p + i delta) / F(p)
  r = translate_pullback(sol.rational, c, delta, i) / sol.rational;
  // theta part: prod_{j<i} (lambda R0)(p + j delta)
  if (sol.theta) {
    CurveFunc<FieldElement> tr = theta_ratio(sol.theta->lambda, sol.theta->pole, delta, c);
    for (long j = 0; j < i; ++j) r = r * translate_pullback(tr, c, delta, j);
  }
  if (sol.hyper) {
    for (long j = 0; j < i; ++j) r = r * translate_pullback(sol.hyper->ratio, c, delta, j);
  }
  return r;
}

// two solutions are the same function up to a nonzero constant iff the shift
// ratio of their quotient is identically 1
inline bool solutions_proportional(const Solution& a, const Solution& b, const CurvePtr& c,
                                   const CurvePoint& delta) {
  CurveFunc<FieldElement> ra = solution_ratio(a, 1, c, delta);
  CurveFunc<FieldElement> rb = solution_ratio(b, 1, c, delta);
  return ra == rb;
}

}  // namespace ellshift

#endif
