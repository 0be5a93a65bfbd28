// Rational functions on the curve as unreduced fractions of canonical-form
// polynomials. Equality is exact cross-multiplication modulo the curve;
// valuations are computed exactly (no series needed) through the norm
// A^2 - rhs B^2, with local expansions kept for evaluation at 0/0 points.
#ifndef ELLSHIFT_CURVEFUNC_HPP
#define ELLSHIFT_CURVEFUNC_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellshift/curvepoly.hpp"
#include "ellshift/series.hpp"

namespace ellshift {

template <class F>
class CurveFunc {
  CurvePoly<F> num_, den_;

 public:
  CurveFunc() = default;
  CurveFunc(CurvePoly<F> num, CurvePoly<F> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.zero()) throw DivisionByZero("curve function with zero denominator");
  }
  explicit CurveFunc(CurvePoly<F> num)
      : num_(std::move(num)), den_(CurvePoly<F>::constant(num_.ring(), one_of_ring())) {}

  static CurveFunc one(const CurveParams<F>& ring, const F& one) {
    return CurveFunc(CurvePoly<F>::constant(ring, one));
  }

  const CurvePoly<F>& num() const { return num_; }
  const CurvePoly<F>& den() const { return den_; }
  bool zero() const { return num_.zero(); }
  const CurveParams<F>& ring() const { return num_.ring(); }

  friend bool operator==(const CurveFunc& f, const CurveFunc& g) {
    return (f.num_ * g.den_) == (g.num_ * f.den_);
  }
  friend bool operator!=(const CurveFunc& f, const CurveFunc& g) { return !(f == g); }

  friend CurveFunc operator+(const CurveFunc& f, const CurveFunc& g) {
    return CurveFunc(f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_);
  }
  friend CurveFunc operator-(const CurveFunc& f, const CurveFunc& g) {
    return CurveFunc(f.num_ * g.den_ - g.num_ * f.den_, f.den_ * g.den_);
  }
  CurveFunc operator-() const { return CurveFunc(-num_, den_); }
  friend CurveFunc operator*(const CurveFunc& f, const CurveFunc& g) {
    return CurveFunc(f.num_ * g.num_, f.den_ * g.den_);
  }
  friend CurveFunc operator/(const CurveFunc& f, const CurveFunc& g) {
    if (g.zero()) throw DivisionByZero("curve function division by zero");
    return CurveFunc(f.num_ * g.den_, f.den_ * g.num_);
  }
  CurveFunc reciprocal() const {
    if (zero()) throw DivisionByZero("reciprocal of zero curve function");
    return CurveFunc(den_, num_);
  }
  friend CurveFunc operator*(const F& s, const CurveFunc& f) {
    return CurveFunc(s * f.num_, f.den_);
  }

  CurveFunc pow(int n) const {
    if (n < 0) return reciprocal().pow(-n);
    F one = one_of(den_.lead_coeff());
    CurveFunc r = CurveFunc(CurvePoly<F>::constant(ring(), one));
    CurveFunc base = *this;
    while (n > 0) {
      if (n & 1) r = r * base;
      base = base * base;
      n >>= 1;
    }
    return r;
  }

  int val_infinity() const {
    if (zero()) throw Error("Internal", "valuation of zero function");
    return num_.val_infinity() - den_.val_infinity();
  }

  F dominant_coefficient() const {
    if (zero()) throw Error("Internal", "dominant coefficient of zero function");
    return num_.dominant_coefficient() / den_.dominant_coefficient();
  }

  std::string str(std::string (*fmt)(const F&)) const {
    return "(" + num_.str(fmt) + ") / (" + den_.str(fmt) + ")";
  }

 private:
  F one_of_ring() const {
    return one_of(num_.zero() ? (is_zero(num_.ring().a) ? num_.ring().b : num_.ring().a)
                              : num_.lead_coeff());
  }
};

// ---- exact valuations (concrete coefficient field) ----

// multiplicity of x0 as a root of g
inline int order_at(const UniPoly<FieldElement>& g, const FieldElement& x0) {
  if (g.zero()) throw Error("Internal", "order_at of zero polynomial");
  UniPoly<FieldElement> lin({-x0, one_of(g.lc())});
  int k = 0;
  UniPoly<FieldElement> cur = g;
  while (true) {
    auto [q, r] = divmod(cur, lin);
    if (!r.zero()) return k;
    cur = std::move(q);
    ++k;
    if (cur.zero()) return k;
  }
}

// exact valuation of a nonzero curve polynomial at a point
inline int valuation_at(const CurvePoly<FieldElement>& P, const CurvePoint& p) {
  if (P.zero()) throw Error("Internal", "valuation of zero curve polynomial");
  if (p.is_infinity()) return P.val_infinity();
  const FieldElement& x0 = p.x();
  const FieldElement& y0 = p.y();
  constexpr int INF = 1 << 26;
  int oa = P.A().zero() ? INF : order_at(P.A(), x0);
  int ob = P.B().zero() ? INF : order_at(P.B(), x0);
  if (is_zero(y0)) {
    // ramified: val(u - x0) = 2, val(v) = 1, parities never cancel
    int wa = P.A().zero() ? INF : 2 * oa;
    int wb = P.B().zero() ? INF : 1 + 2 * ob;
    return std::min(wa, wb);
  }
  int k = std::min(oa, ob);
  UniPoly<FieldElement> lin({-x0, one_of(y0)});
  UniPoly<FieldElement> shifted_pow = lin.pow(k);
  UniPoly<FieldElement> At = P.A().zero() ? UniPoly<FieldElement>() : P.A() / shifted_pow;
  UniPoly<FieldElement> Bt = P.B().zero() ? UniPoly<FieldElement>() : P.B() / shifted_pow;
  FieldElement at_val = At.eval(x0) + y0 * Bt.eval(x0);
  if (!is_zero(at_val)) return k;
  // A~ + v B~ vanishes but A~ - v B~ does not; use the norm
  UniPoly<FieldElement> nrm = At * At - params_of(p.curve()).rhs() * (Bt * Bt);
  return k + order_at(nrm, x0);
}

inline int valuation_at(const CurveFunc<FieldElement>& f, const CurvePoint& p) {
  if (f.zero()) throw Error("Internal", "valuation of zero function");
  return valuation_at(f.num(), p) - valuation_at(f.den(), p);
}

// ---- translation pullbacks ----

// the coordinate functions of p |-> p + q as rational functions of p
struct TranslationMap {
  CurveFunc<FieldElement> u, v;
  bool identity = false;
};

inline TranslationMap translation_by(const CurvePtr& c, const CurvePoint& q) {
  TranslationMap t;
  if (q.is_infinity()) {
    t.identity = true;
    return t;
  }
  auto ring = params_of(c);
  FieldElement one = FieldElement::one(c->field());
  CurvePoly<FieldElement> U = CurvePoly<FieldElement>::coordinate_u(ring, one);
  CurvePoly<FieldElement> V = CurvePoly<FieldElement>::coordinate_v(ring, one);
  CurvePoly<FieldElement> xq = CurvePoly<FieldElement>::constant(ring, q.x());
  CurvePoly<FieldElement> yq = CurvePoly<FieldElement>::constant(ring, q.y());
  CurveFunc<FieldElement> s(V - yq, U - xq);  // chord slope through p and -q... through p, q
  CurveFunc<FieldElement> u_new = s * s - CurveFunc<FieldElement>(U + xq);
  CurveFunc<FieldElement> v_new = s * (CurveFunc<FieldElement>(U) - u_new) - CurveFunc<FieldElement>(V);
  t.u = u_new;
  t.v = v_new;
  return t;
}

// f(p + q) as a function of p
inline CurveFunc<FieldElement> pullback(const CurvePoly<FieldElement>& P, const TranslationMap& t) {
  if (t.identity) return CurveFunc<FieldElement>(P);
  auto ring = P.ring();
  FieldElement one = one_of(is_zero(ring.a) ? ring.b : ring.a);
  CurveFunc<FieldElement> acc(CurvePoly<FieldElement>::constant(ring, FieldElement{}),
                              CurvePoly<FieldElement>::constant(ring, one));
  // A(U) + V B(U), Horner in U
  for (int k = P.A().degree(); k >= 0; --k)
    acc = acc * t.u + CurveFunc<FieldElement>(CurvePoly<FieldElement>::constant(ring, P.A().coeff(k)));
  CurveFunc<FieldElement> accB(CurvePoly<FieldElement>::constant(ring, FieldElement{}),
                               CurvePoly<FieldElement>::constant(ring, one));
  for (int k = P.B().degree(); k >= 0; --k)
    accB = accB * t.u + CurveFunc<FieldElement>(CurvePoly<FieldElement>::constant(ring, P.B().coeff(k)));
  return acc + t.v * accB;
}

inline CurveFunc<FieldElement> pullback(const CurveFunc<FieldElement>& f, const TranslationMap& t) {
  if (t.identity) return f;
  return pullback(f.num(), t) / pullback(f.den(), t);
}

// translate_pullback(f, n): p |-> f(p + n delta)
inline CurveFunc<FieldElement> translate_pullback(const CurveFunc<FieldElement>& f,
                                                  const CurvePtr& c, const CurvePoint& delta,
                                                  long n) {
  return pullback(f, translation_by(c, scalar_mul(n, delta)));
}

// ---- local expansions and evaluation ----

struct LocalExpansion {
  CurvePoint center;
  enum class Uniformizer { UOverV, V, UMinusX0 } uniformizer;
  Series<FieldElement> series;  // expansion of the function
  int order() const { return series.valuation(); }
};

inline Series<FieldElement> expand_poly(const CurvePoly<FieldElement>& P, const CurveExpansion& e,
                                        int terms) {
  Series<FieldElement> su = eval_series(P.A(), e.u, terms);
  Series<FieldElement> sb = eval_series(P.B(), e.u, terms);
  return su + e.v * sb;
}

// expansion of a nonzero curve function around p, with enough terms that the
// leading coefficient is present; truncation starts at 8 and doubles
inline LocalExpansion expand_function(const CurveFunc<FieldElement>& f, const CurvePoint& p) {
  if (f.zero()) throw Error("Internal", "expansion of zero function");
  LocalExpansion out;
  out.center = p;
  const CurvePtr curve = p.curve();
  out.uniformizer = p.is_infinity()
                        ? LocalExpansion::Uniformizer::UOverV
                        : (is_zero(p.y()) ? LocalExpansion::Uniformizer::V
                                          : LocalExpansion::Uniformizer::UMinusX0);
  for (int terms = 8; terms <= (1 << 12); terms *= 2) {
    CurveExpansion e = expand_at(curve, p, terms);
    Series<FieldElement> sn = expand_poly(f.num(), e, terms);
    Series<FieldElement> sd = expand_poly(f.den(), e, terms);
    if (!sn.known_nonzero() || !sd.known_nonzero()) continue;
    out.series = sn / sd;
    return out;
  }
  throw Error("Internal", "expansion truncation exhausted");
}

// exact value when val = 0, zero marker when val > 0, pole marker otherwise
struct Evaluation {
  enum class Kind { Value, Zero, Pole } kind;
  FieldElement value;  // set for Value (and Zero, as 0)
};

inline Evaluation evaluate(const CurveFunc<FieldElement>& f, const CurvePoint& p) {
  if (f.zero()) return {Evaluation::Kind::Zero, FieldElement{}};
  int v = valuation_at(f, p);
  if (v > 0) return {Evaluation::Kind::Zero, FieldElement{}};
  if (v < 0) return {Evaluation::Kind::Pole, FieldElement{}};
  if (!p.is_infinity()) {
    FieldElement dn = f.den().eval(p.x(), p.y());
    if (!is_zero(dn)) return {Evaluation::Kind::Value, f.num().eval(p.x(), p.y()) / dn};
  } else {
    int wn = f.num().val_infinity(), wd = f.den().val_infinity();
    if (wn > wd) return {Evaluation::Kind::Zero, FieldElement{}};  // unreachable, v==0
    if (wn == wd)
      return {Evaluation::Kind::Value,
              f.num().dominant_coefficient() / f.den().dominant_coefficient()};
  }
  // 0/0 at an affine point: compare leading series coefficients
  LocalExpansion le = expand_function(f, p);
  int v2 = le.series.valuation();
  if (v2 != 0) throw Error("Internal", "evaluation/valuation mismatch");
  return {Evaluation::Kind::Value, le.series.coeff(0)};
}

}  // namespace ellshift

#endif
