// Divisors on the curve: properness, principality, realization by explicit
// line/vertical products (Miller-style fold), and complete divisors of
// functions with the RootOutsideField completeness certificate.
#ifndef ELLSHIFT_DIVISOR_HPP
#define ELLSHIFT_DIVISOR_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ellshift/curvefunc.hpp"
#include "ellshift/roots.hpp"

namespace ellshift {

class Divisor {
  CurvePtr curve_;
  std::map<CurvePoint, int> m_;  // no zero entries

 public:
  Divisor() = default;
  explicit Divisor(CurvePtr c) : curve_(std::move(c)) {}

  const CurvePtr& curve() const { return curve_; }
  const std::map<CurvePoint, int>& entries() const { return m_; }
  bool empty() const { return m_.empty(); }

  int at(const CurvePoint& p) const {
    auto it = m_.find(p);
    return it == m_.end() ? 0 : it->second;
  }
  int at_infinity() const { return curve_ ? at(CurvePoint::infinity(curve_)) : 0; }

  void add(const CurvePoint& p, int mult) {
    if (mult == 0) return;
    if (!curve_) curve_ = p.curve();
    auto [it, inserted] = m_.emplace(p, mult);
    if (!inserted) {
      it->second += mult;
      if (it->second == 0) m_.erase(it);
    }
  }

  friend Divisor operator+(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    if (!r.curve_) r.curve_ = b.curve_;
    for (const auto& [p, m] : b.m_) r.add(p, m);
    return r;
  }
  friend Divisor operator-(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    if (!r.curve_) r.curve_ = b.curve_;
    for (const auto& [p, m] : b.m_) r.add(p, -m);
    return r;
  }
  Divisor operator-() const {
    Divisor r(curve_);
    for (const auto& [p, m] : m_) r.m_[p] = -m;
    return r;
  }
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.m_ == b.m_; }

  int total() const {  // degree including the O entry
    int s = 0;
    for (const auto& [p, m] : m_) s += m;
    return s;
  }
  Divisor affine_part() const {
    Divisor r(curve_);
    for (const auto& [p, m] : m_)
      if (!p.is_infinity()) r.m_[p] = m;
    return r;
  }

  std::string str() const {
    if (m_.empty()) return "0";
    std::string s;
    for (const auto& [p, m] : m_) {
      if (!s.empty()) s += " + ";
      s += std::to_string(m) + "*[" + p.str() + "]";
    }
    return s;
  }
};

inline bool is_proper(const Divisor& d) { return d.total() == 0; }

inline CurvePoint elliptic_sum(const Divisor& d) {
  CurvePoint acc = d.curve() ? CurvePoint::infinity(d.curve()) : CurvePoint();
  for (const auto& [p, m] : d.entries()) {
    if (p.is_infinity()) continue;
    acc = add(acc, scalar_mul(m, p));
  }
  return acc;
}

inline bool is_principal(const Divisor& d) {
  return is_proper(d) && elliptic_sum(d).is_infinity();
}

// moves the multiplicity at p to p + n*delta, merging with any existing entry
inline Divisor shift_point(const Divisor& d, const CurvePoint& p, long n, const CurvePoint& delta) {
  int m = d.at(p);
  if (m == 0) throw Error("Internal", "shift_point: point not in support");
  Divisor r = d;
  r.add(p, -m);
  r.add(add(p, scalar_mul(n, delta)), m);
  return r;
}

// ---- divisors of functions ----

// all affine zeros of a nonzero curve polynomial, with exact multiplicities;
// RootOutsideField if any zero is not K-rational (certified by degree count)
inline std::vector<std::pair<CurvePoint, int>> affine_zeros(const CurvePoly<FieldElement>& P,
                                                            const CurvePtr& c,
                                                            const std::string& label) {
  if (P.zero()) throw Error("Internal", "affine_zeros of zero polynomial");
  std::vector<std::pair<CurvePoint, int>> out;
  int weight = P.weight();
  if (weight == 0) return out;

  UniPoly<FieldElement> nrm = P.norm();
  if (nrm.zero()) throw Error("Internal", "zero norm of nonzero curve polynomial");

  // The degree count below certifies completeness. A shortfall can also mean
  // the root reconstruction's denominator cap was too small, so retry with
  // raised starting precision before concluding RootOutsideField.
  std::vector<mpfr_prec_t> ladder = {192};
  for (mpfr_prec_t lvl : {static_cast<mpfr_prec_t>(1024), static_cast<mpfr_prec_t>(8192)}) {
    mpfr_prec_t b = std::min(lvl, precision_cap());
    if (b > ladder.back()) ladder.push_back(b);
  }
  for (mpfr_prec_t bits : ladder) {
    out.clear();
    std::vector<FieldRoot> xs;
    if (nrm.degree() > 0) xs = roots_in_field(nrm, bits);
    int found = 0;
    for (const auto& xr : xs) {
      const FieldElement& x0 = xr.value;
      FieldElement fx = c->rhs(x0);
      std::vector<CurvePoint> pts;
      FieldElement bx = P.B().zero() ? FieldElement{} : P.B().eval(x0);
      if (!is_zero(bx)) {
        FieldElement y0 = -(P.A().eval(x0)) / bx;
        if (y0 * y0 == fx) pts.emplace_back(c, x0, y0);
        // the conjugate sheet may vanish too when A also has a factor there
        if (!is_zero(y0)) {
          CurvePoint conj(c, x0, -y0);
          if (is_zero(P.A().eval(x0) + (-y0) * bx)) pts.push_back(conj);
        }
      } else {
        // B(x0) = 0 (so A(x0) = 0 as well): both sheets vanish if they exist in K
        if (is_zero(fx)) {
          pts.emplace_back(c, x0, FieldElement::from(c->field(), Rational(0)));
        } else {
          // y^2 = rhs(x0): look for a square root in K
          FieldPtr K = c->field();
          UniPoly<FieldElement> sq({-fx, FieldElement{}, FieldElement::one(K)});
          auto ys = roots_in_field(sq, bits);
          for (const auto& yr : ys) pts.emplace_back(c, x0, yr.value);
        }
      }
      for (const auto& p : pts) {
        int v = valuation_at(P, p);
        if (v > 0) {
          out.emplace_back(p, v);
          found += v;
        }
      }
    }
    if (found == weight) return out;
  }
  throw RootOutsideField(label);
}

// complete divisor of a nonzero function; proper and principal by construction
inline Divisor divisor_of(const CurveFunc<FieldElement>& f, const CurvePtr& c,
                          const std::string& label = "function") {
  if (f.zero()) throw Error("Internal", "divisor of zero function");
  Divisor d(c);
  for (const auto& [p, m] : affine_zeros(f.num(), c, label)) d.add(p, m);
  for (const auto& [p, m] : affine_zeros(f.den(), c, label)) d.add(p, -m);
  d.add(CurvePoint::infinity(c), f.num().val_infinity() - f.den().val_infinity());
  return d;
}

// ---- realization ----

// the line through p and q (tangent when p == q), as a curve polynomial;
// divisor = I_p + I_q + I_(-(p+q)) - 3 I_O
inline CurvePoly<FieldElement> line_through(const CurvePtr& c, const CurvePoint& p,
                                            const CurvePoint& q) {
  auto ring = params_of(c);
  FieldPtr K = c->field();
  FieldElement one = FieldElement::one(K);
  if (p.is_infinity() || q.is_infinity()) {
    const CurvePoint& aff = p.is_infinity() ? q : p;
    if (aff.is_infinity()) return CurvePoly<FieldElement>::constant(ring, one);
    // vertical through aff
    return CurvePoly<FieldElement>(ring, UniPoly<FieldElement>({-aff.x(), one}), {});
  }
  if (p.x() == q.x() && p.y() == -q.y())
    return CurvePoly<FieldElement>(ring, UniPoly<FieldElement>({-p.x(), one}), {});
  FieldElement s;
  if (p == q) {
    FieldElement three = FieldElement::from(K, Rational(3));
    FieldElement two = FieldElement::from(K, Rational(2));
    s = (three * p.x() * p.x() + c->a()) / (two * p.y());
  } else {
    s = (q.y() - p.y()) / (q.x() - p.x());
  }
  // (v - y_p) - s (u - x_p)
  return CurvePoly<FieldElement>(ring, UniPoly<FieldElement>({s * p.x() - p.y(), -s}),
                                 UniPoly<FieldElement>::constant(one));
}

inline CurvePoly<FieldElement> vertical_through(const CurvePtr& c, const CurvePoint& p) {
  auto ring = params_of(c);
  FieldElement one = FieldElement::one(c->field());
  if (p.is_infinity()) return CurvePoly<FieldElement>::constant(ring, one);
  return CurvePoly<FieldElement>(ring, UniPoly<FieldElement>({-p.x(), one}), {});
}

// Miller-style fold: returns (sum, witness) with
// div(witness) = D - (I_sum - I_O) for proper D.
inline std::pair<CurvePoint, CurveFunc<FieldElement>> reduce_mod_principal(const Divisor& d) {
  const CurvePtr& c = d.curve();
  if (!c) throw Error("Internal", "divisor without curve");
  auto ring = params_of(c);
  FieldElement one = FieldElement::one(c->field());
  CurvePoint T = CurvePoint::infinity(c);
  CurvePoly<FieldElement> num = CurvePoly<FieldElement>::constant(ring, one);
  CurvePoly<FieldElement> den = num;
  auto fold_add = [&](const CurvePoint& p) {
    if (p.is_infinity()) return;
    if (T.is_infinity()) {
      T = p;
      return;
    }
    CurvePoint tp = add(T, p);
    num = num * line_through(c, T, p);
    den = den * vertical_through(c, tp);
    T = tp;
  };
  auto fold_sub = [&](const CurvePoint& p) {
    if (p.is_infinity()) return;
    CurvePoint np = -p;
    if (T.is_infinity()) {
      T = np;
      den = den * vertical_through(c, p);
      return;
    }
    CurvePoint tp = add(T, np);
    num = num * line_through(c, T, np);
    den = den * vertical_through(c, tp) * vertical_through(c, p);
    T = tp;
  };
  for (const auto& [p, m] : d.entries()) {
    if (p.is_infinity()) continue;
    for (int i = 0; i < m; ++i) fold_add(p);
    for (int i = 0; i < -m; ++i) fold_sub(p);
  }
  return {T, CurveFunc<FieldElement>(num, den)};
}

// function with divisor exactly D, normalized so the dominant coefficient
// at O equals 1; requires D principal
inline CurveFunc<FieldElement> realize(const Divisor& d) {
  if (!is_proper(d)) throw NotPrincipal("divisor is not proper");
  auto [sum, f] = reduce_mod_principal(d);
  if (!sum.is_infinity()) throw NotPrincipal("elliptic sum of divisor is " + sum.str());
  FieldElement dom = f.dominant_coefficient();
  return (FieldElement::one(dom.field()) / dom) * f;
}

}  // namespace ellshift

#endif
