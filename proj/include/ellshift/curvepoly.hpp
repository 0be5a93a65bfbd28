// Polynomial functions on the curve in canonical form A(u) + v B(u), with
// v^2 already eliminated. Generic over the coefficient field so the same
// code serves exact K-coefficients and parametric coefficients.
#ifndef ELLSHIFT_CURVEPOLY_HPP
#define ELLSHIFT_CURVEPOLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "ellshift/curve.hpp"
#include "ellshift/unipoly.hpp"

namespace ellshift {

template <class F>
struct CurveParams {
  F a, b;
  UniPoly<F> rhs() const {  // u^3 + a u + b
    F one = one_of(is_zero(a) ? (is_zero(b) ? a : b) : a);
    return UniPoly<F>({b, a, F{}, one});
  }
  bool operator==(const CurveParams& o) const { return a == o.a && b == o.b; }
};

inline CurveParams<FieldElement> params_of(const CurvePtr& c) {
  return CurveParams<FieldElement>{c->a(), c->b()};
}

template <class F>
class CurvePoly {
  CurveParams<F> ring_;
  UniPoly<F> A_, B_;  // A(u) + v B(u)

 public:
  CurvePoly() = default;
  CurvePoly(CurveParams<F> ring, UniPoly<F> A, UniPoly<F> B)
      : ring_(std::move(ring)), A_(std::move(A)), B_(std::move(B)) {}
  static CurvePoly constant(CurveParams<F> ring, F v) {
    return CurvePoly(std::move(ring), UniPoly<F>::constant(std::move(v)), UniPoly<F>());
  }
  static CurvePoly coordinate_u(CurveParams<F> ring, const F& one) {
    return CurvePoly(std::move(ring), UniPoly<F>::monomial(one, 1), UniPoly<F>());
  }
  static CurvePoly coordinate_v(CurveParams<F> ring, const F& one) {
    return CurvePoly(std::move(ring), UniPoly<F>(), UniPoly<F>::constant(one));
  }
  // from a term list with arbitrary v-degrees: v^(2m) -> rhs^m
  static CurvePoly from_terms(CurveParams<F> ring,
                              const std::vector<std::tuple<int, int, F>>& terms) {
    UniPoly<F> A, B;
    UniPoly<F> f = ring.rhs();
    for (const auto& [du, dv, coeff] : terms) {
      if (du < 0 || dv < 0) throw SchemaError("negative exponent in curve polynomial term");
      UniPoly<F> mono = UniPoly<F>::monomial(coeff, du) * f.pow(dv / 2);
      if (dv % 2 == 0)
        A = A + mono;
      else
        B = B + mono;
    }
    return CurvePoly(std::move(ring), std::move(A), std::move(B));
  }

  const CurveParams<F>& ring() const { return ring_; }
  const UniPoly<F>& A() const { return A_; }
  const UniPoly<F>& B() const { return B_; }
  bool zero() const { return A_.zero() && B_.zero(); }

  friend bool operator==(const CurvePoly& a, const CurvePoly& b) {
    return a.A_ == b.A_ && a.B_ == b.B_;
  }
  friend bool operator!=(const CurvePoly& a, const CurvePoly& b) { return !(a == b); }

  friend CurvePoly operator+(const CurvePoly& a, const CurvePoly& b) {
    return CurvePoly(a.ring_, a.A_ + b.A_, a.B_ + b.B_);
  }
  friend CurvePoly operator-(const CurvePoly& a, const CurvePoly& b) {
    return CurvePoly(a.ring_, a.A_ - b.A_, a.B_ - b.B_);
  }
  CurvePoly operator-() const { return CurvePoly(ring_, -A_, -B_); }
  friend CurvePoly operator*(const CurvePoly& a, const CurvePoly& b) {
    UniPoly<F> f = a.ring_.rhs();
    return CurvePoly(a.ring_, a.A_ * b.A_ + f * (a.B_ * b.B_), a.A_ * b.B_ + a.B_ * b.A_);
  }
  friend CurvePoly operator*(const F& s, const CurvePoly& a) {
    return CurvePoly(a.ring_, s * a.A_, s * a.B_);
  }

  CurvePoly conjugate() const { return CurvePoly(ring_, A_, -B_); }  // v -> -v
  // norm (A + vB)(A - vB) = A^2 - rhs B^2, a polynomial in u alone
  UniPoly<F> norm() const { return A_ * A_ - ring_.rhs() * (B_ * B_); }

  CurvePoly pow(int n) const {
    CurvePoly r = constant(ring_, one_of(lead_coeff()));
    CurvePoly base = *this;
    while (n > 0) {
      if (n & 1) r = r * base;
      base = base * base;
      n >>= 1;
    }
    return r;
  }

  // weight = -val_O: max(2 deg A, 3 + 2 deg B); the two parities differ, so
  // there is never cancellation at infinity
  int weight() const {
    if (zero()) throw Error("Internal", "weight of zero curve polynomial");
    int wa = A_.zero() ? -1 : 2 * A_.degree();
    int wb = B_.zero() ? -1 : 3 + 2 * B_.degree();
    return std::max(wa, wb);
  }
  int val_infinity() const { return -weight(); }

  // leading Laurent coefficient at O in the uniformizer t = u/v
  const F& dominant_coefficient() const {
    int wa = A_.zero() ? -1 : 2 * A_.degree();
    int wb = B_.zero() ? -1 : 3 + 2 * B_.degree();
    if (wa < 0 && wb < 0) throw Error("Internal", "dominant coefficient of zero");
    return wa > wb ? A_.lc() : B_.lc();
  }

  F eval(const F& x, const F& y) const { return A_.eval(x) + y * B_.eval(x); }

  F lead_coeff() const { return dominant_coefficient(); }

  std::string str(std::string (*fmt)(const F&)) const {
    if (zero()) return "0";
    std::string s = A_.zero() ? "" : A_.str("u", fmt);
    if (!B_.zero()) {
      if (!s.empty()) s += " + ";
      s += "v*(" + B_.str("u", fmt) + ")";
    }
    return s;
  }
};

}  // namespace ellshift

#endif
