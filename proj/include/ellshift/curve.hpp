// Short Weierstrass curve v^2 = u^3 + a u + b over K, its points, and the
// chord-tangent group law. Every constructed affine point is verified to
// satisfy the curve equation exactly.
#ifndef ELLSHIFT_CURVE_HPP
#define ELLSHIFT_CURVE_HPP

#include <memory>
#include <string>
#include <utility>

#include "ellshift/numfield.hpp"

namespace ellshift {

class Curve;
using CurvePtr = std::shared_ptr<const Curve>;

class Curve {
  FieldElement a_, b_;
  FieldPtr field_;

 public:
  Curve(FieldElement a, FieldElement b) : a_(std::move(a)), b_(std::move(b)) {
    field_ = a_.field() ? a_.field() : b_.field();
    if (!field_) throw SchemaError("curve coefficients need a coefficient field");
    FieldElement four = FieldElement::from(field_, Rational(4));
    FieldElement twenty7 = FieldElement::from(field_, Rational(27));
    FieldElement disc = four * a_ * a_ * a_ + twenty7 * b_ * b_;
    if (is_zero(disc)) throw SchemaError("singular curve: 4a^3 + 27b^2 = 0");
  }
  static CurvePtr make(FieldElement a, FieldElement b) {
    return std::make_shared<Curve>(std::move(a), std::move(b));
  }

  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  const FieldPtr& field() const { return field_; }

  FieldElement rhs(const FieldElement& x) const { return x * x * x + a_ * x + b_; }

  bool same(const Curve& o) const { return this == &o || (a_ == o.a_ && b_ == o.b_); }
};

class CurvePoint {
  CurvePtr curve_;
  bool inf_ = true;
  FieldElement x_, y_;

 public:
  CurvePoint() = default;  // detached infinity; adopt curve on use
  explicit CurvePoint(CurvePtr c) : curve_(std::move(c)) {}
  CurvePoint(CurvePtr c, FieldElement x, FieldElement y)
      : curve_(std::move(c)), inf_(false), x_(std::move(x)), y_(std::move(y)) {
    if (!curve_) throw Error("Internal", "affine point without curve");
    if (!(y_ * y_ == curve_->rhs(x_))) throw PointNotOnCurve();
  }
  static CurvePoint infinity(CurvePtr c) { return CurvePoint(std::move(c)); }

  bool is_infinity() const { return inf_; }
  const FieldElement& x() const { return x_; }
  const FieldElement& y() const { return y_; }
  const CurvePtr& curve() const { return curve_; }

  CurvePoint operator-() const {
    if (inf_) return *this;
    return CurvePoint(curve_, x_, -y_);
  }

  friend bool operator==(const CurvePoint& p, const CurvePoint& q) {
    if (p.inf_ || q.inf_) return p.inf_ == q.inf_;
    return p.x_ == q.x_ && p.y_ == q.y_;
  }
  friend bool operator!=(const CurvePoint& p, const CurvePoint& q) { return !(p == q); }
  friend bool operator<(const CurvePoint& p, const CurvePoint& q) {
    if (p.inf_ != q.inf_) return p.inf_;  // O sorts first
    if (p.inf_) return false;
    if (p.x_ != q.x_) return p.x_ < q.x_;
    return p.y_ < q.y_;
  }

  std::string str() const {
    if (inf_) return "O";
    return "(" + x_.str() + ", " + y_.str() + ")";
  }
};

inline CurvePoint add(const CurvePoint& p, const CurvePoint& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const CurvePtr& c = p.curve();
  if (!c->same(*q.curve())) throw Error("Internal", "points on different curves");
  if (p.x() == q.x()) {
    if (p.y() == -q.y()) return CurvePoint::infinity(c);
    // tangent at p (y != 0 here, else the branch above caught it)
    FieldElement three = FieldElement::from(c->field(), Rational(3));
    FieldElement two = FieldElement::from(c->field(), Rational(2));
    FieldElement s = (three * p.x() * p.x() + c->a()) / (two * p.y());
    FieldElement x3 = s * s - p.x() - q.x();
    FieldElement y3 = s * (p.x() - x3) - p.y();
    return CurvePoint(c, x3, y3);
  }
  FieldElement s = (q.y() - p.y()) / (q.x() - p.x());
  FieldElement x3 = s * s - p.x() - q.x();
  FieldElement y3 = s * (p.x() - x3) - p.y();
  return CurvePoint(c, x3, y3);
}

inline CurvePoint sub(const CurvePoint& p, const CurvePoint& q) { return add(p, -q); }

inline CurvePoint scalar_mul(long n, const CurvePoint& p) {
  CurvePoint base = n < 0 ? -p : p;
  unsigned long k = n < 0 ? -(unsigned long)n : (unsigned long)n;
  CurvePoint acc = CurvePoint::infinity(p.curve());
  while (k) {
    if (k & 1) acc = add(acc, base);
    base = add(base, base);
    k >>= 1;
  }
  return acc;
}

}  // namespace ellshift

#endif
