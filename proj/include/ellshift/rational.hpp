// Exact rationals on top of GMP, plus the "num/den" string format used by
// all serialization.
#ifndef ELLSHIFT_RATIONAL_HPP
#define ELLSHIFT_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "ellshift/error.hpp"

namespace ellshift {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return q.get_num() == 0; }
inline Rational one_of(const Rational&) { return Rational(1); }

inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw SchemaError("empty rational literal");
  try {
    Rational q(s);
    if (q.get_den() == 0) throw SchemaError("zero denominator in rational literal: " + s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw SchemaError("bad rational literal: " + s);
  }
}

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Continued-fraction rounding: nearest rational with denominator <= cap.
// Used by root reconstruction; x is given as num/den of a binary float.
inline Rational round_to_rational(const Rational& x, const Integer& den_cap) {
  Rational target = abs(x);
  bool neg = x < 0;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rem = target;
  while (true) {
    Integer a = rem.get_num() / rem.get_den();
    Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > den_cap) {
      // compare the last full convergent with the best semiconvergent
      Integer k = (den_cap - q0) / q1;
      Integer ps = k * p1 + p0, qs = k * q1 + q0;
      Rational c1(p1, q1);
      c1.canonicalize();
      Rational c2(ps, qs);
      c2.canonicalize();
      Rational best = (abs(c1 - target) <= abs(c2 - target)) ? c1 : c2;
      return neg ? Rational(-best) : best;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational frac = rem - Rational(a);
    if (frac == 0) break;
    rem = Rational(1) / frac;
  }
  Rational r(p1, q1);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

}  // namespace ellshift

#endif
