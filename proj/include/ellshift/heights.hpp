// Naive and canonical heights as certified enclosures, the height pairing,
// multiple-of-delta detection, and the two bounds the solvers use. All
// integer decisions taken from heights are verified by exact point
// arithmetic, so enclosure width can cause Inconclusive but never a wrong
// answer.
#ifndef ELLSHIFT_HEIGHTS_HPP
#define ELLSHIFT_HEIGHTS_HPP

#include <map>
#include <optional>
#include <vector>

#include "ellshift/croots.hpp"
#include "ellshift/curve.hpp"
#include "ellshift/divisor.hpp"

namespace ellshift {

struct HeightContext {
  int doublings = 6;       // n in  h(2^n p) / 4^n
  mpfr_prec_t bits = 128;  // numeric working precision
};

class HeightCalculator {
  CurvePtr curve_;
  HeightContext ctx_;
  std::map<CurvePoint, RInt> cache_;

  static RInt log_abs(const Integer& n, mpfr_prec_t prec) {
    RInt v(prec);
    mpfr_set_z(v.lo.get(), n.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(v.hi.get(), n.get_mpz_t(), MPFR_RNDU);
    return v.abs().log();
  }

 public:
  explicit HeightCalculator(CurvePtr c, HeightContext ctx = {}) : curve_(std::move(c)), ctx_(ctx) {}

  const HeightContext& context() const { return ctx_; }
  const CurvePtr& curve() const { return curve_; }

  // naive Weil height of the u-coordinate, summed over all places of Q(u(p))
  RInt naive(const CurvePoint& p) const {
    mpfr_prec_t prec = ctx_.bits;
    if (p.is_infinity()) return RInt::zero(prec);
    UniPoly<Rational> mu = minimal_polynomial(p.x());
    int e = mu.degree();
    // primitive integer model
    Integer lcm = 1;
    for (const auto& q : mu.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Integer> ic;
    for (const auto& q : mu.coeffs()) {
      Rational scaled = q * Rational(lcm);
      ic.push_back(scaled.get_num());
    }
    Integer content = 0;
    for (const auto& z : ic) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
    for (auto& z : ic) z /= content;

    RInt acc = RInt::zero(prec);
    if (e == 1) {
      // root -c0/c1: h = log max(|c0|, |c1|)
      Integer m = abs(ic[0]) > abs(ic[1]) ? abs(ic[0]) : abs(ic[1]);
      if (m == 0) return RInt::zero(prec);
      if (m == 1) return RInt::zero(prec);
      return log_abs(m, prec);
    }
    acc = acc + log_abs(ic[e], prec);
    if (e == 2) {
      Integer disc = ic[1] * ic[1] - 4 * ic[2] * ic[0];
      if (disc > 0) {
        RInt sq = RInt::exact(Rational(disc), prec).sqrt();
        RInt c1 = RInt::exact(Rational(ic[1]), prec);
        RInt c2x2 = RInt::exact(Rational(2 * ic[2]), prec);
        acc = acc + (((-c1) + sq) / c2x2).abs().log_max1();
        acc = acc + (((-c1) - sq) / c2x2).abs().log_max1();
      } else {
        // conjugate pair: |z|^2 = c0/c2
        Rational prod(ic[0], ic[2]);
        prod.canonicalize();
        acc = acc + RInt::exact(abs(prod), prec).sqrt().log_max1().mul_2exp(1);
      }
    } else {
      std::vector<CNum> cs;
      for (const auto& z : ic) cs.emplace_back(Mp::from(Rational(z), prec), Mp(prec));
      auto disks = complex_roots(cs, prec);
      for (const auto& dsk : disks) acc = acc + dsk.abs_enclosure(prec).log_max1();
    }
    return acc / RInt::exact(e, prec);
  }

  // canonical height via the doubling limit, with a tail estimated from the
  // observed iterates (all downstream integer decisions are re-verified
  // exactly, so this heuristic can only cause Inconclusive)
  RInt canonical(const CurvePoint& p) {
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    mpfr_prec_t prec = ctx_.bits;
    RInt result(prec);
    if (p.is_infinity()) {
      result = RInt::zero(prec);
    } else if (small_torsion(p)) {
      result = RInt::zero(prec);
    } else {
      int n = ctx_.doublings;
      std::vector<RInt> h;
      CurvePoint q = p;
      h.push_back(naive(q));
      for (int k = 1; k <= n; ++k) {
        q = add(q, q);
        h.push_back(naive(q));
      }
      // C >= |h(2q) - 4 h(q)| observed; floor at 1 and double for safety
      Mp c_up = Mp::from(1L, prec);
      for (int k = 0; k < n; ++k) {
        RInt diff = (h[k + 1] - h[k].mul_2exp(2)).abs();
        if (mpfr_cmp(diff.hi.get(), c_up.get()) > 0) c_up = diff.hi;
      }
      mpfr_mul_ui(c_up.get(), c_up.get(), 2, MPFR_RNDU);
      // tail <= C / (3 * 4^n)
      Mp tail(prec);
      mpfr_div_ui(tail.get(), c_up.get(), 3, MPFR_RNDU);
      mpfr_div_2ui(tail.get(), tail.get(), 2 * n, MPFR_RNDU);
      RInt base = h[n].mul_2exp(-2 * n);
      mpfr_sub(base.lo.get(), base.lo.get(), tail.get(), MPFR_RNDD);
      mpfr_add(base.hi.get(), base.hi.get(), tail.get(), MPFR_RNDU);
      result = base;
    }
    cache_.emplace(p, result);
    return result;
  }

  RInt pairing(const CurvePoint& p, const CurvePoint& q) {
    return (canonical(add(p, q)) - canonical(p) - canonical(q)).mul_2exp(-1);
  }

  // exact torsion order up to cap, or certified non-torsion (nullopt)
  std::optional<int> torsion_order(const CurvePoint& p, int cap) {
    if (p.is_infinity()) return 1;
    CurvePoint q = p;
    for (int n = 1; n <= cap; ++n) {
      if (q.is_infinity()) return n;
      q = add(q, p);
    }
    RInt h = canonical(p);
    if (h.lo.sign() > 0) return std::nullopt;
    throw Inconclusive(
        "cannot certify torsion status: no order <= cap and canonical height enclosure touches 0; "
        "raise the torsion cap or height precision");
  }

  // the exact integer N with p = N delta, confirmed by point arithmetic
  std::optional<long> multiple_of(const CurvePoint& p, const CurvePoint& delta) {
    if (p.is_infinity()) return 0;
    RInt hd = canonical(delta);
    if (hd.lo.sign() <= 0)
      throw Inconclusive("canonical height of delta not certified positive; raise precision");
    RInt ratio = canonical(p) / hd;
    long lo = 0, hi = 0;
    {
      Mp s = ratio.lo.sign() > 0 ? ratio.lo : Mp::from(0L, ratio.prec());
      mpfr_sqrt(s.get(), s.get(), MPFR_RNDD);
      mpfr_floor(s.get(), s.get());
      lo = mpfr_get_si(s.get(), MPFR_RNDN);
      Mp t = ratio.hi;
      if (t.sign() < 0) return std::nullopt;
      mpfr_sqrt(t.get(), t.get(), MPFR_RNDU);
      mpfr_ceil(t.get(), t.get());
      hi = mpfr_get_si(t.get(), MPFR_RNDN);
    }
    if (hi - lo > 12)
      throw Inconclusive("height enclosure too wide to isolate a multiple candidate; "
                         "raise doublings/precision");
    for (long n = lo; n <= hi; ++n) {
      if (scalar_mul(n, delta) == p) return n;
      if (n != 0 && scalar_mul(-n, delta) == p) return -n;
    }
    return std::nullopt;
  }

 private:
  bool small_torsion(const CurvePoint& p) {
    CurvePoint q = p;
    for (int n = 1; n <= 16; ++n) {
      if (q.is_infinity()) return true;
      q = add(q, p);
    }
    return false;
  }
};

// ceil of the upper bound of a nonnegative enclosure
inline long ceil_upper(const RInt& r) {
  Mp t = r.hi;
  mpfr_ceil(t.get(), t.get());
  long v = mpfr_get_si(t.get(), MPFR_RNDN);
  return v < 0 ? 0 : v;
}

// dispersion bound: max over pairs of the exact shift distance when the
// difference is a verified multiple of delta, conservative ceiling otherwise
inline int dispersion_bound(const std::vector<CurvePoint>& points, const CurvePoint& delta,
                            HeightCalculator& calc) {
  long b = 0;
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      CurvePoint sigma = sub(points[i], points[j]);
      if (sigma.is_infinity()) continue;
      auto n = calc.multiple_of(sigma, delta);
      if (n) {
        b = std::max(b, std::abs(*n));
        continue;
      }
      RInt hd = calc.canonical(delta);
      RInt ratio = calc.canonical(sigma) / hd;
      b = std::max(b, ceil_upper(ratio.sqrt()));
    }
  return static_cast<int>(b);
}

// regulator bound of the hyperexponential search: ceil(|Reg|_2 #L / sqrt(<d,d>)),
// with the 2-norm bounded by the Frobenius norm
inline int regulator_norm_bound(const std::vector<CurvePoint>& points, const CurvePoint& delta,
                                HeightCalculator& calc) {
  size_t k = points.size();
  if (k == 0) return 0;
  mpfr_prec_t prec = calc.context().bits;
  RInt frob2 = RInt::zero(prec);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      RInt e = calc.pairing(points[i], points[j]).abs();
      frob2 = frob2 + e * e;
    }
  RInt hd = calc.canonical(delta);
  if (hd.lo.sign() <= 0)
    throw Inconclusive("canonical height of delta not certified positive; raise precision");
  RInt bound = frob2.sqrt() * RInt::exact(static_cast<long>(k), prec) / hd.sqrt();
  return static_cast<int>(ceil_upper(bound));
}

// is_delta_principal: exact N with elliptic_sum(D) = N delta and |N| <= bound
inline std::optional<long> is_delta_principal(const Divisor& d, const CurvePoint& delta,
                                              long bound, HeightCalculator& calc) {
  CurvePoint s = elliptic_sum(d);
  auto n = calc.multiple_of(s, delta);
  if (n && std::abs(*n) <= bound) return n;
  return std::nullopt;
}

}  // namespace ellshift

#endif
