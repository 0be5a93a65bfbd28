// Thin RAII wrapper over MPFR plus directed-rounding real intervals and
// rectangular complex enclosures. This is the only place rounding modes are
// handled; everything above works with enclosures.
#ifndef ELLSHIFT_MPREAL_HPP
#define ELLSHIFT_MPREAL_HPP

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "ellshift/rational.hpp"

namespace ellshift {

class Mp {
  mpfr_t v_;

 public:
  explicit Mp(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Mp(const Mp& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mp(Mp&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Mp& operator=(const Mp& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mp& operator=(Mp&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mp() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  static Mp from(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Mp r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
    return r;
  }
  static Mp from(long n, mpfr_prec_t prec) {
    Mp r(prec);
    mpfr_set_si(r.v_, n, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  bool operator<(const Mp& o) const { return mpfr_cmp(v_, o.v_) < 0; }

  std::string str(size_t digits = 20) const {
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string out(s);
    mpfr_free_str(s);
    bool neg = !out.empty() && out[0] == '-';
    std::string mant = neg ? out.substr(1) : out;
    std::string res = (neg ? "-" : "");
    res += "0." + mant + "e" + std::to_string(e);
    return res;
  }
};

#define ELLSHIFT_MP_BINOP(name, fn)                                     \
  inline Mp name(const Mp& a, const Mp& b, mpfr_prec_t prec,            \
                 mpfr_rnd_t rnd = MPFR_RNDN) {                          \
    Mp r(prec);                                                         \
    fn(r.get(), a.get(), b.get(), rnd);                                 \
    return r;                                                           \
  }
ELLSHIFT_MP_BINOP(mp_add, mpfr_add)
ELLSHIFT_MP_BINOP(mp_sub, mpfr_sub)
ELLSHIFT_MP_BINOP(mp_mul, mpfr_mul)
ELLSHIFT_MP_BINOP(mp_div, mpfr_div)
#undef ELLSHIFT_MP_BINOP

// Closed real interval [lo, hi] with outward rounding.
class RInt {
 public:
  Mp lo, hi;

  explicit RInt(mpfr_prec_t prec = 64) : lo(prec), hi(prec) {}
  RInt(Mp l, Mp h) : lo(std::move(l)), hi(std::move(h)) {}

  mpfr_prec_t prec() const { return std::max(lo.prec(), hi.prec()); }

  static RInt exact(const Rational& q, mpfr_prec_t prec) {
    RInt r(prec);
    mpfr_set_q(r.lo.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  static RInt exact(long n, mpfr_prec_t prec) {
    RInt r(prec);
    mpfr_set_si(r.lo.get(), n, MPFR_RNDD);
    mpfr_set_si(r.hi.get(), n, MPFR_RNDU);
    return r;
  }
  static RInt zero(mpfr_prec_t prec) { return exact(0L, prec); }
  // midpoint-radius constructor
  static RInt ball(const Mp& mid, const Mp& rad, mpfr_prec_t prec) {
    RInt r(prec);
    mpfr_sub(r.lo.get(), mid.get(), rad.get(), MPFR_RNDD);
    mpfr_add(r.hi.get(), mid.get(), rad.get(), MPFR_RNDU);
    return r;
  }

  bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
  bool is_positive() const { return lo.sign() > 0; }
  bool is_negative() const { return hi.sign() < 0; }

  double width() const {
    Mp w(prec());
    mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
    return w.to_double();
  }

  RInt operator-() const {
    RInt r(prec());
    mpfr_neg(r.lo.get(), hi.get(), MPFR_RNDD);
    mpfr_neg(r.hi.get(), lo.get(), MPFR_RNDU);
    return r;
  }

  friend RInt operator+(const RInt& a, const RInt& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    RInt r(p);
    mpfr_add(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
    mpfr_add(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
    return r;
  }
  friend RInt operator-(const RInt& a, const RInt& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    RInt r(p);
    mpfr_sub(r.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
    mpfr_sub(r.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
    return r;
  }
  friend RInt operator*(const RInt& a, const RInt& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    // min/max over the four endpoint products, each rounded both ways
    RInt r(p);
    Mp t(p);
    bool first = true;
    const Mp* as[2] = {&a.lo, &a.hi};
    const Mp* bs[2] = {&b.lo, &b.hi};
    for (auto* x : as)
      for (auto* y : bs) {
        mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
        if (first || mpfr_cmp(t.get(), r.lo.get()) < 0) mpfr_set(r.lo.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
        if (first || mpfr_cmp(t.get(), r.hi.get()) > 0) mpfr_set(r.hi.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    return r;
  }
  friend RInt operator/(const RInt& a, const RInt& b) {
    if (b.contains_zero()) throw DivisionByZero("interval division by interval containing zero");
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    RInt r(p);
    Mp t(p);
    bool first = true;
    const Mp* as[2] = {&a.lo, &a.hi};
    const Mp* bs[2] = {&b.lo, &b.hi};
    for (auto* x : as)
      for (auto* y : bs) {
        mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
        if (first || mpfr_cmp(t.get(), r.lo.get()) < 0) mpfr_set(r.lo.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
        if (first || mpfr_cmp(t.get(), r.hi.get()) > 0) mpfr_set(r.hi.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    return r;
  }

  RInt mul_2exp(long k) const {  // exact scaling by 2^k
    RInt r(prec());
    mpfr_mul_2si(r.lo.get(), lo.get(), k, MPFR_RNDD);
    mpfr_mul_2si(r.hi.get(), hi.get(), k, MPFR_RNDU);
    return r;
  }

  RInt sqrt() const {
    RInt r(prec());
    if (lo.sign() < 0)
      mpfr_set_zero(r.lo.get(), 1);  // clamp: enclosure of sqrt on [max(0,lo), hi]
    else
      mpfr_sqrt(r.lo.get(), lo.get(), MPFR_RNDD);
    mpfr_sqrt(r.hi.get(), hi.get(), MPFR_RNDU);
    return r;
  }

  RInt log() const {
    RInt r(prec());
    mpfr_log(r.lo.get(), lo.get(), MPFR_RNDD);
    mpfr_log(r.hi.get(), hi.get(), MPFR_RNDU);
    return r;
  }

  // log(max(1, .)) — the local archimedean contribution of heights
  RInt log_max1() const {
    RInt r(prec());
    if (mpfr_cmp_ui(lo.get(), 1) <= 0)
      mpfr_set_zero(r.lo.get(), 1);
    else
      mpfr_log(r.lo.get(), lo.get(), MPFR_RNDD);
    if (mpfr_cmp_ui(hi.get(), 1) <= 0)
      mpfr_set_zero(r.hi.get(), 1);
    else
      mpfr_log(r.hi.get(), hi.get(), MPFR_RNDU);
    return r;
  }

  RInt abs() const {
    if (lo.sign() >= 0) return *this;
    if (hi.sign() <= 0) return -*this;
    RInt r(prec());
    mpfr_set_zero(r.lo.get(), 1);
    Mp nl(prec());
    mpfr_neg(nl.get(), lo.get(), MPFR_RNDU);
    if (mpfr_cmp(nl.get(), hi.get()) > 0)
      mpfr_set(r.hi.get(), nl.get(), MPFR_RNDU);
    else
      mpfr_set(r.hi.get(), hi.get(), MPFR_RNDU);
    return r;
  }

  static RInt hull(const RInt& a, const RInt& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    RInt r(p);
    mpfr_set(r.lo.get(), (mpfr_cmp(a.lo.get(), b.lo.get()) < 0 ? a.lo : b.lo).get(), MPFR_RNDD);
    mpfr_set(r.hi.get(), (mpfr_cmp(a.hi.get(), b.hi.get()) > 0 ? a.hi : b.hi).get(), MPFR_RNDU);
    return r;
  }

  bool contains(const RInt& o) const {
    return mpfr_cmp(lo.get(), o.lo.get()) <= 0 && mpfr_cmp(hi.get(), o.hi.get()) >= 0;
  }

  std::string str(size_t digits = 17) const {
    return "[" + lo.str(digits) + ", " + hi.str(digits) + "]";
  }
};

// Rectangular complex enclosure.
struct CInt {
  RInt re, im;

  explicit CInt(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  CInt(RInt r, RInt i) : re(std::move(r)), im(std::move(i)) {}

  friend CInt operator+(const CInt& a, const CInt& b) { return {a.re + b.re, a.im + b.im}; }
  friend CInt operator-(const CInt& a, const CInt& b) { return {a.re - b.re, a.im - b.im}; }
  friend CInt operator*(const CInt& a, const CInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  RInt abs() const { return (re * re + im * im).sqrt(); }
  double width() const { return std::max(re.width(), im.width()); }
  bool contains(const CInt& o) const { return re.contains(o.re) && im.contains(o.im); }
  std::string str() const { return re.str() + " + i*" + im.str(); }
};

// Plain complex number at fixed precision, round-to-nearest. Used by the
// numeric root finder; all downstream decisions are verified exactly.
struct CNum {
  Mp re, im;

  explicit CNum(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  CNum(Mp r, Mp i) : re(std::move(r)), im(std::move(i)) {}
  mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }

  friend CNum operator+(const CNum& a, const CNum& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    return {mp_add(a.re, b.re, p), mp_add(a.im, b.im, p)};
  }
  friend CNum operator-(const CNum& a, const CNum& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    return {mp_sub(a.re, b.re, p), mp_sub(a.im, b.im, p)};
  }
  friend CNum operator*(const CNum& a, const CNum& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    return {mp_sub(mp_mul(a.re, b.re, p), mp_mul(a.im, b.im, p), p),
            mp_add(mp_mul(a.re, b.im, p), mp_mul(a.im, b.re, p), p)};
  }
  friend CNum operator/(const CNum& a, const CNum& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Mp n2 = mp_add(mp_mul(b.re, b.re, p), mp_mul(b.im, b.im, p), p);
    if (n2.is_zero()) throw DivisionByZero("complex division by zero");
    return {mp_div(mp_add(mp_mul(a.re, b.re, p), mp_mul(a.im, b.im, p), p), n2, p),
            mp_div(mp_sub(mp_mul(a.im, b.re, p), mp_mul(a.re, b.im, p), p), n2, p)};
  }
  Mp abs() const {
    mpfr_prec_t p = prec();
    Mp r(p);
    mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDN);
    return r;
  }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

}  // namespace ellshift

#endif
