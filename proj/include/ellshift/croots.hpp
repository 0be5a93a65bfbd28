// Numeric complex root isolation (Durand-Kerner) with a posteriori
// Weierstrass enclosure radii. Inputs are expected squarefree; callers make
// every downstream decision by exact verification, so these enclosures only
// steer candidate generation and height enclosures.
#ifndef ELLSHIFT_CROOTS_HPP
#define ELLSHIFT_CROOTS_HPP

#include <vector>

#include "ellshift/error.hpp"
#include "ellshift/mpreal.hpp"

namespace ellshift {

struct RootDisk {
  CNum center;
  Mp radius;

  CInt enclosure(mpfr_prec_t prec) const {
    return CInt(RInt::ball(center.re, radius, prec), RInt::ball(center.im, radius, prec));
  }
  RInt abs_enclosure(mpfr_prec_t prec) const {
    Mp a = center.abs();
    RInt r = RInt::ball(a, radius, prec);
    if (r.lo.sign() < 0) mpfr_set_zero(r.lo.get(), 1);
    return r;
  }
};

namespace detail {

inline CNum cnum_eval(const std::vector<CNum>& coeffs, const CNum& x, mpfr_prec_t prec) {
  CNum acc(prec);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace detail

// Roots of a monic-izable complex polynomial given by ascending coefficients.
// Returns degree(p) disks; together they cover all roots, and per-root
// containment holds when the disks are pairwise disjoint (checked by caller
// when needed).
inline std::vector<RootDisk> complex_roots(std::vector<CNum> coeffs, mpfr_prec_t prec) {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (coeffs.size() <= 1) throw Error("Internal", "complex_roots of constant polynomial");
  int n = static_cast<int>(coeffs.size()) - 1;

  // make monic
  CNum lead = coeffs.back();
  for (auto& c : coeffs) c = c / lead;

  // Cauchy bound for initial radius
  Mp bound = Mp::from(0L, prec);
  for (int i = 0; i < n; ++i) {
    Mp a = coeffs[i].abs();
    if (mpfr_cmp(a.get(), bound.get()) > 0) bound = a;
  }
  mpfr_add_ui(bound.get(), bound.get(), 1, MPFR_RNDU);

  std::vector<CNum> z;
  z.reserve(n);
  Mp pi(prec);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  for (int k = 0; k < n; ++k) {
    // spiral start points, irrational-ish angle offset to dodge symmetry
    Mp ang(prec);
    mpfr_set_d(ang.get(), 2.0 * k + 0.7548776662, MPFR_RNDN);
    mpfr_mul(ang.get(), ang.get(), pi.get(), MPFR_RNDN);
    mpfr_div_ui(ang.get(), ang.get(), n, MPFR_RNDN);
    Mp c(prec), s(prec);
    mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
    Mp rad(prec);
    mpfr_set_d(rad.get(), 0.5 + k * 0.5 / n, MPFR_RNDN);
    mpfr_mul(rad.get(), rad.get(), bound.get(), MPFR_RNDN);
    mpfr_mul(c.get(), c.get(), rad.get(), MPFR_RNDN);
    mpfr_mul(s.get(), s.get(), rad.get(), MPFR_RNDN);
    z.emplace_back(Mp(c), Mp(s));
  }

  Mp tol(prec);
  mpfr_set_ui_2exp(tol.get(), 1, -(prec - 8), MPFR_RNDN);

  const int max_iter = 500;
  for (int iter = 0; iter < max_iter; ++iter) {
    Mp worst = Mp::from(0L, prec);
    for (int k = 0; k < n; ++k) {
      CNum denom(prec);
      denom.re = Mp::from(1L, prec);
      for (int j = 0; j < n; ++j)
        if (j != k) denom = denom * (z[k] - z[j]);
      if (denom.is_zero()) {
        // perturb a collided point
        mpfr_add(z[k].re.get(), z[k].re.get(), tol.get(), MPFR_RNDN);
        denom.re = Mp::from(1L, prec);
        continue;
      }
      CNum w = detail::cnum_eval(coeffs, z[k], prec) / denom;
      z[k] = z[k] - w;
      Mp aw = w.abs();
      Mp scale = z[k].abs();
      if (mpfr_cmp_ui(scale.get(), 1) < 0) scale = Mp::from(1L, prec);
      mpfr_div(aw.get(), aw.get(), scale.get(), MPFR_RNDN);
      if (mpfr_cmp(aw.get(), worst.get()) > 0) worst = aw;
    }
    if (mpfr_cmp(worst.get(), tol.get()) < 0) break;
  }

  // a posteriori Weierstrass radii, hardened against rounding
  std::vector<RootDisk> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    CNum denom(prec);
    denom.re = Mp::from(1L, prec);
    for (int j = 0; j < n; ++j)
      if (j != k) denom = denom * (z[k] - z[j]);
    Mp radius(prec);
    if (denom.is_zero()) {
      radius = bound;  // degenerate cluster: give up on tightness
    } else {
      CNum w = detail::cnum_eval(coeffs, z[k], prec) / denom;
      radius = w.abs();
      mpfr_mul_ui(radius.get(), radius.get(), n, MPFR_RNDU);
      // inflation for accumulated rounding
      Mp fudge(prec);
      mpfr_set_ui_2exp(fudge.get(), 1, -(prec - 32), MPFR_RNDU);
      Mp sc = z[k].abs();
      mpfr_add_ui(sc.get(), sc.get(), 1, MPFR_RNDU);
      mpfr_mul(fudge.get(), fudge.get(), sc.get(), MPFR_RNDU);
      mpfr_add(radius.get(), radius.get(), fudge.get(), MPFR_RNDU);
    }
    out.push_back(RootDisk{z[k], radius});
  }
  return out;
}

}  // namespace ellshift

#endif
