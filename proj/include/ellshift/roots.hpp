// Roots of a univariate polynomial over K that lie in K, found by numeric
// root isolation under all embeddings, rational reconstruction of power-basis
// coordinates, and exact verification. Failures escalate precision up to a
// cap and are loud, never silent.
#ifndef ELLSHIFT_ROOTS_HPP
#define ELLSHIFT_ROOTS_HPP

#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "ellshift/croots.hpp"
#include "ellshift/numfield.hpp"

namespace ellshift {

struct FieldRoot {
  FieldElement value;
  int multiplicity;
};

inline mpfr_prec_t precision_cap() {
  static mpfr_prec_t cap = [] {
    if (const char* env = std::getenv("ELLSHIFT_PRECISION_CAP")) {
      long v = std::atol(env);
      if (v >= 64) return static_cast<mpfr_prec_t>(v);
    }
    return static_cast<mpfr_prec_t>(1 << 14);
  }();
  return cap;
}

namespace detail {

inline Rational rational_from_mpfr(const Mp& x) {
  if (x.is_zero()) return Rational(0);
  mpz_class z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x.get());
  Rational q(z);
  if (e >= 0) {
    mpz_class two = 1;
    mpz_mul_2exp(two.get_mpz_t(), two.get_mpz_t(), e);
    q *= Rational(two);
  } else {
    mpz_class two = 1;
    mpz_mul_2exp(two.get_mpz_t(), two.get_mpz_t(), -e);
    q /= Rational(two);
  }
  q.canonicalize();
  return q;
}

// Solve the small complex linear system V c = w in place.
inline bool cnum_solve(std::vector<std::vector<CNum>> V, std::vector<CNum> w,
                       std::vector<CNum>& out, mpfr_prec_t prec) {
  size_t n = V.size();
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    Mp best = V[c][c].abs();
    for (size_t i = c + 1; i < n; ++i) {
      Mp a = V[i][c].abs();
      if (mpfr_cmp(a.get(), best.get()) > 0) {
        best = a;
        p = i;
      }
    }
    if (best.is_zero()) return false;
    std::swap(V[p], V[c]);
    std::swap(w[p], w[c]);
    for (size_t i = c + 1; i < n; ++i) {
      CNum f = V[i][c] / V[c][c];
      for (size_t j = c; j < n; ++j) V[i][j] = V[i][j] - f * V[c][j];
      w[i] = w[i] - f * w[c];
    }
  }
  out.assign(n, CNum(prec));
  for (size_t ii = n; ii-- > 0;) {
    CNum acc = w[ii];
    for (size_t j = ii + 1; j < n; ++j) acc = acc - V[ii][j] * out[j];
    out[ii] = acc / V[ii][ii];
  }
  return true;
}

inline Integer den_cap_for(mpfr_prec_t bits, long divisor) {
  Integer cap = 1;
  long exp10 = static_cast<long>(bits) / divisor;
  mpz_ui_pow_ui(cap.get_mpz_t(), 10, exp10 < 2 ? 2 : exp10);
  return cap;
}

}  // namespace detail

// All roots of p lying in K, with multiplicities. Requires p != 0.
inline std::vector<FieldRoot> roots_in_field(const UniPoly<FieldElement>& p,
                                             mpfr_prec_t start_bits = 192) {
  if (p.zero()) throw Error("Internal", "roots_in_field of zero polynomial");
  std::vector<FieldRoot> out;
  if (p.degree() == 0) return out;
  FieldPtr K = p.lc().field();
  int d = K->degree();

  auto factors = squarefree_decomposition(p);
  for (auto& [q, mult] : factors) {
    if (q.degree() == 1) {
      out.push_back({(FieldElement{} - q.coeff(0)) / q.coeff(1), mult});
      continue;
    }
    std::set<std::vector<Rational>> found;
    bool settled = false;
    for (mpfr_prec_t bits = start_bits; bits <= precision_cap(); bits *= 2) {
      found.clear();
      bool ambiguous = false;
      std::vector<CInt> gens = K->embeddings(bits);
      // numeric roots of q under every embedding
      std::vector<std::vector<RootDisk>> Z(d);
      std::vector<CNum> gen_mid(d, CNum(bits));
      for (int j = 0; j < d; ++j) {
        Mp remid = mp_add(gens[j].re.lo, gens[j].re.hi, bits);
        mpfr_div_ui(remid.get(), remid.get(), 2, MPFR_RNDN);
        Mp immid = mp_add(gens[j].im.lo, gens[j].im.hi, bits);
        mpfr_div_ui(immid.get(), immid.get(), 2, MPFR_RNDN);
        gen_mid[j] = CNum(std::move(remid), std::move(immid));
        std::vector<CNum> cs;
        for (const auto& coeff : q.coeffs()) {
          CNum acc(bits);
          for (auto it = coeff.coeffs().rbegin(); it != coeff.coeffs().rend(); ++it) {
            CNum ci(Mp::from(*it, bits), Mp(bits));
            acc = acc * gen_mid[j] + ci;
          }
          // zero coefficient vector (absorbing zero) contributes 0
          if (coeff.coeffs().empty()) acc = CNum(bits);
          cs.push_back(acc);
        }
        Z[j] = complex_roots(cs, bits);
      }

      // Acceptance is by exact verification only. The closeness threshold
      // below decides between "reject outright" and "escalate precision":
      // it sits below the best-approximation floor ~cap^-2 of numbers
      // outside K (cap^2 * tol << 1), so junk roots are rejected at the
      // first level instead of ping-ponging the precision loop, while
      // reconstruction noise ~2^-bits stays far inside it.
      Mp tol(bits);
      mpfr_set_si_2exp(tol.get(), 1, -(7 * static_cast<long>(bits) / 10), MPFR_RNDN);
      Integer dcap = detail::den_cap_for(bits, 12);

      // require sharp root disks before judging anything
      bool sharp = true;
      for (int j = 0; j < d && sharp; ++j)
        for (const auto& disk : Z[j]) {
          Mp sc = disk.center.abs();
          if (mpfr_cmp_ui(sc.get(), 1) < 0) sc = Mp::from(1L, bits);
          Mp lim = mp_mul(tol, sc, bits);
          mpfr_div_2ui(lim.get(), lim.get(), 16, MPFR_RNDN);
          if (mpfr_cmp(disk.radius.get(), lim.get()) > 0) {
            sharp = false;
            break;
          }
        }
      if (!sharp) continue;  // escalate: disks too wide to judge

      int nz = static_cast<int>(Z[0].size());
      // assignment tuples over the other embeddings
      std::vector<int> idx(d, 0);
      for (int z0 = 0; z0 < nz; ++z0) {
        bool resolved = false, near_miss = false;
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
          // build Vandermonde system sum_i c_i gen_j^i = root_j
          std::vector<std::vector<CNum>> V(d, std::vector<CNum>(d, CNum(bits)));
          std::vector<CNum> w(d, CNum(bits));
          for (int j = 0; j < d; ++j) {
            CNum pw(Mp::from(1L, bits), Mp(bits));
            for (int i = 0; i < d; ++i) {
              V[j][i] = pw;
              pw = pw * gen_mid[j];
            }
            w[j] = (j == 0 ? Z[0][z0] : Z[j][idx[j]]).center;
          }
          std::vector<CNum> sol;
          if (detail::cnum_solve(V, w, sol, bits)) {
            std::vector<Rational> cand(d);
            bool close = true;
            for (int i = 0; i < d; ++i) {
              Mp im = sol[i].im;
              mpfr_abs(im.get(), im.get(), MPFR_RNDU);
              Mp sc = sol[i].abs();
              if (mpfr_cmp_ui(sc.get(), 1) < 0) sc = Mp::from(1L, bits);
              Mp lim = mp_mul(tol, sc, bits);
              if (mpfr_cmp(im.get(), lim.get()) > 0) {
                close = false;
                break;
              }
              Rational re = detail::rational_from_mpfr(sol[i].re);
              cand[i] = round_to_rational(re, dcap);
              Rational err = abs(re - cand[i]);
              Mp errm = Mp::from(err, bits, MPFR_RNDU);
              if (mpfr_cmp(errm.get(), lim.get()) > 0) close = false;
            }
            if (close) {
              FieldElement alpha(K, cand);
              if (is_zero(q.eval(alpha))) {
                found.insert(alpha.coeffs());
                resolved = true;
                break;
              }
              near_miss = true;
            }
          }
          // next assignment tuple (positions 1..d-1)
          int pos = 1;
          while (pos < d && ++idx[pos] == static_cast<int>(Z[pos].size())) {
            idx[pos] = 0;
            ++pos;
          }
          if (pos >= d) break;
        }
        if (!resolved && near_miss) ambiguous = true;
      }
      if (!ambiguous) {
        settled = true;
        break;
      }
    }
    if (!settled)
      throw PrecisionExhausted(
          "root reconstruction failed exact verification at the precision cap for polynomial " +
          q.str("x", +[](const FieldElement& f) { return f.str(); }));
    for (const auto& coeffs : found) out.push_back({FieldElement(K, coeffs), mult});
  }
  std::sort(out.begin(), out.end(),
            [](const FieldRoot& a, const FieldRoot& b) { return a.value < b.value; });
  return out;
}

// Total multiplicity of in-K roots; used by callers that require all roots
// to be K-rational.
inline int total_multiplicity(const std::vector<FieldRoot>& roots) {
  int n = 0;
  for (const auto& r : roots) n += r.multiplicity;
  return n;
}

// Variant for callers that require every root of p to lie in K: retries at
// raised precision (larger denominator caps) before concluding that some
// root is outside K.
inline std::vector<FieldRoot> roots_in_field_complete(const UniPoly<FieldElement>& p,
                                                      const std::string& label) {
  mpfr_prec_t retry = std::min<mpfr_prec_t>(1024, precision_cap());
  for (mpfr_prec_t bits : {static_cast<mpfr_prec_t>(192), retry}) {
    auto roots = roots_in_field(p, bits);
    if (total_multiplicity(roots) == p.degree()) return roots;
    if (bits == retry) break;
  }
  throw RootOutsideField(label);
}

}  // namespace ellshift

#endif
