// The three solution-class algorithms: rational, pseudo-rational (rational
// times a Theta factor), and hyperexponential. The parametric kernel is
// computed by minor elimination: structured minors of the ansatz matrix,
// y-norms against the curve, resultants down to univariate eliminants,
// roots in K, and exact rank verification of every candidate.
#ifndef ELLSHIFT_SOLVER_HPP
#define ELLSHIFT_SOLVER_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ellshift/ansatz.hpp"
#include "ellshift/linalg.hpp"

namespace ellshift {

struct SolveConfig {
  HeightContext heights;
  int torsion_cap = 16;
  long max_combinations = 100000;
  bool principality_filter = true;
};

struct HyperStats {
  long enumerated = 0;
  long proper = 0;
  long delta_principal = 0;
  long realized = 0;
};

namespace detail {

inline std::string fmt_fe(const FieldElement& f) { return f.str(); }

inline std::string lambda_poly_str(const UniPoly<FieldElement>& p) {
  return p.str("L", +[](const FieldElement& f) { return f.str(); });
}

// ---------- determinants of parametric matrices by interpolation ----------

// sample values 0, 1, -1, 2, -2, ...
inline Rational sample_value(int s) {
  int k = (s + 1) / 2;
  return (s % 2) ? Rational(k) : Rational(-k);
}

// determinant of a matrix of lambda-only polynomials
inline UniPoly<FieldElement> det_lambda(const std::vector<std::vector<MPoly>>& m,
                                        const std::vector<size_t>& rows, FieldPtr K) {
  size_t n = rows.size();
  long bound = 0;
  for (size_t r : rows) {
    int mx = 0;
    for (const auto& e : m[r]) mx = std::max(mx, e.deg_lambda());
    bound += mx;
  }
  std::vector<std::pair<FieldElement, FieldElement>> samples;
  for (long s = 0; s <= bound; ++s) {
    FieldElement ls = FieldElement::from(K, sample_value(static_cast<int>(s)));
    Matrix<FieldElement> spec(n, std::vector<FieldElement>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        MPoly e = m[rows[i]][j].eval_lambda(ls);
        spec[i][j] = e.zero() ? FieldElement{} : e.terms().begin()->second;
      }
    samples.emplace_back(ls, determinant(spec, FieldElement::one(K)));
  }
  return lagrange_interpolate(samples, FieldElement::one(K));
}

// determinant of a matrix of (lambda, x, y) polynomials, y treated as a free
// variable during interpolation and reduced against the curve afterwards
inline MPoly det_parametric(const std::vector<std::vector<MPoly>>& m,
                            const std::vector<size_t>& rows, const CurvePtr& c) {
  FieldPtr K = c->field();
  FieldElement one = FieldElement::one(K);
  size_t n = rows.size();
  long bl = 0, bx = 0, by = 0;
  for (size_t r : rows) {
    int ml = 0, mx = 0, my = 0;
    for (const auto& e : m[r]) {
      ml = std::max(ml, e.deg_lambda());
      mx = std::max(mx, e.deg_x());
      my = std::max(my, e.deg_y());
    }
    bl += ml;
    bx += mx;
    by += my;
  }
  // grid of specialized determinants
  auto eval_entry = [&](const MPoly& e, const FieldElement& lv, const FieldElement& xv,
                        const FieldElement& yv) {
    MPoly s = e.eval_lambda(lv).eval_x(xv).eval_y(yv);
    return s.zero() ? FieldElement{} : s.terms().begin()->second;
  };
  std::vector<FieldElement> ys;
  for (long r = 0; r <= by; ++r) ys.push_back(FieldElement::from(K, sample_value((int)r)));
  std::vector<FieldElement> xsv;
  for (long t = 0; t <= bx; ++t) xsv.push_back(FieldElement::from(K, sample_value((int)t)));
  std::vector<FieldElement> lsv;
  for (long s = 0; s <= bl; ++s) lsv.push_back(FieldElement::from(K, sample_value((int)s)));

  // interpolate in lambda for each (x, y), then in x, then in y
  std::vector<std::vector<UniPoly<FieldElement>>> pl(ys.size());
  for (size_t r = 0; r < ys.size(); ++r) {
    pl[r].resize(xsv.size());
    for (size_t t = 0; t < xsv.size(); ++t) {
      std::vector<std::pair<FieldElement, FieldElement>> samples;
      for (size_t s = 0; s < lsv.size(); ++s) {
        Matrix<FieldElement> spec(n, std::vector<FieldElement>(n));
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j)
            spec[i][j] = eval_entry(m[rows[i]][j], lsv[s], xsv[t], ys[r]);
        samples.emplace_back(lsv[s], determinant(spec, one));
      }
      pl[r][t] = lagrange_interpolate(samples, one);
    }
  }
  MPoly out(c);
  for (long a = 0; a <= bl; ++a) {
    std::vector<UniPoly<FieldElement>> px(ys.size());
    for (size_t r = 0; r < ys.size(); ++r) {
      std::vector<std::pair<FieldElement, FieldElement>> samples;
      for (size_t t = 0; t < xsv.size(); ++t)
        samples.emplace_back(xsv[t], pl[r][t].coeff(static_cast<int>(a)));
      px[r] = lagrange_interpolate(samples, one);
    }
    for (long b = 0; b <= bx; ++b) {
      std::vector<std::pair<FieldElement, FieldElement>> samples;
      for (size_t r = 0; r < ys.size(); ++r)
        samples.emplace_back(ys[r], px[r].coeff(static_cast<int>(b)));
      UniPoly<FieldElement> py = lagrange_interpolate(samples, one);
      for (int cdeg = 0; cdeg <= py.degree(); ++cdeg) {
        if (is_zero(py.coeff(cdeg))) continue;
        out = out + MPoly::variable(c,
                                    Mono5{0, 0, static_cast<int16_t>(a), static_cast<int16_t>(b),
                                          static_cast<int16_t>(cdeg)},
                                    py.coeff(cdeg));
      }
    }
  }
  return out;  // reduction happened inside MPoly::variable for y powers
}

// resultant in x of two (lambda, x) polynomials via a fixed-shape Sylvester
// matrix and interpolation in lambda
inline UniPoly<FieldElement> resultant_x(const MPoly& E1, const MPoly& E2, const CurvePtr& c) {
  FieldPtr K = c->field();
  FieldElement one = FieldElement::one(K);
  int d1 = E1.deg_x(), d2 = E2.deg_x();
  if (d1 == 0 || d2 == 0) {
    // degenerate: the resultant reduces to a power of the constant one
    const MPoly& cst = d1 == 0 ? E1 : E2;
    int other = d1 == 0 ? d2 : d1;
    UniPoly<FieldElement> base = cst.as_lambda_poly();
    UniPoly<FieldElement> r = UniPoly<FieldElement>::constant(one);
    for (int i = 0; i < other; ++i) r = r * base;
    return r;
  }
  long bound = static_cast<long>(d2) * E1.deg_lambda() + static_cast<long>(d1) * E2.deg_lambda();
  std::vector<std::pair<FieldElement, FieldElement>> samples;
  for (long s = 0; s <= bound; ++s) {
    FieldElement ls = FieldElement::from(K, sample_value(static_cast<int>(s)));
    UniPoly<FieldElement> p1 = E1.eval_lambda(ls).as_x_poly();
    UniPoly<FieldElement> p2 = E2.eval_lambda(ls).as_x_poly();
    // fixed-shape Sylvester determinant with structural degrees d1, d2
    size_t n = d1 + d2;
    Matrix<FieldElement> syl(n, std::vector<FieldElement>(n, FieldElement{}));
    for (int r = 0; r < d2; ++r)
      for (int k = 0; k <= d1; ++k) syl[r][r + d1 - k] = p1.coeff(k);
    for (int r = 0; r < d1; ++r)
      for (int k = 0; k <= d2; ++k) syl[d2 + r][r + d2 - k] = p2.coeff(k);
    samples.emplace_back(ls, determinant(syl, one));
  }
  return lagrange_interpolate(samples, one);
}

// gcd of the lambda-coefficients across x-powers (the lambda-content)
inline UniPoly<FieldElement> lambda_content(const MPoly& E) {
  std::map<int, UniPoly<FieldElement>> by_x;
  for (const auto& [m, coeff] : E.terms()) {
    auto& p = by_x[m.ex];
    p.set_coeff(m.el, coeff);
  }
  UniPoly<FieldElement> g;
  for (auto& [ex, p] : by_x) {
    if (p.zero()) continue;
    g = g.zero() ? p.monic() : gcd_monic(g, p);
    if (g.degree() == 0) break;
  }
  return g;
}

inline MPoly divide_lambda_content(const MPoly& E, const UniPoly<FieldElement>& g,
                                   const CurvePtr& c) {
  if (g.degree() == 0) return E;
  std::map<int, UniPoly<FieldElement>> by_x;
  for (const auto& [m, coeff] : E.terms()) by_x[m.ex].set_coeff(m.el, coeff);
  MPoly out(c);
  FieldElement one = FieldElement::one(c->field());
  for (auto& [ex, p] : by_x) {
    auto [q, r] = divmod(p, g);
    if (!r.zero()) throw Error("Internal", "lambda content does not divide");
    for (int k = 0; k <= q.degree(); ++k)
      if (!is_zero(q.coeff(k)))
        out = out + MPoly::variable(c, Mono5{0, 0, static_cast<int16_t>(k),
                                             static_cast<int16_t>(ex), 0},
                                    q.coeff(k));
  }
  return out;
}

// ---------- exact rank over K[lambda]/(phi) with zero-divisor splitting ----

struct QuotSplit {
  UniPoly<FieldElement> factor;
};

inline UniPoly<FieldElement> quot_mul(const UniPoly<FieldElement>& a, const UniPoly<FieldElement>& b,
                                      const UniPoly<FieldElement>& phi) {
  return (a * b) % phi;
}

inline UniPoly<FieldElement> quot_inv(const UniPoly<FieldElement>& a,
                                      const UniPoly<FieldElement>& phi) {
  auto [g, u, v] = xgcd(a, phi);
  if (g.degree() != 0) throw QuotSplit{g};
  return u % phi;
}

inline bool rank_deficient_mod(const Matrix<UniPoly<FieldElement>>& m,
                               const UniPoly<FieldElement>& phi, size_t need) {
  if (phi.degree() == 0) return false;
  Matrix<UniPoly<FieldElement>> w = m;
  for (auto& row : w)
    for (auto& e : row) e = e % phi;
  try {
    size_t rows = w.size(), cols = w.empty() ? 0 : w[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
      size_t piv = rank;
      while (piv < rows && w[piv][col].zero()) ++piv;
      if (piv == rows) continue;
      std::swap(w[piv], w[rank]);
      UniPoly<FieldElement> inv = quot_inv(w[rank][col], phi);
      for (size_t j = col; j < cols; ++j) w[rank][j] = quot_mul(w[rank][j], inv, phi);
      for (size_t i = 0; i < rows; ++i) {
        if (i == rank || w[i][col].zero()) continue;
        UniPoly<FieldElement> f = w[i][col];
        for (size_t j = col; j < cols; ++j)
          w[i][j] = (w[i][j] - quot_mul(f, w[rank][j], phi)) % phi;
      }
      ++rank;
    }
    return rank < need;
  } catch (const QuotSplit& s) {
    UniPoly<FieldElement> g = s.factor;
    UniPoly<FieldElement> rest = phi / g;
    return rank_deficient_mod(m, g, need) || rank_deficient_mod(m, rest, need);
  }
}

// ---------- candidate parameter points ----------

struct ParametricPoint {
  FieldElement lambda;
  CurvePoint pole;  // O for the lambda-only case
};

inline bool operator<(const ParametricPoint& a, const ParametricPoint& b) {
  if (a.lambda != b.lambda) return a.lambda < b.lambda;
  return a.pole < b.pole;
}

// deterministic row subsets for minors: sliding windows then strided picks
inline std::vector<std::vector<size_t>> minor_subsets(size_t rows, size_t n, size_t want) {
  std::vector<std::vector<size_t>> out;
  if (rows < n) return out;
  for (size_t start = 0; start + n <= rows && out.size() < want; ++start) {
    std::vector<size_t> s(n);
    for (size_t i = 0; i < n; ++i) s[i] = start + i;
    out.push_back(std::move(s));
  }
  for (size_t stride = 2; out.size() < want && stride <= 3; ++stride) {
    if (n * stride <= rows + stride - 1) {
      std::vector<size_t> s;
      for (size_t i = 0; i < n && i * stride < rows; ++i) s.push_back(i * stride);
      if (s.size() == n) out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace detail

// ---------- the parametric kernel ----------

struct KernelAtPoint {
  FieldElement lambda;
  CurvePoint pole;
  std::vector<std::vector<FieldElement>> kernel;  // coefficient vectors for P
};

// lambda-only case: pole fixed at O
inline std::vector<KernelAtPoint> solve_lambda_case(const AnsatzSystem& sys,
                                                    const EllipticDifferenceEquation& eq) {
  std::vector<KernelAtPoint> out;
  if (sys.degP < 0 || sys.basis.empty()) return out;
  const CurvePtr& c = eq.curve();
  FieldPtr K = c->field();
  size_t n = sys.basis.size();
  if (sys.rows.size() < n)
    throw PositiveDimensionalVariety("ansatz system has fewer equations than unknowns");

  Matrix<UniPoly<FieldElement>> Ml(sys.rows.size(), std::vector<UniPoly<FieldElement>>(n));
  for (size_t r = 0; r < sys.rows.size(); ++r)
    for (size_t k = 0; k < n; ++k) Ml[r][k] = sys.rows[r][k].as_lambda_poly();

  UniPoly<FieldElement> g;
  size_t nonzero_minors = 0;
  for (const auto& subset : detail::minor_subsets(sys.rows.size(), n, n + 4)) {
    UniPoly<FieldElement> d = detail::det_lambda(sys.rows, subset, K);
    if (d.zero()) continue;
    ++nonzero_minors;
    g = g.zero() ? d.monic() : gcd_monic(g, d);
    if (g.degree() == 0) break;
  }
  if (nonzero_minors == 0)
    throw PositiveDimensionalVariety("all tested minors vanish identically in lambda");
  if (g.degree() == 0) return out;

  // strip the lambda = 0 root; lambda ranges over K*
  FieldElement zero{};
  while (g.degree() > 0 && is_zero(g.coeff(0)))
    g = g / UniPoly<FieldElement>({zero, FieldElement::one(K)});

  UniPoly<FieldElement> residual = g;
  for (const auto& root : roots_in_field(g)) {
    if (is_zero(root.value)) continue;
    // exact kernel at lambda = root
    Matrix<FieldElement> spec(sys.rows.size(), std::vector<FieldElement>(n));
    for (size_t r = 0; r < sys.rows.size(); ++r)
      for (size_t k = 0; k < n; ++k) spec[r][k] = Ml[r][k].eval(root.value);
    auto ker = kernel_basis(spec, FieldElement::one(K));
    if (!ker.empty())
      out.push_back({root.value, CurvePoint::infinity(c), std::move(ker)});
    UniPoly<FieldElement> lin({-root.value, FieldElement::one(K)});
    for (int i = 0; i < root.multiplicity; ++i) residual = residual / lin;
  }
  if (residual.degree() > 0 && detail::rank_deficient_mod(Ml, residual.monic(), n))
    throw ExtensionRequired(detail::lambda_poly_str(residual.monic()));
  return out;
}

// generic case: symbolic pole (x, y) on the curve
inline std::vector<KernelAtPoint> solve_generic_case(const AnsatzSystem& sys,
                                                     const EllipticDifferenceEquation& eq,
                                                     HeightCalculator& calc) {
  std::vector<KernelAtPoint> out;
  if (sys.degP < 0 || sys.basis.empty()) return out;
  const CurvePtr& c = eq.curve();
  FieldPtr K = c->field();
  FieldElement one = FieldElement::one(K);
  size_t n = sys.basis.size();
  if (sys.rows.size() < n)
    throw PositiveDimensionalVariety("ansatz system has fewer equations than unknowns");

  // curve relation in the pole coordinates
  auto fx_of = [&](const FieldElement& xv) { return c->rhs(xv); };
  MPoly fx = MPoly::variable(c, Mono5{0, 0, 0, 3, 0}, one) +
             MPoly::variable(c, Mono5{0, 0, 0, 1, 0}, c->a()) + MPoly::constant(c, c->b());

  // minors and their y-norms
  std::vector<MPoly> dets, As, Bs, Es;
  for (const auto& subset : detail::minor_subsets(sys.rows.size(), n, 6)) {
    MPoly d = detail::det_parametric(sys.rows, subset, c);
    if (d.zero()) continue;
    auto [A, B] = d.split_y();
    MPoly E = A * A - fx * (B * B);
    if (E.zero()) continue;  // det vanishes identically on the pole curve
    dets.push_back(std::move(d));
    As.push_back(std::move(A));
    Bs.push_back(std::move(B));
    Es.push_back(std::move(E));
    if (dets.size() >= 4) break;
  }
  if (dets.empty())
    throw PositiveDimensionalVariety(
        "all tested minors vanish identically on the pole variety");

  // lambda-content: values of lambda where tested minors vanish for every pole
  std::set<std::vector<Rational>> content_lambdas;
  {
    UniPoly<FieldElement> gcont;
    for (const auto& E : Es) {
      UniPoly<FieldElement> ci = detail::lambda_content(E);
      gcont = gcont.zero() ? ci : gcd_monic(gcont, ci);
      if (gcont.degree() == 0) break;
    }
    if (!gcont.zero() && gcont.degree() > 0) {
      FieldElement zero{};
      while (gcont.degree() > 0 && is_zero(gcont.coeff(0)))
        gcont = gcont / UniPoly<FieldElement>({zero, one});
      if (gcont.degree() > 0) {
        for (const auto& root : roots_in_field(gcont)) {
          if (is_zero(root.value)) continue;
          // positive-dimensional if the full matrix drops rank at generic poles
          int drops = 0;
          for (long kk : {5, 6, 7}) {
            CurvePoint p = scalar_mul(kk, eq.delta());
            Matrix<FieldElement> spec(sys.rows.size(), std::vector<FieldElement>(n));
            for (size_t r = 0; r < sys.rows.size(); ++r)
              for (size_t k2 = 0; k2 < n; ++k2)
                spec[r][k2] = [&] {
                  MPoly e = sys.rows[r][k2].eval_lambda(root.value).eval_x(p.x()).eval_y(p.y());
                  return e.zero() ? FieldElement{} : e.terms().begin()->second;
                }();
            if (rank(spec) < static_cast<int>(n)) ++drops;
          }
          if (drops == 3)
            throw PositiveDimensionalVariety(
                "a one-parameter family of poles survives at lambda = " + root.value.str());
          content_lambdas.insert(root.value.coeffs());
        }
      }
    }
  }

  // primitive parts and lambda eliminant
  std::vector<MPoly> Ep;
  for (const auto& E : Es)
    Ep.push_back(detail::divide_lambda_content(E, detail::lambda_content(E), c));
  UniPoly<FieldElement> elim;
  for (size_t i = 0; i + 1 < Ep.size() && i < 2; ++i) {
    UniPoly<FieldElement> r = detail::resultant_x(Ep[i], Ep[i + 1], c);
    if (r.zero()) continue;
    elim = elim.zero() ? r.monic() : gcd_monic(elim, r);
    if (elim.degree() == 0) break;
  }
  if (elim.zero() && Ep.size() >= 2)
    throw PositiveDimensionalVariety("pairwise resultants vanish identically");
  if (Ep.size() < 2) {
    // a single usable minor: its x-content in lambda is the only handle
    elim = detail::lambda_content(Es[0]);
  }

  std::set<std::vector<Rational>> lambda_cands = content_lambdas;
  if (!elim.zero() && elim.degree() > 0) {
    FieldElement zero{};
    while (elim.degree() > 0 && is_zero(elim.coeff(0)))
      elim = elim / UniPoly<FieldElement>({zero, one});
    UniPoly<FieldElement> residual = elim;
    for (const auto& root : roots_in_field(elim)) {
      if (is_zero(root.value)) continue;
      lambda_cands.insert(root.value.coeffs());
      UniPoly<FieldElement> lin({-root.value, one});
      for (int i = 0; i < root.multiplicity; ++i) residual = residual / lin;
    }
    // genuine non-K lambda would require an extension; junk factors of a
    // several-minor gcd are overwhelmingly unlikely to align
    if (residual.degree() > 0) throw ExtensionRequired(detail::lambda_poly_str(residual.monic()));
  }

  // per lambda candidate: x eliminant, then y from a y-linear minor
  std::set<detail::ParametricPoint> seen;
  for (const auto& lcoeffs : lambda_cands) {
    FieldElement lam(K, lcoeffs);
    UniPoly<FieldElement> gx;
    for (const auto& E : Es) {
      UniPoly<FieldElement> ex = E.eval_lambda(lam).as_x_poly();
      if (ex.zero()) continue;
      gx = gx.zero() ? ex.monic() : gcd_monic(gx, ex);
      if (gx.degree() == 0) break;
    }
    if (gx.zero() || gx.degree() == 0) continue;
    UniPoly<FieldElement> residual = gx;
    for (const auto& xr : roots_in_field(gx)) {
      UniPoly<FieldElement> lin({-xr.value, one});
      for (int i = 0; i < xr.multiplicity; ++i) residual = residual / lin;
      // y from a minor that is y-linear at this point
      std::vector<FieldElement> ys;
      bool resolved = false;
      for (size_t i = 0; i < dets.size() && !resolved; ++i) {
        FieldElement bv = [&] {
          MPoly e = Bs[i].eval_lambda(lam).eval_x(xr.value);
          return e.zero() ? FieldElement{} : e.terms().begin()->second;
        }();
        if (is_zero(bv)) continue;
        FieldElement av = [&] {
          MPoly e = As[i].eval_lambda(lam).eval_x(xr.value);
          return e.zero() ? FieldElement{} : e.terms().begin()->second;
        }();
        FieldElement yv = -av / bv;
        if (yv * yv == fx_of(xr.value)) ys.push_back(yv);
        resolved = true;
      }
      if (!resolved) {
        // every minor is y-free here: take both curve sheets if K-rational
        UniPoly<FieldElement> sq({-fx_of(xr.value), FieldElement{}, one});
        for (const auto& yr : roots_in_field(sq)) ys.push_back(yr.value);
      }
      for (const auto& yv : ys) {
        CurvePoint pole(c, xr.value, yv);
        detail::ParametricPoint key{lam, pole};
        if (!seen.insert(key).second) continue;
        Matrix<FieldElement> spec(sys.rows.size(), std::vector<FieldElement>(n));
        for (size_t r = 0; r < sys.rows.size(); ++r)
          for (size_t k2 = 0; k2 < n; ++k2) {
            MPoly e = sys.rows[r][k2].eval_lambda(lam).eval_x(xr.value).eval_y(yv);
            spec[r][k2] = e.zero() ? FieldElement{} : e.terms().begin()->second;
          }
        auto ker = kernel_basis(spec, one);
        if (!ker.empty()) out.push_back({lam, pole, std::move(ker)});
      }
    }
    if (residual.degree() > 0)
      throw ExtensionRequired(residual.monic().str(
          "x", +[](const FieldElement& f) { return f.str(); }));
  }
  return out;
}

}  // namespace ellshift

#endif
