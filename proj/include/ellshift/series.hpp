// Truncated Laurent series over an exact field, plus the standard local
// expansions of (u, v) on a Weierstrass curve: at O in t = u/v, at ramified
// affine points in v, and elsewhere in u - x0.
#ifndef ELLSHIFT_SERIES_HPP
#define ELLSHIFT_SERIES_HPP

#include <utility>
#include <vector>

#include "ellshift/curve.hpp"
#include "ellshift/unipoly.hpp"

namespace ellshift {

// sum_{k >= lead} c[k-lead] t^k + O(t^(lead + c.size()))
template <class F>
struct Series {
  int lead = 0;
  std::vector<F> c;

  int order_bound() const { return lead + static_cast<int>(c.size()); }

  static Series zero_to(int n) {  // 0 + O(t^n)
    Series s;
    s.lead = n;
    return s;
  }
  static Series constant(F v, int n) {
    Series s;
    s.lead = 0;
    s.c.assign(n, F{});
    if (!s.c.empty()) s.c[0] = std::move(v);
    return s;
  }

  F coeff(int k) const {
    if (k < lead || k >= order_bound()) return F{};
    return c[k - lead];
  }

  // first exponent with a nonzero known coefficient; order_bound() if none
  int valuation() const {
    for (size_t i = 0; i < c.size(); ++i)
      if (!is_zero(c[i])) return lead + static_cast<int>(i);
    return order_bound();
  }
  bool known_nonzero() const { return valuation() < order_bound(); }

  Series shifted(int k) const {
    Series s = *this;
    s.lead += k;
    return s;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series r;
    r.lead = std::min(a.lead, b.lead);
    int end = std::min(a.order_bound(), b.order_bound());
    if (end <= r.lead) return zero_to(std::max(end, r.lead));
    r.c.assign(end - r.lead, F{});
    for (int k = r.lead; k < end; ++k) r.c[k - r.lead] = a.coeff(k) + b.coeff(k);
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series nb = b;
    for (auto& x : nb.c) x = F{} - x;
    return a + nb;
  }
  friend Series operator*(const Series& a, const Series& b) {
    // truncation: min over both factors' relative precision
    int na = static_cast<int>(a.c.size()), nb = static_cast<int>(b.c.size());
    int n = std::min(na, nb);
    Series r;
    r.lead = a.lead + b.lead;
    if (n <= 0) return zero_to(r.lead + std::max({na, nb, 0}));
    r.c.assign(n, F{});
    for (int i = 0; i < na; ++i) {
      if (is_zero(a.c[i])) continue;
      for (int j = 0; j < nb && i + j < n; ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    return r;
  }
  friend Series operator*(const F& s, const Series& a) {
    Series r = a;
    for (auto& x : r.c) x = s * x;
    return r;
  }

  // reciprocal; requires the leading coefficient to be nonzero
  Series inverse() const {
    int v = valuation();
    if (v >= order_bound()) throw DivisionByZero("inverse of zero series");
    int off = v - lead;
    int n = static_cast<int>(c.size()) - off;
    Series r;
    r.lead = -v;
    r.c.assign(n, F{});
    F inv0 = one_of(c[off]) / c[off];
    r.c[0] = inv0;
    for (int k = 1; k < n; ++k) {
      F acc{};
      for (int i = 1; i <= k; ++i) acc = acc + c[off + i] * r.c[k - i];
      r.c[k] = F{} - acc * inv0;
    }
    return r;
  }
  friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

  // square root with prescribed branch s0 (s0^2 = leading coefficient);
  // the valuation must be even
  Series sqrt_with(const F& s0) const {
    int v = valuation();
    if (v >= order_bound()) throw Error("Internal", "sqrt of zero series");
    if (v % 2 != 0) throw Error("Internal", "sqrt of odd-valuation series");
    int off = v - lead;
    int n = static_cast<int>(c.size()) - off;
    Series r;
    r.lead = v / 2;
    r.c.assign(n, F{});
    r.c[0] = s0;
    F inv2s0 = one_of(s0) / (s0 + s0);
    for (int k = 1; k < n; ++k) {
      F acc{};
      for (int i = 1; i < k; ++i) acc = acc + r.c[i] * r.c[k - i];
      r.c[k] = (c[off + k] - acc) * inv2s0;
    }
    return r;
  }
};

// Horner evaluation of a polynomial at a series.
template <class F>
Series<F> eval_series(const UniPoly<F>& p, const Series<F>& x, int n) {
  Series<F> acc = Series<F>::zero_to(n + std::max(0, -x.lead) * std::max(0, p.degree()));
  // Laurent-safe truncation bookkeeping is handled by the series ops; start
  // from the top coefficient
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    if (first) {
      acc = Series<F>::constant(p.coeff(k), n + std::max(0, -x.lead) * std::max(0, p.degree()));
      first = false;
    } else {
      acc = acc * x + Series<F>::constant(p.coeff(k), n + std::max(0, -x.lead) * std::max(0, p.degree()));
    }
  }
  if (first) return Series<F>::zero_to(n);
  return acc;
}

// Local expansion of the coordinate functions (u, v) around a point.
// uniformizer: t = u/v at O, v at 2-torsion affine points, u - x0 elsewhere.
struct CurveExpansion {
  Series<FieldElement> u, v;
};

// at O: u = t^-2 (1 + ...), v = t^-3 (1 + ...)
inline CurveExpansion expand_at_infinity(const CurvePtr& c, int terms) {
  FieldPtr K = c->field();
  FieldElement one = FieldElement::one(K);
  // w solves w^2 = w^3 + a t^4 w + b t^6, w = 1 + O(t^4); Newton iteration
  Series<FieldElement> w = Series<FieldElement>::constant(one, terms);
  for (int it = 0; it < 32; ++it) {
    // F(w) = w^3 - w^2 + a t^4 w + b t^6
    Series<FieldElement> t4 = Series<FieldElement>::constant(c->a(), terms).shifted(4);
    Series<FieldElement> t6 = Series<FieldElement>::constant(c->b(), terms).shifted(6);
    Series<FieldElement> f = w * w * w - w * w + t4 * w + t6;
    if (!f.known_nonzero()) break;
    Series<FieldElement> two_w = w + w;
    Series<FieldElement> three_w2 = w * w + w * w + w * w;
    Series<FieldElement> df = three_w2 - two_w + t4;
    w = w - f / df;
  }
  CurveExpansion e;
  e.u = w.shifted(-2);
  e.v = w.shifted(-3);
  return e;
}

// at an affine point; terms = number of series coefficients kept
inline CurveExpansion expand_at_affine(const CurvePoint& p, int terms) {
  const CurvePtr& c = p.curve();
  FieldPtr K = c->field();
  FieldElement one = FieldElement::one(K);
  UniPoly<FieldElement> f({c->b(), c->a(), FieldElement{}, one});
  CurveExpansion e;
  if (!is_zero(p.y())) {
    // uniformizer s = u - x0: u = x0 + s, v = sqrt(f(x0 + s)) with v(0) = y0
    Series<FieldElement> u;
    u.lead = 0;
    u.c.assign(terms, FieldElement{});
    u.c[0] = p.x();
    if (terms > 1) u.c[1] = one;
    Series<FieldElement> fu = eval_series(f, u, terms);
    e.u = u;
    e.v = fu.sqrt_with(p.y());
  } else {
    // ramified: uniformizer w = v; solve f(x0 + g(w)) = w^2 by Newton
    FieldElement fp = f.derivative().eval(p.x());  // nonzero: simple root of f
    Series<FieldElement> w2;
    w2.lead = 2;
    w2.c.assign(terms, FieldElement{});
    w2.c[0] = one;
    Series<FieldElement> g = Series<FieldElement>::zero_to(terms + 2);
    g.lead = 2;
    g.c.assign(terms, FieldElement{});
    g.c[0] = one_of(fp) / fp;
    UniPoly<FieldElement> fshift = f;  // f(x0 + .)
    {
      // Taylor shift by x0 for the cubic
      UniPoly<FieldElement> base({p.x(), one});
      UniPoly<FieldElement> acc = UniPoly<FieldElement>::constant(one);
      UniPoly<FieldElement> res;
      for (int k = 0; k <= f.degree(); ++k) {
        res = res + f.coeff(k) * acc;
        acc = acc * base;
      }
      fshift = res;
    }
    for (int it = 0; it < 32; ++it) {
      Series<FieldElement> val = eval_series(fshift, g, terms);
      Series<FieldElement> err = val - w2;
      if (!err.known_nonzero()) break;
      Series<FieldElement> dval = eval_series(fshift.derivative(), g, terms);
      g = g - err / dval;
    }
    Series<FieldElement> u;
    u.lead = 0;
    u.c.assign(terms + 2, FieldElement{});
    u.c[0] = p.x();
    e.u = u + g;
    Series<FieldElement> v;
    v.lead = 1;
    v.c.assign(terms, FieldElement{});
    v.c[0] = one;
    e.v = v;
  }
  return e;
}

inline CurveExpansion expand_at(const CurvePtr& c, const CurvePoint& p, int terms) {
  return p.is_infinity() ? expand_at_infinity(c, terms) : expand_at_affine(p, terms);
}

}  // namespace ellshift

#endif
