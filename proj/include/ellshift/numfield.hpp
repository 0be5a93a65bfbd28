// The coefficient field K = Q[t]/(m(t)) in the power basis, with refinable
// complex embeddings. A default-constructed FieldElement is an absorbing
// zero that adopts the field of the other operand; this keeps generic
// polynomial code free of explicit field plumbing.
#ifndef ELLSHIFT_NUMFIELD_HPP
#define ELLSHIFT_NUMFIELD_HPP

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "ellshift/croots.hpp"
#include "ellshift/error.hpp"
#include "ellshift/mpreal.hpp"
#include "ellshift/rational.hpp"
#include "ellshift/unipoly.hpp"

namespace ellshift {

class FieldDescription {
  std::vector<Rational> minpoly_;  // monic, ascending, length degree+1
  int degree_;
  std::vector<std::vector<Rational>> red_;  // t^(d+j) reduced, j = 0..d-2

  mutable std::mutex mu_;
  mutable mpfr_prec_t cached_prec_ = 0;
  mutable std::vector<RootDisk> conj_;  // conj_[0] is the designated embedding

  void compute_embeddings(mpfr_prec_t prec) const {
    std::vector<CNum> cs;
    cs.reserve(minpoly_.size());
    for (const auto& q : minpoly_) cs.emplace_back(Mp::from(q, prec), Mp(prec));
    std::vector<RootDisk> roots = complex_roots(std::move(cs), prec);
    if (conj_.empty()) {
      // canonical designation: largest real part, then largest imaginary part
      std::sort(roots.begin(), roots.end(), [](const RootDisk& a, const RootDisk& b) {
        int c = mpfr_cmp(a.center.re.get(), b.center.re.get());
        if (c != 0) return c > 0;
        return mpfr_cmp(a.center.im.get(), b.center.im.get()) > 0;
      });
      conj_ = std::move(roots);
    } else {
      // refine: match new roots to cached ones so identities are stable
      std::vector<RootDisk> matched(conj_.size(), RootDisk{CNum(prec), Mp(prec)});
      std::vector<bool> used(roots.size(), false);
      for (size_t i = 0; i < conj_.size(); ++i) {
        size_t best = 0;
        Mp bestd(prec);
        bool have = false;
        for (size_t j = 0; j < roots.size(); ++j) {
          if (used[j]) continue;
          Mp d = (roots[j].center - conj_[i].center).abs();
          if (!have || mpfr_cmp(d.get(), bestd.get()) < 0) {
            have = true;
            bestd = d;
            best = j;
          }
        }
        used[best] = true;
        matched[i] = roots[best];
      }
      conj_ = std::move(matched);
    }
    cached_prec_ = prec;
  }

 public:
  explicit FieldDescription(std::vector<Rational> minpoly) : minpoly_(std::move(minpoly)) {
    while (minpoly_.size() > 1 && minpoly_.back() == 0) minpoly_.pop_back();
    if (minpoly_.size() < 2) throw SchemaError("minimal polynomial must have degree >= 1");
    if (minpoly_.back() != 1) throw SchemaError("minimal polynomial must be monic");
    degree_ = static_cast<int>(minpoly_.size()) - 1;
    // reduction table: t^(d+j) = -(m - t^d) * t^j reduced iteratively
    if (degree_ > 1) {
      std::vector<Rational> td(degree_);  // t^d
      for (int i = 0; i < degree_; ++i) td[i] = -minpoly_[i];
      red_.push_back(td);
      for (int j = 1; j <= degree_ - 2; ++j) {
        std::vector<Rational> prev = red_.back();
        std::vector<Rational> next(degree_, Rational(0));
        // multiply prev by t, reduce the overflow term
        Rational top = prev[degree_ - 1];
        for (int i = degree_ - 1; i >= 1; --i) next[i] = prev[i - 1];
        next[0] = 0;
        for (int i = 0; i < degree_; ++i) next[i] += top * red_[0][i];
        red_.push_back(std::move(next));
      }
    }
  }

  static std::shared_ptr<const FieldDescription> rationals() {
    static std::shared_ptr<const FieldDescription> q =
        std::make_shared<FieldDescription>(std::vector<Rational>{Rational(0), Rational(1)});
    return q;
  }

  int degree() const { return degree_; }
  const std::vector<Rational>& minpoly() const { return minpoly_; }
  const std::vector<Rational>& reduction(int j) const { return red_[j]; }

  bool same(const FieldDescription& o) const {
    return this == &o || minpoly_ == o.minpoly_;
  }

  // all complex embeddings of the generator; index 0 is designated
  std::vector<CInt> embeddings(mpfr_prec_t prec) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (degree_ == 1) {
      Rational root = -minpoly_[0];
      return {CInt(RInt::exact(root, prec), RInt::zero(prec))};
    }
    if (cached_prec_ < prec) compute_embeddings(std::max<mpfr_prec_t>(prec, 64));
    std::vector<CInt> out;
    out.reserve(conj_.size());
    for (const auto& r : conj_) out.push_back(r.enclosure(prec));
    return out;
  }

  std::string str() const {
    UniPoly<Rational> m{std::vector<Rational>(minpoly_)};
    return m.str("t", +[](const Rational& q) { return to_string(q); });
  }
};

using FieldPtr = std::shared_ptr<const FieldDescription>;

class FieldElement {
  FieldPtr fld_;               // null <=> absorbing zero
  std::vector<Rational> c_;    // power basis, length degree when fld_ set

  static const FieldPtr& pick(const FieldPtr& a, const FieldPtr& b) {
    if (a && b && !a->same(*b)) throw Error("Internal", "field mismatch");
    return a ? a : b;
  }

 public:
  FieldElement() = default;
  FieldElement(FieldPtr f, std::vector<Rational> coeffs) : fld_(std::move(f)), c_(std::move(coeffs)) {
    if (!fld_) throw Error("Internal", "FieldElement with null field");
    c_.resize(fld_->degree(), Rational(0));
  }
  static FieldElement from(FieldPtr f, Rational q) {
    std::vector<Rational> c(f->degree(), Rational(0));
    c[0] = std::move(q);
    return FieldElement(std::move(f), std::move(c));
  }
  static FieldElement one(FieldPtr f) { return from(std::move(f), Rational(1)); }
  static FieldElement generator(FieldPtr f) {
    if (f->degree() == 1) return from(std::move(f), -f->minpoly()[0]);
    std::vector<Rational> c(f->degree(), Rational(0));
    c[1] = 1;
    return FieldElement(std::move(f), std::move(c));
  }

  const FieldPtr& field() const { return fld_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool zero() const {
    for (const auto& q : c_)
      if (q != 0) return false;
    return true;
  }

  // exact rational value when the element lies in Q
  bool is_rational(Rational* out = nullptr) const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    if (out) *out = c_.empty() ? Rational(0) : c_[0];
    return true;
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    size_t n = std::max(a.c_.size(), b.c_.size());
    for (size_t i = 0; i < n; ++i) {
      Rational x = i < a.c_.size() ? a.c_[i] : Rational(0);
      Rational y = i < b.c_.size() ? b.c_[i] : Rational(0);
      if (x != y) return false;
    }
    return true;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
  friend bool operator<(const FieldElement& a, const FieldElement& b) {
    size_t n = std::max(a.c_.size(), b.c_.size());
    for (size_t i = 0; i < n; ++i) {
      Rational x = i < a.c_.size() ? a.c_[i] : Rational(0);
      Rational y = i < b.c_.size() ? b.c_[i] : Rational(0);
      if (x != y) return x < y;
    }
    return false;
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    const FieldPtr& f = pick(a.fld_, b.fld_);
    if (!f) return FieldElement();
    std::vector<Rational> r(f->degree(), Rational(0));
    for (size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size()) r[i] += a.c_[i];
      if (i < b.c_.size()) r[i] += b.c_[i];
    }
    return FieldElement(f, std::move(r));
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    const FieldPtr& f = pick(a.fld_, b.fld_);
    if (!f) return FieldElement();
    std::vector<Rational> r(f->degree(), Rational(0));
    for (size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size()) r[i] += a.c_[i];
      if (i < b.c_.size()) r[i] -= b.c_[i];
    }
    return FieldElement(f, std::move(r));
  }
  FieldElement operator-() const {
    if (!fld_) return FieldElement();
    std::vector<Rational> r;
    r.reserve(c_.size());
    for (const auto& q : c_) r.push_back(-q);
    return FieldElement(fld_, std::move(r));
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    const FieldPtr& f = pick(a.fld_, b.fld_);
    if (!f || a.c_.empty() || b.c_.empty()) return FieldElement();
    int d = f->degree();
    std::vector<Rational> conv(2 * d - 1, Rational(0));
    for (int i = 0; i < d; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < d; ++j)
        if (b.c_[j] != 0) conv[i + j] += a.c_[i] * b.c_[j];
    }
    std::vector<Rational> r(conv.begin(), conv.begin() + d);
    for (int j = 0; j <= 2 * d - 2 - d; ++j) {
      if (conv[d + j] == 0) continue;
      const auto& red = f->reduction(j);
      for (int i = 0; i < d; ++i) r[i] += conv[d + j] * red[i];
    }
    return FieldElement(f, std::move(r));
  }
  FieldElement inverse() const {
    if (!fld_ || zero()) throw DivisionByZero("inverse of zero field element");
    if (fld_->degree() == 1) return from(fld_, Rational(1) / c_[0]);
    UniPoly<Rational> a{std::vector<Rational>(c_)};
    UniPoly<Rational> m{std::vector<Rational>(fld_->minpoly())};
    auto [g, u, v] = xgcd(a, m);
    if (g.degree() != 0)
      throw SchemaError("minimal polynomial is not irreducible: gcd " + g.str("t", +[](const Rational& q) { return to_string(q); }));
    // u*a = 1 mod m (g is monic constant 1)
    std::vector<Rational> r(fld_->degree(), Rational(0));
    for (int i = 0; i <= u.degree() && i < fld_->degree(); ++i) r[i] = u.coeff(i);
    return FieldElement(fld_, std::move(r));
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inverse();
  }

  FieldElement scaled(const Rational& q) const {
    if (!fld_) return FieldElement();
    std::vector<Rational> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(x * q);
    return FieldElement(fld_, std::move(r));
  }

  // enclosure of the image under the designated embedding
  CInt embed(mpfr_prec_t prec) const {
    if (!fld_ || c_.empty()) return CInt(RInt::zero(prec), RInt::zero(prec));
    return embed_along(fld_->embeddings(prec)[0], prec);
  }
  CInt embed_along(const CInt& gen, mpfr_prec_t prec) const {
    CInt acc(RInt::zero(prec), RInt::zero(prec));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * gen + CInt(RInt::exact(*it, prec), RInt::zero(prec));
    return acc;
  }

  std::string str() const {
    if (!fld_ || zero()) return "0";
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += to_string(c_[i]);
      if (i >= 1) out += "*t";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }
};

inline bool is_zero(const FieldElement& a) { return a.zero(); }
inline FieldElement one_of(const FieldElement& a) {
  if (!a.field()) throw Error("Internal", "one_of on fieldless zero");
  return FieldElement::one(a.field());
}

// embed_numeric of the spec: enclosure under the designated embedding
inline CInt embed_numeric(const FieldElement& a, mpfr_prec_t bits) {
  if (bits < 32) throw Error("Internal", "embed_numeric requires bits >= 32");
  return a.embed(bits);
}

// Characteristic polynomial of multiplication by a over Q, computed as
// Res_t(m(t), x - a(t)) by evaluation-interpolation; equals minpoly^(d/e).
UniPoly<Rational> char_polynomial(const FieldElement& a);
UniPoly<Rational> minimal_polynomial(const FieldElement& a);

template <class F>
UniPoly<F> lagrange_interpolate(const std::vector<std::pair<F, F>>& pts, const F& one) {
  UniPoly<F> acc;
  if (pts.empty()) return acc;
  for (size_t i = 0; i < pts.size(); ++i) {
    UniPoly<F> num = UniPoly<F>::constant(one);
    F den = one;
    for (size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      num = num * UniPoly<F>(std::vector<F>{F{} - pts[j].first, one});
      den = den * (pts[i].first - pts[j].first);
    }
    acc = acc + (pts[i].second / den) * num;
  }
  return acc;
}

inline UniPoly<Rational> char_polynomial(const FieldElement& a) {
  if (!a.field()) throw Error("Internal", "char_polynomial of fieldless zero");
  int d = a.field()->degree();
  if (d == 1) return UniPoly<Rational>(std::vector<Rational>{-a.coeffs()[0], Rational(1)});
  UniPoly<Rational> m{std::vector<Rational>(a.field()->minpoly())};
  std::vector<std::pair<Rational, Rational>> samples;
  for (int s = 0; samples.size() < static_cast<size_t>(d + 1); ++s) {
    Rational x(s);
    // Res_t(m(t), x - a(t))
    std::vector<Rational> diff(a.coeffs());
    for (auto& q : diff) q = -q;
    diff[0] += x;
    UniPoly<Rational> g{std::move(diff)};
    Rational r;
    if (g.zero())
      r = 0;
    else
      r = resultant(m, g);
    samples.emplace_back(x, r);
  }
  return lagrange_interpolate(samples, Rational(1));
}

inline UniPoly<Rational> minimal_polynomial(const FieldElement& a) {
  UniPoly<Rational> c = char_polynomial(a);
  UniPoly<Rational> g = gcd_monic(c, c.derivative());
  return (c / g).monic();
}

}  // namespace ellshift

#endif
