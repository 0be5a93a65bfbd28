// Univariate polynomials over an exact field. Coefficients ascending,
// trailing-zero-free; the zero polynomial has an empty coefficient list.
//
// The coefficient type F must provide field arithmetic, equality, and the
// free functions is_zero(F) / one_of(F).
#ifndef ELLSHIFT_UNIPOLY_HPP
#define ELLSHIFT_UNIPOLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "ellshift/error.hpp"

namespace ellshift {

template <class F>
class UniPoly {
  std::vector<F> c_;

  void strip() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }

 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { strip(); }
  static UniPoly constant(F v) {
    UniPoly p;
    if (!is_zero(v)) p.c_.push_back(std::move(v));
    return p;
  }
  // the monomial c * x^k
  static UniPoly monomial(F coeff, int k) {
    UniPoly p;
    if (!is_zero(coeff)) {
      p.c_.assign(k, F{});
      p.c_.push_back(std::move(coeff));
    }
    return p;
  }

  const std::vector<F>& coeffs() const { return c_; }
  bool zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const F& lc() const { return c_.back(); }
  F coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return F{};
    return c_[k];
  }
  void set_coeff(int k, F v) {
    if (k >= static_cast<int>(c_.size())) c_.resize(k + 1, F{});
    c_[k] = std::move(v);
    strip();
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), F{});
    for (size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size() && i < b.c_.size())
        r[i] = a.c_[i] + b.c_[i];
      else if (i < a.c_.size())
        r[i] = a.c_[i];
      else
        r[i] = b.c_[i];
    }
    return UniPoly(std::move(r));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), F{});
    for (size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size() && i < b.c_.size())
        r[i] = a.c_[i] - b.c_[i];
      else if (i < a.c_.size())
        r[i] = a.c_[i];
      else
        r[i] = F{} - b.c_[i];
    }
    return UniPoly(std::move(r));
  }
  UniPoly operator-() const {
    std::vector<F> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(F{} - x);
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.zero() || b.zero()) return UniPoly();
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, F{});
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const F& s, const UniPoly& p) {
    if (is_zero(s)) return UniPoly();
    std::vector<F> r;
    r.reserve(p.c_.size());
    for (const auto& x : p.c_) r.push_back(s * x);
    return UniPoly(std::move(r));
  }

  // quotient and remainder; requires the coefficient field
  friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.zero()) throw DivisionByZero("polynomial division by zero");
    if (a.degree() < b.degree()) return {UniPoly(), a};
    std::vector<F> rem = a.c_;
    std::vector<F> quo(a.degree() - b.degree() + 1, F{});
    F inv_lb = one_of(b.lc()) / b.lc();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
      F q = rem[k + b.degree()] * inv_lb;
      if (!is_zero(q)) {
        quo[k] = q;
        for (int i = 0; i <= b.degree(); ++i) rem[k + i] = rem[k + i] - q * b.c_[i];
      }
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
  }
  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

  UniPoly monic() const {
    if (zero()) return *this;
    return (one_of(lc()) / lc()) * *this;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<F> r;
    r.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) {
      F k = c_[i];
      F acc = F{};
      for (size_t j = 0; j < i; ++j) acc = acc + k;  // i * c_i without an int ctor
      r.push_back(acc);
    }
    return UniPoly(std::move(r));
  }

  F eval(const F& x) const {
    F acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // Horner evaluation into another ring through an injection F -> G.
  template <class G, class Inject>
  G eval_map(const G& x, Inject inject, const G& zero) const {
    G acc = zero;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + inject(*it);
    return acc;
  }

  UniPoly pow(int n) const {
    if (zero()) {
      if (n == 0) throw Error("Internal", "0^0 polynomial power");
      return UniPoly();
    }
    UniPoly r = constant(one_of(lc()));
    UniPoly base = *this;
    while (n > 0) {
      if (n & 1) r = r * base;
      base = base * base;
      n >>= 1;
    }
    return r;
  }

  std::string str(const std::string& var = "x",
                  std::string (*fmt)(const F&) = nullptr) const;
};

template <class F>
UniPoly<F> gcd_monic(UniPoly<F> a, UniPoly<F> b) {
  if (a.zero() && b.zero()) throw Error("Internal", "gcd(0,0)");
  while (!b.zero()) {
    UniPoly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// extended gcd: returns (g, u, v) monic with u*a + v*b = g
template <class F>
std::tuple<UniPoly<F>, UniPoly<F>, UniPoly<F>> xgcd(const UniPoly<F>& a, const UniPoly<F>& b) {
  UniPoly<F> r0 = a, r1 = b;
  UniPoly<F> s0 = UniPoly<F>::constant(one_of(a.zero() ? b.lc() : a.lc())), s1;
  UniPoly<F> t0, t1 = s0;
  while (!r1.zero()) {
    auto [q, r2] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r2);
    UniPoly<F> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    UniPoly<F> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.zero()) throw Error("Internal", "xgcd(0,0)");
  F inv = one_of(r0.lc()) / r0.lc();
  return {inv * r0, inv * s0, inv * t0};
}

// Resultant over a field, by the Euclidean recurrence.
template <class F>
F resultant(UniPoly<F> a, UniPoly<F> b) {
  if (a.zero() || b.zero()) throw Error("Internal", "resultant of zero polynomial");
  F one = one_of(a.degree() >= 0 ? a.lc() : b.lc());
  if (a.degree() == 0 && b.degree() == 0) return one;
  F acc = one;
  bool negate = false;
  while (true) {
    if (a.degree() < b.degree()) {
      if ((a.degree() % 2) && (b.degree() % 2)) negate = !negate;
      std::swap(a, b);
    }
    if (b.degree() == 0) {
      F r = acc;
      for (int i = 0; i < a.degree(); ++i) r = r * b.lc();
      return negate ? F{} - r : r;
    }
    UniPoly<F> rem = a % b;
    if (rem.zero()) return F{};  // common factor of positive degree
    if ((a.degree() % 2) && (b.degree() % 2)) negate = !negate;
    for (int i = 0; i < a.degree() - rem.degree(); ++i) acc = acc * b.lc();
    a = std::move(b);
    b = std::move(rem);
  }
}

// Squarefree decomposition in characteristic zero: returns monic pairwise
// coprime (g, m) with p = lc * prod g^m.
template <class F>
std::vector<std::pair<UniPoly<F>, int>> squarefree_decomposition(const UniPoly<F>& p) {
  std::vector<std::pair<UniPoly<F>, int>> out;
  if (p.degree() <= 0) return out;
  // T_k = gcd-chain; R_k = T_{k-1}/T_k = product of primes with multiplicity >= k
  std::vector<UniPoly<F>> T;
  T.push_back(p.monic());
  while (T.back().degree() > 0) {
    const UniPoly<F>& t = T.back();
    T.push_back(gcd_monic(t, t.derivative()));
  }
  std::vector<UniPoly<F>> R;  // R[k] for multiplicity >= k+1
  for (size_t k = 0; k + 1 < T.size(); ++k) R.push_back(T[k] / T[k + 1]);
  for (size_t k = 0; k < R.size(); ++k) {
    UniPoly<F> exact = (k + 1 < R.size()) ? R[k] / R[k + 1] : R[k];
    if (exact.degree() > 0) out.emplace_back(exact.monic(), static_cast<int>(k) + 1);
  }
  return out;
}

template <class F>
std::string UniPoly<F>::str(const std::string& var, std::string (*fmt)(const F&)) const {
  if (zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    if (is_zero(c_[k])) continue;
    if (!out.empty()) out += " + ";
    std::string cs = fmt ? fmt(c_[k]) : std::string("c");
    if (k == 0)
      out += cs;
    else {
      out += "(" + cs + ")*" + var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace ellshift

#endif
