// Sparse polynomials in (u, v, lambda, x, y) over K, reduced modulo both
// curve relations v^2 = u^3+au+b and y^2 = x^3+ax+b. (u,v) is the running
// point, (x,y) the symbolic Theta pole, lambda the twist parameter.
#ifndef ELLSHIFT_MPOLY_HPP
#define ELLSHIFT_MPOLY_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ellshift/curvepoly.hpp"

namespace ellshift {

struct Mono5 {
  int16_t eu = 0, ev = 0, el = 0, ex = 0, ey = 0;
  auto operator<=>(const Mono5&) const = default;
};

class MPoly {
  CurvePtr curve_;
  std::map<Mono5, FieldElement> t_;

  void insert(const Mono5& m, const FieldElement& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
      it->second = it->second + c;
      if (is_zero(it->second)) t_.erase(it);
    }
  }

  // apply v^2 and y^2 rules until exponents are <= 1
  void reduce() {
    bool again = true;
    const FieldElement& a = curve_->a();
    const FieldElement& b = curve_->b();
    while (again) {
      again = false;
      for (auto it = t_.begin(); it != t_.end();) {
        if (it->first.ev >= 2 || it->first.ey >= 2) {
          Mono5 m = it->first;
          FieldElement c = it->second;
          it = t_.erase(it);
          if (m.ev >= 2) {
            m.ev -= 2;
            Mono5 m3 = m, m1 = m;
            m3.eu += 3;
            m1.eu += 1;
            insert(m3, c);
            insert(m1, a * c);
            insert(m, b * c);
          } else {
            m.ey -= 2;
            Mono5 m3 = m, m1 = m;
            m3.ex += 3;
            m1.ex += 1;
            insert(m3, c);
            insert(m1, a * c);
            insert(m, b * c);
          }
          again = true;
        } else {
          ++it;
        }
      }
    }
  }

 public:
  explicit MPoly(CurvePtr c) : curve_(std::move(c)) {}
  static MPoly constant(CurvePtr c, FieldElement v) {
    MPoly p(std::move(c));
    p.insert(Mono5{}, v);
    return p;
  }
  static MPoly variable(CurvePtr c, Mono5 m, FieldElement coeff) {
    MPoly p(std::move(c));
    p.t_.emplace(m, std::move(coeff));
    p.reduce();
    return p;
  }
  // embed a curve polynomial in the running point (u, v)
  static MPoly from_uv(const CurvePoly<FieldElement>& P, CurvePtr c) {
    MPoly p(std::move(c));
    for (int k = 0; k <= P.A().degree(); ++k)
      p.insert(Mono5{static_cast<int16_t>(k), 0, 0, 0, 0}, P.A().coeff(k));
    for (int k = 0; k <= P.B().degree(); ++k)
      p.insert(Mono5{static_cast<int16_t>(k), 1, 0, 0, 0}, P.B().coeff(k));
    return p;
  }

  const CurvePtr& curve() const { return curve_; }
  const std::map<Mono5, FieldElement>& terms() const { return t_; }
  bool zero() const { return t_.empty(); }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }

  int degree_of(int16_t Mono5::* field) const {
    int d = 0;
    for (const auto& [m, c] : t_) d = std::max<int>(d, m.*field);
    return d;
  }
  int deg_lambda() const { return degree_of(&Mono5::el); }
  int deg_x() const { return degree_of(&Mono5::ex); }
  int deg_y() const { return degree_of(&Mono5::ey); }
  int deg_u() const { return degree_of(&Mono5::eu); }
  int deg_v() const { return degree_of(&Mono5::ev); }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (const auto& [m, c] : b.t_) r.insert(m, c);
    return r;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (const auto& [m, c] : b.t_) r.insert(m, FieldElement{} - c);
    return r;
  }
  MPoly operator-() const {
    MPoly r(curve_);
    for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(a.curve_);
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) {
        Mono5 m{static_cast<int16_t>(ma.eu + mb.eu), static_cast<int16_t>(ma.ev + mb.ev),
                static_cast<int16_t>(ma.el + mb.el), static_cast<int16_t>(ma.ex + mb.ex),
                static_cast<int16_t>(ma.ey + mb.ey)};
        r.insert(m, ca * cb);
      }
    r.reduce();
    return r;
  }
  friend MPoly operator*(const FieldElement& s, const MPoly& a) {
    MPoly r(a.curve_);
    for (const auto& [m, c] : a.t_) {
      FieldElement sc = s * c;
      if (!is_zero(sc)) r.t_.emplace(m, sc);
    }
    return r;
  }
  MPoly pow(int n) const {
    MPoly r = constant(curve_, FieldElement::one(curve_->field()));
    MPoly base = *this;
    while (n > 0) {
      if (n & 1) r = r * base;
      base = base * base;
      n >>= 1;
    }
    return r;
  }

  // substitute a value for one variable (no re-reduction needed: stored form
  // has ev, ey <= 1 and never reintroduces squares)
  MPoly substitute(int16_t Mono5::* field, const FieldElement& value) const {
    MPoly r(curve_);
    for (const auto& [m, c] : t_) {
      FieldElement f = c;
      for (int i = 0; i < m.*field; ++i) f = f * value;
      Mono5 mm = m;
      mm.*field = 0;
      r.insert(mm, f);
    }
    return r;
  }
  MPoly eval_lambda(const FieldElement& v) const { return substitute(&Mono5::el, v); }
  MPoly eval_x(const FieldElement& v) const { return substitute(&Mono5::ex, v); }
  MPoly eval_y(const FieldElement& v) const { return substitute(&Mono5::ey, v); }

  // split P = A + y B (both free of y)
  std::pair<MPoly, MPoly> split_y() const {
    MPoly A(curve_), B(curve_);
    for (const auto& [m, c] : t_) {
      Mono5 mm = m;
      if (m.ey == 0)
        A.insert(mm, c);
      else {
        mm.ey = 0;
        B.insert(mm, c);
      }
    }
    return {A, B};
  }

  // rows of the linear system: group by the (u, v) monomial
  std::map<std::pair<int, int>, MPoly> collect_uv() const {
    std::map<std::pair<int, int>, MPoly> rows;
    for (const auto& [m, c] : t_) {
      Mono5 mm = m;
      mm.eu = mm.ev = 0;
      auto key = std::make_pair<int, int>(m.eu, m.ev);
      auto it = rows.find(key);
      if (it == rows.end()) it = rows.emplace(key, MPoly(curve_)).first;
      it->second.insert(mm, c);
    }
    return rows;
  }

  // view as univariate in lambda (requires eu = ev = ex = ey = 0)
  UniPoly<FieldElement> as_lambda_poly() const {
    std::vector<FieldElement> cs;
    for (const auto& [m, c] : t_) {
      if (m.eu || m.ev || m.ex || m.ey)
        throw Error("Internal", "as_lambda_poly on a multivariate value");
      if (static_cast<size_t>(m.el) >= cs.size()) cs.resize(m.el + 1, FieldElement{});
      cs[m.el] = c;
    }
    return UniPoly<FieldElement>(cs);
  }
  // view as univariate in x (requires eu = ev = el = ey = 0)
  UniPoly<FieldElement> as_x_poly() const {
    std::vector<FieldElement> cs;
    for (const auto& [m, c] : t_) {
      if (m.eu || m.ev || m.el || m.ey)
        throw Error("Internal", "as_x_poly on a multivariate value");
      if (static_cast<size_t>(m.ex) >= cs.size()) cs.resize(m.ex + 1, FieldElement{});
      cs[m.ex] = c;
    }
    return UniPoly<FieldElement>(cs);
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : t_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")";
      auto app = [&](const char* nm, int e) {
        if (e > 0) {
          s += std::string("*") + nm;
          if (e > 1) s += "^" + std::to_string(e);
        }
      };
      app("u", m.eu);
      app("v", m.ev);
      app("L", m.el);
      app("x", m.ex);
      app("y", m.ey);
    }
    return s;
  }
};

inline bool is_zero(const MPoly& p) { return p.zero(); }

}  // namespace ellshift

#endif
