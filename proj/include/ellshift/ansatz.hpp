// Ansatz machinery shared by the three solvers: the weighted monomial basis
// of functions with poles only at O, the minimal vanishing polynomial of the
// universal divisor, and assembly of the (possibly parametric) linear system.
#ifndef ELLSHIFT_ANSATZ_HPP
#define ELLSHIFT_ANSATZ_HPP

#include <string>
#include <utility>
#include <vector>

#include "ellshift/equation.hpp"
#include "ellshift/mpoly.hpp"

namespace ellshift {

// clear a representation-only denominator: f must be a polynomial function
inline CurvePoly<FieldElement> as_polynomial(const CurveFunc<FieldElement>& f) {
  if (f.zero()) throw Error("Internal", "as_polynomial of zero");
  const CurvePoly<FieldElement>& D = f.den();
  if (D.weight() == 0) {
    FieldElement inv = FieldElement::one(D.dominant_coefficient().field()) / D.dominant_coefficient();
    return inv * f.num();
  }
  // multiply by the conjugate of the denominator: f = N conj(D) / norm(D)
  CurvePoly<FieldElement> nc = f.num() * D.conjugate();
  UniPoly<FieldElement> nrm = D.norm();
  auto [qa, ra] = divmod(nc.A(), nrm);
  if (!ra.zero()) throw Error("Internal", "as_polynomial: function has affine poles");
  UniPoly<FieldElement> qb;
  if (!nc.B().zero()) {
    auto [qb2, rb] = divmod(nc.B(), nrm);
    if (!rb.zero()) throw Error("Internal", "as_polynomial: function has affine poles");
    qb = qb2;
  }
  return CurvePoly<FieldElement>(f.num().ring(), qa, qb);
}

// basis of L(n I_O): monomials u^i v^j with j <= 1 and 2i + 3j <= n,
// ordered by weight
inline std::vector<CurvePoly<FieldElement>> riemann_roch_basis(const CurvePtr& c, int n) {
  std::vector<CurvePoly<FieldElement>> out;
  auto ring = params_of(c);
  FieldElement one = FieldElement::one(c->field());
  std::vector<std::pair<int, std::pair<int, int>>> monos;
  for (int j = 0; j <= 1; ++j)
    for (int i = 0; 2 * i + 3 * j <= n; ++i) monos.push_back({2 * i + 3 * j, {i, j}});
  std::sort(monos.begin(), monos.end());
  for (const auto& [w, ij] : monos) {
    UniPoly<FieldElement> m = UniPoly<FieldElement>::monomial(one, ij.first);
    if (ij.second == 0)
      out.emplace_back(ring, m, UniPoly<FieldElement>());
    else
      out.emplace_back(ring, UniPoly<FieldElement>(), m);
  }
  return out;
}

// minimal-degree polynomial vanishing on the (effective, affine) divisor,
// with the single compensating extra root placed at -elliptic_sum when the
// completed divisor is not principal
inline CurvePoly<FieldElement> min_degree_vanishing_poly(const Divisor& daff, const CurvePtr& c) {
  Divisor d = daff.affine_part();
  for (const auto& [p, m] : d.entries())
    if (m < 0) throw Error("Internal", "min_degree_vanishing_poly needs an effective divisor");
  Divisor completed = d;
  completed.add(CurvePoint::infinity(c), -d.total());
  if (!is_principal(completed)) {
    CurvePoint extra = -elliptic_sum(completed);
    completed.add(extra, 1);
    completed.add(CurvePoint::infinity(c), -1);
  }
  return as_polynomial(realize(completed));
}

// per-shift data entering the ansatz rows
struct ShiftData {
  CurvePoly<FieldElement> W;        // vertical at i delta (constant 1 for i = 0)
  CurvePoly<FieldElement> UN, VN;   // u(p+i d) = UN/W^2, v(p+i d) = VN/W^3
  CurvePoly<FieldElement> QN, QD;   // Q(p+i d) = QN/QD
};

enum class AnsatzMode { Rational, ThetaAtO, ThetaGeneric };

struct AnsatzSystem {
  std::vector<CurvePoly<FieldElement>> basis;  // numerator monomials m_k
  CurvePoly<FieldElement> Q;
  int degP = -1;
  AnsatzMode mode = AnsatzMode::Rational;
  // linear system: rows indexed by (u,v) monomials of the cleared residual,
  // entries polynomial in (lambda, x, y) modulo the pole-curve relation
  std::vector<std::vector<MPoly>> rows;
};

namespace detail {

// symbolic Theta shift-ratio numerator/denominator after pulling back by
// tau_j, with the pole (x, y) left symbolic; cleared by W_j^3
inline std::pair<MPoly, MPoly> theta_ratio_parametric(const EllipticDifferenceEquation& eq,
                                                      const ShiftData& sd) {
  const CurvePtr& c = eq.curve();
  FieldPtr K = c->field();
  FieldElement one = FieldElement::one(K);
  const FieldElement& xd = eq.delta().x();
  const FieldElement& yd = eq.delta().y();
  MPoly U = MPoly::from_uv(sd.UN, c);
  MPoly V = MPoly::from_uv(sd.VN, c);
  MPoly W = MPoly::from_uv(sd.W, c);
  MPoly W2 = W * W;
  MPoly W3 = W2 * W;
  MPoly X = MPoly::variable(c, Mono5{0, 0, 0, 1, 0}, one);
  MPoly Y = MPoly::variable(c, Mono5{0, 0, 0, 0, 1}, one);
  MPoly xdc = MPoly::constant(c, xd);
  MPoly ydc = MPoly::constant(c, yd);
  MPoly xmxd = X - xdc;  // x - x_delta
  // line through (x,y) and -delta, composed with tau and cleared by W^3:
  //   -(y + y_d)(u - x) + (x - x_d)(v - y)
  MPoly L = (MPoly(c) - (Y + ydc)) * (U * W - X * W3) + xmxd * (V - Y * W3);
  // vertical at (x,y) - delta, cleared:
  //   u (x-x_d)^2 - (y+y_d)^2 + (x+x_d)(x-x_d)^2, composed and cleared by W^2
  MPoly xmxd2 = xmxd * xmxd;
  MPoly Vst = U * xmxd2 - W2 * ((Y + ydc) * (Y + ydc) - (X + xdc) * xmxd2);
  // normalization (x - x_d) making the dominant coefficient exactly lambda
  MPoly RN = xmxd * L;
  MPoly RD = Vst * W;
  return {RN, RD};
}

}  // namespace detail

// Assemble the cleared residual sum_i lambda^i a_i (P Q^-1 Theta-ratio...)(p + i d)
// as a linear system in the coefficients of P.
inline AnsatzSystem build_ansatz(const EllipticDifferenceEquation& eq, const Divisor& universal,
                                 AnsatzMode mode) {
  const CurvePtr& c = eq.curve();
  FieldPtr K = c->field();
  FieldElement one = FieldElement::one(K);
  int l = eq.order();

  AnsatzSystem sys;
  sys.mode = mode;
  sys.Q = min_degree_vanishing_poly(universal.affine_part(), c);
  sys.degP = sys.Q.weight() + universal.at_infinity() + (mode == AnsatzMode::Rational ? 0 : 1);
  if (sys.degP < 0) return sys;
  sys.basis = riemann_roch_basis(c, sys.degP);

  // shift data
  std::vector<ShiftData> sd(l + 1);
  CurveFunc<FieldElement> Qf{sys.Q};
  for (int i = 0; i <= l; ++i) {
    CurvePoint qi = scalar_mul(i, eq.delta());
    sd[i].W = vertical_through(c, qi);
    if (i == 0) {
      auto ring = params_of(c);
      sd[i].UN = CurvePoly<FieldElement>::coordinate_u(ring, one);
      sd[i].VN = CurvePoly<FieldElement>::coordinate_v(ring, one);
      sd[i].QN = sys.Q;
      sd[i].QD = CurvePoly<FieldElement>::constant(ring, one);
    } else {
      const TranslationMap& t = eq.tau(i);
      CurveFunc<FieldElement> W2{sd[i].W * sd[i].W};
      CurveFunc<FieldElement> W3{sd[i].W * sd[i].W * sd[i].W};
      sd[i].UN = as_polynomial(t.u * W2);
      sd[i].VN = as_polynomial(t.v * W3);
      CurveFunc<FieldElement> qt = pullback(Qf, t);
      sd[i].QN = qt.num();
      sd[i].QD = qt.den();
    }
  }

  // symbolic Theta pullbacks for j = 0..l-1 (generic mode only)
  std::vector<MPoly> RN, RD;
  if (mode == AnsatzMode::ThetaGeneric) {
    for (int j = 0; j < l; ++j) {
      auto [rn, rd] = detail::theta_ratio_parametric(eq, sd[j]);
      RN.push_back(std::move(rn));
      RD.push_back(std::move(rd));
    }
  }

  // common-denominator complements: for term i multiply by
  // prod_{i' != i} (QN_{i'} W_{i'}^degP) and by prod_{j<i} RN_j prod_{j>=i} RD_j
  std::vector<CurvePoly<FieldElement>> clear(l + 1);
  {
    auto ring = params_of(c);
    for (int i = 0; i <= l; ++i) {
      CurvePoly<FieldElement> acc = CurvePoly<FieldElement>::constant(ring, one);
      for (int i2 = 0; i2 <= l; ++i2) {
        if (i2 == i) continue;
        acc = acc * sd[i2].QN * sd[i2].W.pow(sys.degP);
      }
      clear[i] = std::move(acc);
    }
  }
  std::vector<MPoly> theta_part;
  for (int i = 0; i <= l; ++i) {
    MPoly acc = MPoly::constant(c, one);
    if (mode == AnsatzMode::ThetaGeneric) {
      for (int j = 0; j < i; ++j) acc = acc * RN[j];
      for (int j = i; j < l; ++j) acc = acc * RD[j];
    }
    theta_part.push_back(std::move(acc));
  }

  // residual numerators per unknown
  size_t nb = sys.basis.size();
  std::vector<MPoly> Nk(nb, MPoly(c));
  for (size_t k = 0; k < nb; ++k) {
    int alpha = sys.basis[k].B().zero() ? sys.basis[k].A().degree() : sys.basis[k].B().degree();
    int beta = sys.basis[k].B().zero() ? 0 : 1;
    for (int i = 0; i <= l; ++i) {
      CurvePoly<FieldElement> mn = sd[i].UN.pow(alpha);
      if (beta) mn = mn * sd[i].VN;
      mn = mn * sd[i].W.pow(sys.degP - 2 * alpha - 3 * beta);
      CurvePoly<FieldElement> concrete = eq.coeff(i) * sd[i].QD * mn * clear[i];
      MPoly term = MPoly::from_uv(concrete, c) * theta_part[i];
      if (mode != AnsatzMode::Rational && i > 0)
        term = term * MPoly::variable(c, Mono5{0, 0, static_cast<int16_t>(i), 0, 0}, one);
      Nk[k] = Nk[k] + term;
    }
  }

  // rows indexed by the union of (u, v) monomials
  std::map<std::pair<int, int>, size_t> row_index;
  std::vector<std::map<std::pair<int, int>, MPoly>> collected;
  collected.reserve(nb);
  for (size_t k = 0; k < nb; ++k) {
    collected.push_back(Nk[k].collect_uv());
    for (const auto& [mono, coeff] : collected.back())
      row_index.emplace(mono, row_index.size());
  }
  // deterministic row order
  std::vector<std::pair<int, int>> monos;
  for (const auto& [m, idx] : row_index) monos.push_back(m);
  std::sort(monos.begin(), monos.end());
  sys.rows.assign(monos.size(), std::vector<MPoly>(nb, MPoly(c)));
  for (size_t k = 0; k < nb; ++k)
    for (auto& [mono, coeff] : collected[k]) {
      size_t r = std::lower_bound(monos.begin(), monos.end(), mono) - monos.begin();
      sys.rows[r][k] = coeff;
    }
  return sys;
}

}  // namespace ellshift

#endif
