// The elliptic difference equation sum_i a_i(p) f(p + i delta) = 0:
// singularity extraction by relative valuations, orbit analysis, the
// universal divisor, hyperexponential transforms, and exact verification
// of solutions by substitution.
#ifndef ELLSHIFT_EQUATION_HPP
#define ELLSHIFT_EQUATION_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellshift/heights.hpp"
#include "ellshift/theta.hpp"

namespace ellshift {

class EllipticDifferenceEquation {
  CurvePtr curve_;
  CurvePoint delta_;
  std::vector<CurvePoly<FieldElement>> coeffs_;  // a_0 .. a_l
  mutable std::map<long, TranslationMap> tau_;   // cached translation maps

 public:
  EllipticDifferenceEquation(CurvePtr c, CurvePoint delta,
                             std::vector<CurvePoly<FieldElement>> coeffs)
      : curve_(std::move(c)), delta_(std::move(delta)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) throw SchemaError("equation order must be at least 1");
    if (coeffs_.front().zero()) throw SchemaError("trailing coefficient a_0 is zero");
    if (coeffs_.back().zero()) throw SchemaError("leading coefficient a_l is zero");
  }

  const CurvePtr& curve() const { return curve_; }
  const CurvePoint& delta() const { return delta_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const CurvePoly<FieldElement>& coeff(int i) const { return coeffs_[i]; }
  const std::vector<CurvePoly<FieldElement>>& coeffs() const { return coeffs_; }

  const TranslationMap& tau(long n) const {
    auto it = tau_.find(n);
    if (it == tau_.end())
      it = tau_.emplace(n, translation_by(curve_, scalar_mul(n, delta_))).first;
    return it->second;
  }
};

struct SingularityRecord {
  CurvePoint point;
  int multiplicity;  // negative: a_l side, positive: a_0 side
};

namespace detail {

constexpr int kValInf = 1 << 26;

// relative valuations (nl, n0) at p: val(a_side) - min_i val(a_i)
inline std::pair<int, int> relative_multiplicities(const EllipticDifferenceEquation& eq,
                                                   const CurvePoint& p) {
  int mn = kValInf;
  std::vector<int> vals(eq.coeffs().size(), kValInf);
  for (size_t i = 0; i < eq.coeffs().size(); ++i) {
    if (eq.coeff(static_cast<int>(i)).zero()) continue;
    vals[i] = valuation_at(eq.coeff(static_cast<int>(i)), p);
    mn = std::min(mn, vals[i]);
  }
  int nl = vals.back() == kValInf ? kValInf : vals.back() - mn;
  int n0 = vals.front() == kValInf ? kValInf : vals.front() - mn;
  return {nl, n0};
}

}  // namespace detail

// All singular points with their two-sided relative multiplicities.
// Requires every zero of a_0 a_l on C to be K-rational.
inline std::vector<SingularityRecord> singularities(const EllipticDifferenceEquation& eq) {
  std::map<CurvePoint, std::pair<int, int>> sing;  // point -> (nl, n0)
  std::vector<CurvePoint> candidates;
  for (const auto& [p, m] : affine_zeros(eq.coeffs().back(), eq.curve(), "leading coefficient"))
    candidates.push_back(p);
  for (const auto& [p, m] : affine_zeros(eq.coeffs().front(), eq.curve(), "trailing coefficient"))
    candidates.push_back(p);
  candidates.push_back(CurvePoint::infinity(eq.curve()));
  for (const auto& p : candidates) {
    if (sing.count(p)) continue;
    auto [nl, n0] = detail::relative_multiplicities(eq, p);
    if (nl > 0 || n0 > 0) sing.emplace(p, std::make_pair(nl, n0));
  }
  std::vector<SingularityRecord> out;
  for (const auto& [p, m] : sing) {
    if (m.first > 0) out.push_back({p, -m.first});
    if (m.second > 0) out.push_back({p, m.second});
  }
  return out;
}

struct OrbitProfile {
  CurvePoint first;                              // first singular point on the orbit
  std::map<long, std::pair<int, int>> profile;   // offset -> (nl, n0), offsets >= 0
  long width = 0;                                // max offset

  int total_al() const {
    int s = 0;
    for (const auto& [o, m] : profile) s += m.first;
    return s;
  }
  int total_a0() const {
    int s = 0;
    for (const auto& [o, m] : profile) s += m.second;
    return s;
  }
  // possible valuation jumps of a hyperexponential solution along this orbit
  std::pair<long, long> jump_range() const { return {-total_al(), total_a0()}; }
};

struct UniversalDivisorResult {
  Divisor divisor;  // pole bounds >= 0, including the entry at O
  std::vector<OrbitProfile> orbits;
  int dispersion = 0;
};

// Pole bounds for every (pseudo-)rational solution: on each singular orbit,
// the bound at offset j is min(A_(j-l), B_(j)) with A the cumulative a_l
// multiplicities from the first singular point and B the remaining a_0
// multiplicities from offset j on.
inline UniversalDivisorResult universal_divisor(const EllipticDifferenceEquation& eq,
                                                HeightCalculator& calc) {
  UniversalDivisorResult res;
  res.divisor = Divisor(eq.curve());
  auto sing = singularities(eq);

  // merge two-sided records per point
  std::map<CurvePoint, std::pair<int, int>> pts;
  for (const auto& r : sing) {
    auto& e = pts[r.point];
    if (r.multiplicity < 0) e.first = -r.multiplicity;
    else e.second = r.multiplicity;
  }
  std::vector<CurvePoint> plist;
  for (const auto& [p, m] : pts) plist.push_back(p);
  res.dispersion = plist.empty() ? 0 : dispersion_bound(plist, eq.delta(), calc);

  // group into orbits with integer offsets
  std::vector<std::map<long, CurvePoint>> orbits;  // offset -> point (anchored)
  std::vector<bool> used(plist.size(), false);
  for (size_t i = 0; i < plist.size(); ++i) {
    if (used[i]) continue;
    std::map<long, CurvePoint> orbit;
    orbit.emplace(0, plist[i]);
    used[i] = true;
    for (size_t j = i + 1; j < plist.size(); ++j) {
      if (used[j]) continue;
      auto n = calc.multiple_of(sub(plist[j], plist[i]), eq.delta());
      if (n) {
        orbit.emplace(*n, plist[j]);
        used[j] = true;
      }
    }
    orbits.push_back(std::move(orbit));
  }

  int l = eq.order();
  for (auto& orbit : orbits) {
    long base = orbit.begin()->first;
    OrbitProfile prof;
    prof.first = orbit.begin()->second;
    for (const auto& [off, p] : orbit) {
      const auto& m = pts[p];
      prof.profile[off - base] = m;
      prof.width = std::max(prof.width, off - base);
    }
    // bounds at every offset of the singular window
    for (long j = 0; j <= prof.width; ++j) {
      int A = 0, B = 0;
      for (const auto& [o, m] : prof.profile) {
        if (o <= j - l) A += m.first;
        if (o >= j) B += m.second;
      }
      int bound = std::min(A, B);
      if (bound > 0) res.divisor.add(add(prof.first, scalar_mul(j, eq.delta())), bound);
    }
    res.orbits.push_back(std::move(prof));
  }
  return res;
}

// change of unknown f = H g with H(p+delta)/H(p) = R(p): the new coefficients
// are a_i * prod_{j<i} R(p + j delta), cleared of denominators
inline EllipticDifferenceEquation transform_by_hyperexp(const EllipticDifferenceEquation& eq,
                                                        const CurveFunc<FieldElement>& R) {
  if (R.zero()) throw Error("Internal", "hyperexponential transform by zero ratio");
  int l = eq.order();
  std::vector<CurvePoly<FieldElement>> nums, dens;
  for (int j = 0; j < l; ++j) {
    CurveFunc<FieldElement> rj = pullback(R, eq.tau(j));
    nums.push_back(rj.num());
    dens.push_back(rj.den());
  }
  std::vector<CurvePoly<FieldElement>> out;
  for (int i = 0; i <= l; ++i) {
    CurvePoly<FieldElement> acc = eq.coeff(i);
    for (int j = 0; j < i; ++j) acc = acc * nums[j];
    for (int j = i; j < l; ++j) acc = acc * dens[j];
    out.push_back(std::move(acc));
  }
  return EllipticDifferenceEquation(eq.curve(), eq.delta(), std::move(out));
}

// exact verification by substitution: sum_i a_i r_i = 0 in K(C) with
// r_i = f(p + i delta)/f(p) assembled from the solution's factor ratios
inline bool verify_solution(const EllipticDifferenceEquation& eq, const Solution& sol) {
  if (sol.rational.zero()) return false;
  const CurvePtr& c = eq.curve();
  FieldPtr K = c->field();
  auto ring = params_of(c);
  CurveFunc<FieldElement> acc(CurvePoly<FieldElement>::constant(ring, FieldElement{}),
                              CurvePoly<FieldElement>::constant(ring, FieldElement::one(K)));
  // incremental ratios: r_{i+1} = r_i * (shifted factor ratios at offset i)
  CurveFunc<FieldElement> theta_r = CurveFunc<FieldElement>::one(ring, FieldElement::one(K));
  if (sol.theta) theta_r = theta_ratio(sol.theta->lambda, sol.theta->pole, eq.delta(), c);
  CurveFunc<FieldElement> r = CurveFunc<FieldElement>::one(ring, FieldElement::one(K));
  for (int i = 0; i <= eq.order(); ++i) {
    CurveFunc<FieldElement> ri =
        i == 0 ? r : (pullback(sol.rational, eq.tau(i)) / sol.rational) * r;
    acc = acc + CurveFunc<FieldElement>(eq.coeff(i)) * ri;
    if (i < eq.order()) {
      if (sol.theta) r = r * pullback(theta_r, eq.tau(i));
      if (sol.hyper) r = r * pullback(sol.hyper->ratio, eq.tau(i));
    }
  }
  return acc.zero();
}

}  // namespace ellshift

#endif
