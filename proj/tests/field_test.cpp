#include <gtest/gtest.h>

#include <random>

#include "ellshift/linalg.hpp"
#include "ellshift/numfield.hpp"
#include "ellshift/roots.hpp"

using namespace ellshift;

namespace {

FieldPtr q_sqrt(int n) {  // Q(sqrt(n))
  return std::make_shared<FieldDescription>(
      std::vector<Rational>{Rational(-n), Rational(0), Rational(1)});
}

FieldElement fe(FieldPtr f, const Rational& a, const Rational& b) {
  return FieldElement(f, {a, b});
}

Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

UniPoly<FieldElement> upoly(FieldPtr f, std::initializer_list<Rational> asc) {
  std::vector<FieldElement> c;
  for (const auto& q : asc) c.push_back(FieldElement::from(f, q));
  return UniPoly<FieldElement>(c);
}

double midpoint(const RInt& r) {
  return (r.lo.to_double() + r.hi.to_double()) / 2;
}

}  // namespace

TEST(Rational, ParsePrint) {
  EXPECT_EQ(to_string(parse_rational("2/4")), "1/2");
  EXPECT_EQ(to_string(parse_rational("-3")), "-3");
  EXPECT_EQ(parse_rational("2/3") + parse_rational("1/6"), Rational(5, 6));
  EXPECT_THROW(parse_rational("x"), SchemaError);
}

TEST(Rational, RoundToRational) {
  Rational x(355, 113);
  EXPECT_EQ(round_to_rational(x, Integer(200)), x);
  Rational pi_approx("314159265358979323846/100000000000000000000");
  EXPECT_EQ(round_to_rational(pi_approx, Integer(120)), Rational(355, 113));
  EXPECT_EQ(round_to_rational(-pi_approx, Integer(10)), Rational(-22, 7));
}

TEST(FieldArith, DefiningRelation) {
  FieldPtr f = q_sqrt(2);
  FieldElement r2 = FieldElement::generator(f);
  EXPECT_EQ(r2 * r2, FieldElement::from(f, Rational(2)));
}

TEST(FieldArith, InverseOfOnePlusSqrt2) {
  FieldPtr f = q_sqrt(2);
  FieldElement a = fe(f, 1, 1);  // 1 + sqrt2
  FieldElement inv = a.inverse();
  // oracle: the product must be exactly 1
  EXPECT_EQ(a * inv, FieldElement::one(f));
  EXPECT_EQ(inv, fe(f, -1, 1));  // sqrt2 - 1
}

TEST(FieldArith, RationalsInsideK) {
  FieldPtr f = FieldDescription::rationals();
  FieldElement a = FieldElement::from(f, Rational(2, 3));
  FieldElement b = FieldElement::from(f, Rational(1, 6));
  EXPECT_EQ(a + b, FieldElement::from(f, Rational(5, 6)));
}

TEST(FieldArith, FieldAxiomsRandom) {
  FieldPtr f = q_sqrt(2);
  std::mt19937_64 rng(42);
  auto rnd = [&] {
    return fe(f, frac((long)(rng() % 19) - 9, 1 + (long)(rng() % 5)),
              frac((long)(rng() % 19) - 9, 1 + (long)(rng() % 5)));
  };
  for (int i = 0; i < 100; ++i) {
    FieldElement a = rnd(), b = rnd(), c = rnd();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.zero()) EXPECT_EQ(a * a.inverse(), FieldElement::one(f));
  }
}

TEST(Embed, Constants) {
  FieldPtr f = q_sqrt(2);
  CInt one = embed_numeric(FieldElement::one(f), 64);
  EXPECT_NEAR(midpoint(one.re), 1.0, 1e-15);
  EXPECT_TRUE(one.im.contains_zero());
}

TEST(Embed, Sqrt2AndSqrt15) {
  CInt s2 = embed_numeric(FieldElement::generator(q_sqrt(2)), 64);
  EXPECT_NEAR(midpoint(s2.re), 1.4142135623730951, 1e-12);
  CInt s15 = embed_numeric(FieldElement::generator(q_sqrt(15)), 64);
  EXPECT_NEAR(midpoint(s15.re), 3.872983346207417, 1e-12);
}

TEST(Embed, ProductConsistency) {
  FieldPtr f = q_sqrt(2);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    FieldElement a = fe(f, Rational((long)(rng() % 9) - 4), Rational((long)(rng() % 9) - 4));
    FieldElement b = fe(f, Rational((long)(rng() % 9) - 4), Rational((long)(rng() % 9) - 4));
    CInt direct = embed_numeric(a * b, 96);
    CInt prod = embed_numeric(a, 96) * embed_numeric(b, 96);
    // widen the product slightly: both are rigorous enclosures of one point
    RInt pad = RInt::ball(Mp::from(0L, 96), Mp::from(Rational(1, 1000000), 96), 96);
    CInt widened(prod.re + pad, prod.im + pad);
    EXPECT_TRUE(widened.contains(direct));
  }
}

TEST(UniPolyOps, GcdExamples) {
  FieldPtr q = FieldDescription::rationals();
  auto x2m1 = upoly(q, {-1, 0, 1});
  auto xm1 = upoly(q, {-1, 1});
  EXPECT_EQ(gcd_monic(x2m1, xm1), xm1);
  auto x2m2 = upoly(q, {-2, 0, 1});
  auto x2m3 = upoly(q, {-3, 0, 1});
  EXPECT_EQ(gcd_monic(x2m2, x2m3).degree(), 0);
  // gcd((x-1)^2 x, (x-1) x^2) = x^2 - x
  auto a = upoly(q, {0, 1, -2, 1});   // (x-1)^2 x = x^3 - 2x^2 + x
  auto b = upoly(q, {0, 0, -1, 1});   // (x-1) x^2 = x^3 - x^2
  EXPECT_EQ(gcd_monic(a, b), upoly(q, {0, -1, 1}));
}

TEST(UniPolyOps, ResultantExamples) {
  FieldPtr q = FieldDescription::rationals();
  auto xm2 = upoly(q, {-2, 1});
  auto x2m3 = upoly(q, {-3, 0, 1});
  EXPECT_EQ(resultant(xm2, x2m3), FieldElement::one(q));
  EXPECT_TRUE(is_zero(resultant(xm2, xm2)));
  auto x2m2 = upoly(q, {-2, 0, 1});
  EXPECT_TRUE(is_zero(resultant(x2m2, x2m2)));
}

TEST(UniPolyOps, ResultantGcdLink) {
  FieldPtr q = FieldDescription::rationals();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    auto rnd_poly = [&](int deg) {
      std::vector<FieldElement> c;
      for (int k = 0; k <= deg; ++k)
        c.push_back(FieldElement::from(q, Rational((long)(rng() % 7) - 3)));
      return UniPoly<FieldElement>(c);
    };
    auto a = rnd_poly(3), b = rnd_poly(2);
    if (a.zero() || b.zero()) continue;
    if (a.degree() == 0 && b.degree() == 0) continue;
    bool res_zero = is_zero(resultant(a, b));
    bool gcd_pos = gcd_monic(a, b).degree() >= 1;
    EXPECT_EQ(res_zero, gcd_pos);
  }
}

TEST(UniPolyOps, SquarefreeDecomposition) {
  FieldPtr q = FieldDescription::rationals();
  // (x-1)^2 (x+3) = x^3 + x^2 - 5x + 3
  auto p = upoly(q, {3, -5, 1, 1});
  auto dec = squarefree_decomposition(p);
  ASSERT_EQ(dec.size(), 2u);
  EXPECT_EQ(dec[0].second, 1);
  EXPECT_EQ(dec[0].first, upoly(q, {3, 1}));
  EXPECT_EQ(dec[1].second, 2);
  EXPECT_EQ(dec[1].first, upoly(q, {-1, 1}));
}

TEST(RootsInField, DefiningRelation) {
  FieldPtr f = q_sqrt(2);
  auto p = upoly(f, {-2, 0, 1});
  auto roots = roots_in_field(p);
  ASSERT_EQ(roots.size(), 2u);
  FieldElement r2 = FieldElement::generator(f);
  EXPECT_EQ(roots[0].value, -r2);
  EXPECT_EQ(roots[1].value, r2);
  for (const auto& r : roots) {
    EXPECT_EQ(r.multiplicity, 1);
    EXPECT_TRUE(is_zero(p.eval(r.value)));
  }
}

TEST(RootsInField, IrreducibleOverQ) {
  FieldPtr q = FieldDescription::rationals();
  auto p = upoly(q, {-2, 0, 1});
  EXPECT_TRUE(roots_in_field(p).empty());
}

TEST(RootsInField, MultiplicityAndVerification) {
  FieldPtr q = FieldDescription::rationals();
  auto p = upoly(q, {3, -5, 1, 1});  // (x-1)^2 (x+3), expanded by hand
  auto roots = roots_in_field(p);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0].value, FieldElement::from(q, Rational(-3)));
  EXPECT_EQ(roots[0].multiplicity, 1);
  EXPECT_EQ(roots[1].value, FieldElement::from(q, Rational(1)));
  EXPECT_EQ(roots[1].multiplicity, 2);
  // multiplicity r: (x - root)^r divides p, (x - root)^(r+1) does not
  for (const auto& r : roots) {
    UniPoly<FieldElement> lin({FieldElement{} - r.value, FieldElement::one(q)});
    EXPECT_TRUE((p % lin.pow(r.multiplicity)).zero());
    EXPECT_FALSE((p % lin.pow(r.multiplicity + 1)).zero());
  }
}

TEST(RootsInField, QuadraticIrrationalInK) {
  // roots of x^2 - 4x - 14 are 2 +- 3 sqrt2
  FieldPtr f = q_sqrt(2);
  auto p = upoly(f, {-14, -4, 1});
  auto roots = roots_in_field(p);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[1].value, fe(f, 2, 3));
  EXPECT_EQ(roots[0].value, fe(f, 2, -3));
}

TEST(MinimalPolynomial, Examples) {
  FieldPtr f = q_sqrt(2);
  FieldElement r2 = FieldElement::generator(f);
  auto m = minimal_polynomial(r2);
  EXPECT_EQ(m.degree(), 2);
  EXPECT_EQ(m.coeff(0), Rational(-2));
  EXPECT_EQ(m.coeff(1), Rational(0));
  auto m1 = minimal_polynomial(FieldElement::one(f));
  EXPECT_EQ(m1.degree(), 1);
  EXPECT_EQ(m1.coeff(0), Rational(-1));
  // 2 - 3 sqrt2 has minimal polynomial x^2 - 4x - 14
  auto m2 = minimal_polynomial(fe(f, 2, -3));
  EXPECT_EQ(m2.degree(), 2);
  EXPECT_EQ(m2.coeff(1), Rational(-4));
  EXPECT_EQ(m2.coeff(0), Rational(-14));
}

TEST(LinAlg, KernelAndRank) {
  FieldPtr q = FieldDescription::rationals();
  auto e = [&](long v) { return FieldElement::from(q, Rational(v)); };
  Matrix<FieldElement> m = {{e(1), e(2), e(3)}, {e(2), e(4), e(6)}, {e(1), e(0), e(1)}};
  EXPECT_EQ(rank(m), 2);
  auto ker = kernel_basis(m, FieldElement::one(q));
  ASSERT_EQ(ker.size(), 1u);
  for (const auto& row : m) {
    FieldElement acc;
    for (size_t j = 0; j < row.size(); ++j) acc = acc + row[j] * ker[0][j];
    EXPECT_TRUE(is_zero(acc));
  }
  Matrix<FieldElement> sq = {{e(2), e(1)}, {e(1), e(1)}};
  EXPECT_EQ(determinant(sq, FieldElement::one(q)), e(1));
}
