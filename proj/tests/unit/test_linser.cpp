#include <gtest/gtest.h>

#include <numeric>

#include "cliffkit/curve/riemann_roch.hpp"
#include "cliffkit/linser/checks.hpp"
#include "cliffkit/linser/clifford.hpp"
#include "cliffkit/linser/multiplication.hpp"

using namespace cliff;
using namespace cliff::linser;
using curve::Place;

namespace {

curve::Poly from_roots(int a, int b, uint32_t p) {
  auto f = curve::Poly::constant(Fp(1, p));
  for (int r = a; r <= b; ++r) f = f * curve::Poly::x_minus(Fp(r, p));
  return f;
}

Curve hyperelliptic(int m, uint32_t p = 37) { return Curve::create(2, from_roots(1, m, p)); }
Curve trigonal(uint32_t p = 37) { return Curve::create(3, from_roots(1, 5, p)); }

Divisor some_fiber(const Curve& C) {
  for (uint32_t x = 2;; ++x) {
    const auto over = C.places_over(C.fp(x));
    if (over.size() == C.n() && over.front().is_finite()) return Divisor::sum_of(over);
  }
}

}  // namespace

TEST(LineBundle, Arithmetic) {
  const Curve C = trigonal();
  const auto K = LineBundle::canonical(C);
  EXPECT_EQ(h0(C, K), 4u);
  EXPECT_EQ(h1(C, K), 1u);
  EXPECT_TRUE(is_canonical(C, K));
  const Divisor F = some_fiber(C);
  // For y^3 = quintic, K = 6 inf = 2 (fiber of x).
  EXPECT_TRUE(isomorphic(C, K, LineBundle::of(F * 2)));
  EXPECT_FALSE(isomorphic(C, K, LineBundle::of(F)));
  EXPECT_EQ(K.tensor(K.dual()).degree(), 0);
}

TEST(Evaluator, AgreesWithRiemannRoch) {
  const Curve C = trigonal();
  const auto K = LineBundle::canonical(C);
  const Evaluator e(C, K);
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    Divisor D;
    const int d = 1 + static_cast<int>(rng.below(4));
    for (int i = 0; i < d; ++i) D.add(C.sample_place(rng), 1);
    D.add(Place::branch(1 + static_cast<uint32_t>(rng.below(5))), static_cast<int>(rng.below(2)));
    EXPECT_EQ(e.h0_minus(D), curve::h0(C, K.representative - D)) << D.str();
    EXPECT_EQ(r_L(C, K, D), static_cast<int>(curve::h0(C, K.representative - D)) - 4 + D.degree());
  }
}

TEST(Clifford, HyperellipticGenus3IsZero) {
  const Curve C = hyperelliptic(7);
  SearchOptions opt;
  const auto res = cliff_bundle(C, LineBundle::canonical(C), opt);
  ASSERT_TRUE(res.value);
  EXPECT_EQ(*res.value, 0);
  EXPECT_TRUE(res.certified);
  EXPECT_EQ(res.witness.degree(), 2);
  EXPECT_EQ(curve::h0(C, res.witness), 2u);
}

TEST(Clifford, TrigonalGenus4IsOne) {
  const Curve C = trigonal();
  const auto res = cliff_bundle(C, LineBundle::canonical(C), SearchOptions{});
  ASSERT_TRUE(res.value);
  EXPECT_EQ(*res.value, 1);
  EXPECT_TRUE(res.certified);
  EXPECT_EQ(cliff_pair(C, LineBundle::canonical(C), some_fiber(C)), 1);
}

TEST(Clifford, TwistedCanonical) {
  const Curve C = hyperelliptic(5);
  SearchOptions opt;
  opt.require_very_ample = false;
  Rng rng(9);
  for (int d = 2; d <= 3; ++d) {
    Divisor D;
    while (D.degree() < d) {
      const auto P = C.sample_place(rng);
      if (D.coefficient(P) == 0) D.add(P, 1);
    }
    const auto L = LineBundle::canonical(C).twist(D);
    const auto res = cliff_bundle(C, L, opt);
    ASSERT_TRUE(res.value);
    EXPECT_EQ(*res.value, d - 2);
    EXPECT_EQ(cliff_pair(C, L, D), d - 2);
  }
}

TEST(Clifford, NoEligibleDivisorOnGenus2) {
  const Curve C = hyperelliptic(5);
  const auto res = cliff_bundle(C, LineBundle::canonical(C), SearchOptions{});
  EXPECT_FALSE(res.value);
  EXPECT_EQ(res.eligible, 0u);
}

TEST(Clifford, MultisetCount) {
  // sum_{d=1}^{2} C(n + d - 1, d) with n = 5
  EXPECT_DOUBLE_EQ(multiset_count(5, 2), 5 + 15);
}

TEST(Multiplication, QuadraticNormalityOfCanonical) {
  const Curve T = trigonal();
  const auto KT = LineBundle::canonical(T);
  const auto mt = mult_map(T, KT, KT);
  EXPECT_TRUE(mt.surjective());
  EXPECT_EQ(mt.dim12(), 9u);
  const Curve H = hyperelliptic(7);
  const auto KH = LineBundle::canonical(H);
  const auto mh = mult_map(H, KH, KH);
  EXPECT_EQ(mh.dim12(), 6u);
  EXPECT_EQ(mh.corank(), 1u);
}

TEST(Multiplication, ProductsMatchFunctionArithmetic) {
  const Curve C = trigonal();
  const auto K = LineBundle::canonical(C);
  const auto T = mult_map(C, K, K);
  for (size_t a = 0; a < T.dim1(); ++a)
    for (size_t b = 0; b < T.dim2(); ++b) {
      const auto lhs = C.multiply(T.b1.basis[a], T.b2.basis[b]);
      const auto rhs = curve::linear_combination(C, T.b12.basis, T.product(a, b));
      EXPECT_TRUE(C.equal(lhs, rhs));
    }
}

TEST(Checks, BasePointsAndVeryAmple) {
  const Curve T = trigonal();
  EXPECT_TRUE(base_point_free(T, LineBundle::canonical(T)).value);
  EXPECT_TRUE(very_ample(T, LineBundle::canonical(T)).value);
  const Curve H = hyperelliptic(7);
  const auto va = very_ample(H, LineBundle::canonical(H));
  EXPECT_FALSE(va.value);
  Rng rng(1);
  const auto P = T.sample_place(rng);
  // K(P) has P as a base point.
  EXPECT_FALSE(base_point_free(T, LineBundle::canonical(T).twist(Divisor::point(P))).value);
}

TEST(Checks, PetriOnTrigonalPencil) {
  const Curve T = trigonal();
  const auto pr = petri_check(T, some_fiber(T));
  // H0(F) x H0(K - F) -> H0(K): 2 x 2 products into a 4-space.
  EXPECT_EQ(pr.petri_target, 4u);
  EXPECT_TRUE(pr.agree());
}
