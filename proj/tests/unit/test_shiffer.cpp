#include <gtest/gtest.h>

#include "cliffkit/curve/riemann_roch.hpp"
#include "cliffkit/exactla/linalg.hpp"
#include "cliffkit/linser/clifford.hpp"
#include "cliffkit/shiffer/shiffer.hpp"

using namespace cliff;
using namespace cliff::shiffer;
using curve::Poly;

namespace {

Poly from_roots(int a, int b, uint32_t p) {
  auto f = Poly::constant(Fp(1, p));
  for (int r = a; r <= b; ++r) f = f * Poly::x_minus(Fp(r, p));
  return f;
}

Divisor distinct_points(const Curve& C, int d, Rng& rng, const Divisor& avoid = {}) {
  Divisor D;
  while (D.degree() < d) {
    const auto P = C.sample_place(rng);
    if (D.coefficient(P) == 0 && avoid.coefficient(P) == 0) D.add(P, 1);
  }
  return D;
}

}  // namespace

TEST(LocalPairing, HandExample) {
  const uint32_t p = 101;
  const auto m = local_pairing_matrix({Fp(2, p), Fp(3, p), Fp(5, p)});
  // entry(u, v) = beta[2 + u - v]
  const int expect[3][3] = {{5, 3, 2}, {0, 5, 3}, {0, 0, 5}};
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) EXPECT_EQ(m(u, v).value(), static_cast<uint32_t>(expect[u][v]));
}

TEST(ShifferMatrix, PointDatumMatchesEvaluationMatrix) {
  const Curve C = Curve::create(3, from_roots(1, 5, 32029));
  const auto K = LineBundle::canonical(C);
  const Evaluator e(C, K);
  const auto T = linser::mult_map(C, K, K);
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto P = C.sample_place(rng);
    const auto A = shiffer_matrix(e, e, unit_datum(Divisor::point(P), C.p()));
    const auto B = point_matrix(T, evaluation_functional(C, T.b12, P));
    EXPECT_EQ(A, B);
    EXPECT_EQ(la::rank(A), 1u);
  }
}

TEST(ShifferMatrix, SymmetricForEqualBundles) {
  const Curve C = Curve::create(2, from_roots(1, 5, 32003));
  const Evaluator e(C, LineBundle::canonical(C).twist(Divisor::point(C.sample_place(uint64_t{1}), 5)));
  Rng rng(2);
  const Divisor D = distinct_points(C, 3, rng, e.bundle().representative);
  const auto M = shiffer_matrix(e, e, random_star_datum(D, C.p(), rng));
  EXPECT_EQ(M, M.transpose());
}

TEST(ShifferMatrix, OverlapNeedsOptIn) {
  const Curve C = Curve::create(2, from_roots(1, 5, 32003));
  Rng rng(3);
  const Divisor D = distinct_points(C, 3, rng);
  const Evaluator e(C, LineBundle::canonical(C).twist(D));
  EXPECT_THROW(shiffer_matrix(e, e, unit_datum(D, C.p())), SupportCollision);
  EXPECT_NO_THROW(shiffer_matrix(e, e, unit_datum(D, C.p()), true));
}

TEST(RankBounds, TrigonalFiber) {
  const Curve C = Curve::create(3, from_roots(1, 5, 32029));
  const Evaluator e(C, LineBundle::canonical(C));
  Divisor F;
  for (uint32_t x = 10; F.is_zero(); ++x) {
    const auto over = C.places_over(C.fp(x));
    if (over.size() == 3) F = Divisor::sum_of(over);
  }
  const auto rep = rank_bounds_check(e, e, F, 60, 1, 2);
  EXPECT_EQ(rep.lower, 1);
  EXPECT_EQ(rep.upper, 2);
  EXPECT_TRUE(rep.all_within());
  EXPECT_TRUE(rep.upper_attained());
  const auto w = min_rank_witness(C, e, F, 1);
  EXPECT_TRUE(w.ok());
  EXPECT_EQ(w.rank, 1u);
}

TEST(RankBounds, ParallelMatchesSerial) {
  const Curve C = Curve::create(2, from_roots(1, 5, 32003));
  Rng rng(7);
  const Evaluator e(C, LineBundle::of(distinct_points(C, 7, rng)));
  const Divisor D = distinct_points(C, 2, rng, e.bundle().representative);
  const auto a = rank_bounds_check(e, e, D, 40, 9, 1);
  const auto b = rank_bounds_check(e, e, D, 40, 9, 3);
  EXPECT_EQ(a.histogram, b.histogram);
}

TEST(LowRank, CoefficientFormula) {
  const uint32_t p = 32003;
  // x3 = 2 x1 + 3 x2 in F_p^3
  const std::vector<std::vector<Fp>> xs = {
      {Fp(1, p), Fp(0, p), Fp(4, p)}, {Fp(0, p), Fp(1, p), Fp(5, p)}, {Fp(2, p), Fp(3, p), Fp(23, p)}};
  const std::vector<Fp> w = {Fp(7, p), Fp(11, p)};
  const auto res = low_rank_coefficients(xs, w);
  ASSERT_EQ(res.a.size(), 2u);
  EXPECT_EQ(res.a[0].value(), 2u);
  EXPECT_EQ(res.a[1].value(), 3u);
  // f(lambda) = 1 + lambda (a1^2 / w1 + a2^2 / w2)
  ASSERT_GE(res.f.size(), 2u);
  EXPECT_EQ(res.f[0].value(), 1u);
  EXPECT_EQ(res.f[1], Fp(4, p) / Fp(7, p) + Fp(9, p) / Fp(11, p));
  ASSERT_TRUE(res.lambda);
  la::Matrix<Fp> m(3, 3, p);
  const std::vector<Fp> coeff = {w[0], w[1], *res.lambda};
  for (int i = 0; i < 3; ++i)
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) += coeff[i] * xs[i][r] * xs[i][c];
  EXPECT_EQ(la::rank(m), 1u);
}

TEST(Witness, TwistedCanonicalReachesDMinus2) {
  const Curve C = Curve::create(2, from_roots(1, 5, 32003));
  Rng rng(11);
  for (int d = 2; d <= 4; ++d) {
    const Divisor D = distinct_points(C, d, rng);
    const Evaluator e(C, LineBundle::canonical(C).twist(D));
    const auto w = min_rank_witness(C, e, D, 3, true);
    EXPECT_TRUE(w.ok()) << w.detail;
    EXPECT_EQ(static_cast<int>(w.rank), d - 2);
  }
}
