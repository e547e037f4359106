#include <gtest/gtest.h>

#include "cliffkit/exactla/linalg.hpp"
#include "cliffkit/exactla/prime_span.hpp"
#include "cliffkit/util/rng.hpp"

using namespace cliff;
using la::Fp;
using la::Matrix;
using la::Rational;

namespace {

constexpr uint32_t P = 32003;

Matrix<Fp> random_matrix(size_t r, size_t c, uint32_t p, Rng& rng) {
  Matrix<Fp> m(r, c, p);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m(i, j) = rng.uniform(p);
  return m;
}

// Rank-k product of random r x k and k x c factors.
Matrix<Fp> low_rank(size_t r, size_t c, size_t k, uint32_t p, Rng& rng) {
  return random_matrix(r, k, p, rng) * random_matrix(k, c, p, rng);
}

}  // namespace

TEST(Fp, ArithmeticAndInverse) {
  Fp a(-5, 7), b(3, 7);
  EXPECT_EQ(a.value(), 2u);
  EXPECT_EQ((a + b).value(), 5u);
  EXPECT_EQ((a * b).value(), 6u);
  EXPECT_EQ((a / b * b), a);
  for (uint32_t v = 1; v < 101; ++v) EXPECT_TRUE((Fp(v, 101) * Fp(v, 101).inverse()).is_one());
  EXPECT_EQ(Fp(3, 7).pow(6).value(), 1u);  // Fermat
  EXPECT_THROW(Fp(0, 7).inverse(), PreconditionError);
}

TEST(Fp, MixedModuliAreRejected) { EXPECT_THROW(Fp(1, 7) + Fp(1, 11), CharacteristicMismatch); }

TEST(Rational, BareissDeterminantOfVandermonde) {
  const std::vector<int> xs = {2, -1, 5, 7};
  la::MatrixQ v(4, 4, 0);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) v(i, j) = Rational(static_cast<long>(std::pow(xs[i], j)));
  Rational expect(1);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = i + 1; j < 4; ++j) expect *= Rational(xs[j] - xs[i]);
  EXPECT_EQ(la::bareiss_determinant(v), expect);
  EXPECT_EQ(la::determinant(v), expect);
  EXPECT_EQ(la::bareiss_rank(v), 4u);
}

TEST(Rational, RankOfDependentRows) {
  la::MatrixQ m(3, 3, 0);
  const int rows[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = rows[i][j];
  EXPECT_EQ(la::bareiss_rank(m), 2u);
  const auto ker = la::kernel_basis(m);
  ASSERT_EQ(ker.size(), 1u);
  EXPECT_EQ(ker[0][0] / ker[0][2], Rational(1));
  EXPECT_EQ(ker[0][1] / ker[0][2], Rational(-2));
}

TEST(PrimeRank, MatchesConstructedRank) {
  Rng rng(3);
  for (size_t k = 0; k <= 6; ++k) {
    const auto m = low_rank(9, 13, k, P, rng);
    EXPECT_EQ(la::prime_rank(m), k);
    EXPECT_EQ(la::rank(m.transpose()), k);
  }
}

TEST(Kernel, BasisIsKernel) {
  Rng rng(4);
  const auto m = low_rank(7, 10, 4, P, rng);
  const auto ker = la::kernel_basis(m);
  EXPECT_EQ(ker.size(), 6u);
  for (const auto& v : ker)
    for (size_t i = 0; i < m.rows(); ++i) EXPECT_TRUE(la::dot(m.row(i), v).is_zero());
  EXPECT_EQ(la::span_dim(ker, P), ker.size());
}

TEST(Solve, ConsistentAndInconsistent) {
  Rng rng(5);
  const auto a = low_rank(6, 6, 3, P, rng);
  std::vector<Fp> x(6);
  for (auto& v : x) v = rng.uniform(P);
  std::vector<Fp> b(6, Fp(0, P));
  for (size_t i = 0; i < 6; ++i) b[i] = la::dot(a.row(i), x);
  const auto sol = la::solve(a, b);
  ASSERT_TRUE(sol);
  for (size_t i = 0; i < 6; ++i) EXPECT_EQ(la::dot(a.row(i), *sol), b[i]);
  // A generic right-hand side leaves the rank-3 column space.
  std::vector<Fp> c(6);
  for (auto& v : c) v = rng.uniform(P);
  EXPECT_FALSE(la::solve(a, c));
}

TEST(Minors, CountAndRankCriterion) {
  Rng rng(6);
  const auto m = low_rank(4, 5, 2, P, rng);
  size_t count = 0, nonzero2 = 0, nonzero3 = 0;
  la::for_each_minor(m, 2, [&](auto&, auto&, Fp d) {
    ++count;
    nonzero2 += !d.is_zero();
  });
  la::for_each_minor(m, 3, [&](auto&, auto&, Fp d) { nonzero3 += !d.is_zero(); });
  EXPECT_EQ(count, 6u * 10u);
  EXPECT_GT(nonzero2, 0u);
  EXPECT_EQ(nonzero3, 0u);
}

TEST(PrimeSpan, AddContainsAnnihilator) {
  Rng rng(7);
  la::PrimeSpan s(8, P);
  std::vector<std::vector<Fp>> vs;
  for (int i = 0; i < 3; ++i) {
    std::vector<Fp> v(8);
    for (auto& x : v) x = rng.uniform(P);
    vs.push_back(v);
    EXPECT_TRUE(s.add(v));
  }
  std::vector<Fp> sum(8, Fp(0, P));
  for (size_t j = 0; j < 8; ++j) sum[j] = vs[0][j] * Fp(5, P) - vs[2][j];
  EXPECT_TRUE(s.contains(sum));
  EXPECT_FALSE(s.add(sum));
  EXPECT_EQ(s.dim(), 3u);
  const auto ann = s.annihilator();
  EXPECT_EQ(ann.size(), 5u);
  for (const auto& a : ann)
    for (const auto& v : vs) EXPECT_TRUE(la::dot(a, v).is_zero());
}

TEST(PrimeSpan, LargePrimePath) {
  // Above 2^16 the lazy accumulation is off; results must not change.
  const uint32_t big = 2147483647u;
  Rng rng(8);
  const auto m = low_rank(6, 9, 4, big, rng);
  la::PrimeSpan s(9, big);
  for (size_t i = 0; i < 6; ++i) s.add(m.row(i));
  EXPECT_EQ(s.dim(), 4u);
  EXPECT_EQ(la::prime_rank(m), 4u);
}

TEST(Rng, DeterministicStreams) {
  Rng a(11), b(11);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.below(1000), b.below(1000));
  EXPECT_EQ(Rng::derive(5, 1), Rng::derive(5, 1));
  EXPECT_NE(Rng::derive(5, 1), Rng::derive(5, 2));
}
