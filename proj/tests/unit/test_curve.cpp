#include <gtest/gtest.h>

#include <numeric>

#include "cliffkit/curve/riemann_roch.hpp"
#include "cliffkit/curve/spec_file.hpp"
#include "cliffkit/curve/tower.hpp"

using namespace cliff;
using namespace cliff::curve;

namespace {

Poly from_roots(const std::vector<int>& rs, uint32_t p) {
  Poly f = Poly::constant(Fp(1, p));
  for (int r : rs) f = f * Poly::x_minus(Fp(r, p));
  return f;
}

std::vector<int> range(int a, int b) {
  std::vector<int> v(b - a + 1);
  std::iota(v.begin(), v.end(), a);
  return v;
}

// Hurwitz by hand for y^n = f, f squarefree of degree m with p = 1 mod n.
int genus_by_hand(int n, int m) {
  int ram = m * (n - 1);
  const int g = std::gcd(n, m);
  ram += n - g;  // n / g places at infinity, each with index g
  return (ram - 2 * n + 2) / 2;
}

struct Model {
  unsigned n;
  int m;
  uint32_t p;
};

std::vector<Model> models() {
  return {{2, 5, 37}, {2, 6, 37}, {2, 7, 41}, {3, 4, 37}, {3, 5, 37}, {3, 6, 37}, {4, 8, 37}, {4, 5, 41}};
}

// Divisor with coefficients in [-2, 3] on a few places of every kind.
Divisor mixed_divisor(const Curve& C, Rng& rng) {
  Divisor D;
  for (int i = 0; i < 3; ++i) D.add(C.sample_place(rng), static_cast<int>(rng.below(6)) - 2);
  D.add(Place::branch(1), static_cast<int>(rng.below(4)) - 1);
  D.add(C.infinite_places().front(), static_cast<int>(rng.below(5)) - 1);
  return D;
}

}  // namespace

TEST(Poly, RootsGcdSquarefree) {
  const uint32_t p = 101;
  const Poly f = from_roots({3, 5, 7}, p);
  const auto rs = f.roots();
  ASSERT_EQ(rs.size(), 3u);
  EXPECT_EQ(rs[0].value(), 3u);
  EXPECT_TRUE(f.is_squarefree());
  EXPECT_FALSE((f * Poly::x_minus(Fp(5, p))).is_squarefree());
  EXPECT_EQ(Poly::gcd(f, from_roots({5, 9}, p)), Poly::x_minus(Fp(5, p)));
  EXPECT_EQ(f.root_multiplicity(Fp(7, p)), 1);
}

TEST(Poly, NthRoots) {
  const uint32_t p = 37;
  for (uint32_t a = 1; a < p; ++a) {
    size_t brute = 0;
    for (uint32_t y = 1; y < p; ++y) brute += Fp(y, p).pow(3) == Fp(a, p);
    EXPECT_EQ(nth_roots(Fp(a, p), 3).size(), brute);
  }
}

TEST(Series, UnitRootBothPaths) {
  for (uint32_t p : {37u, 32003u}) {
    std::vector<Fp> u = {Fp(1, p), Fp(5, p), Fp(-2, p), Fp(7, p)};
    const size_t terms = 60;  // exceeds 37: exercises the slow path there
    u.resize(terms, Fp(0, p));
    const auto w = unit_series_root(u, 2, terms);
    for (size_t k = 0; k < terms; ++k) {
      Fp s(0, p);
      for (size_t i = 0; i <= k; ++i) s += w[i] * w[k - i];
      EXPECT_EQ(s, u[k]) << "p=" << p << " k=" << k;
    }
  }
}

TEST(Series, Reversion) {
  const uint32_t p = 32003;
  const std::vector<Fp> a = {Fp(0, p), Fp(2, p), Fp(3, p), Fp(-1, p)};
  const auto r = series_reversion(a, 8);
  // F(R(s)) = s modulo s^8
  std::vector<Fp> comp(8, Fp(0, p)), pw(8, Fp(0, p));
  pw[0] = Fp(1, p);
  for (size_t i = 1; i < a.size(); ++i) {
    std::vector<Fp> next(8, Fp(0, p));
    for (size_t x = 0; x < 8; ++x)
      for (size_t y = 0; x + y < 8; ++y) next[x + y] += pw[x] * r[y];
    pw = next;
    for (size_t k = 0; k < 8; ++k) comp[k] += a[i] * pw[k];
  }
  for (size_t k = 0; k < 8; ++k) EXPECT_EQ(comp[k].value(), k == 1 ? 1u : 0u);
}

TEST(Hurwitz, FormulaAndParity) {
  EXPECT_EQ(hurwitz_genus(2, std::vector<int>(6, 2)), 2);
  EXPECT_EQ(hurwitz_genus(4, std::vector<int>(8, 4)), 9);
  EXPECT_EQ(hurwitz_genus(4, std::vector<int>(32, 4), 9), 81);
  EXPECT_THROW(hurwitz_genus(2, std::vector<int>(3, 2)), PreconditionError);
}

TEST(Curve, GenusAndCanonicalDegree) {
  for (const auto& m : models()) {
    const Curve C = Curve::create(m.n, from_roots(range(1, m.m), m.p));
    EXPECT_EQ(C.genus(), genus_by_hand(static_cast<int>(m.n), m.m)) << m.n << " " << m.m;
    EXPECT_EQ(C.canonical_divisor().degree(), 2 * C.genus() - 2);
    EXPECT_EQ(C.num_infinite_places(), static_cast<unsigned>(std::gcd<int>(m.n, m.m)) == m.n ? m.n : 1u);
  }
}

TEST(Curve, RejectsBadInput) {
  EXPECT_THROW(Curve::create(3, from_roots({1, 2, 3, 4}, 41)), CharacteristicMismatch);  // 41 != 1 mod 3
  EXPECT_THROW(Curve::create(2, from_roots({1, 1, 3}, 37)), PreconditionError);     // not squarefree
  EXPECT_ANY_THROW(Curve::create(2, std::vector<int64_t>{1, 2, 3}, 35));            // not prime
}

TEST(Curve, RationalPlacesMatchBruteForce) {
  for (const auto& m : models()) {
    const Curve C = Curve::create(m.n, from_roots(range(1, m.m), m.p));
    size_t brute = C.num_infinite_places();
    for (uint32_t x = 0; x < m.p; ++x) {
      const Fp fx = C.f().eval(Fp(x, m.p));
      if (fx.is_zero()) {
        ++brute;
        continue;
      }
      for (uint32_t y = 1; y < m.p; ++y) brute += Fp(y, m.p).pow(m.n) == fx;
    }
    const auto places = C.rational_places();
    EXPECT_EQ(places.size(), brute);
    for (const auto& P : places) EXPECT_TRUE(C.on_curve(P));
  }
}

TEST(Curve, ValuationsOfCoordinates) {
  const Curve C = Curve::create(3, from_roots(range(1, 5), 37));
  const auto fx = C.x() - C.constant(C.fp(1));
  EXPECT_EQ(C.valuation(fx, Place::branch(1)), 3);
  EXPECT_EQ(C.valuation(C.y(), Place::branch(1)), 1);
  EXPECT_EQ(C.valuation(C.x(), Place::infinity(0)), -3);
  EXPECT_EQ(C.valuation(C.y(), Place::infinity(0)), -5);
  Rng rng(2);
  const auto P = C.sample_place(rng);
  EXPECT_EQ(C.valuation(C.x() - C.constant(Fp(P.x, 37)), P), 1);
}

TEST(Curve, ProductsReduceByTheEquation) {
  const Curve C = Curve::create(3, from_roots(range(1, 5), 37));
  const auto y3 = C.multiply(C.multiply(C.y(), C.y()), C.y());
  EXPECT_TRUE(C.equal(y3, C.from_poly(C.f())));
}

TEST(RiemannRoch, IdentityOnRandomDivisors) {
  for (const auto& m : models()) {
    const Curve C = Curve::create(m.n, from_roots(range(1, m.m), m.p));
    const Divisor K = C.canonical_divisor();
    Rng rng(m.n * 100 + m.m);
    for (int t = 0; t < 6; ++t) {
      const Divisor D = mixed_divisor(C, rng);
      const auto B = riemann_roch_space(C, D);
      std::string why;
      EXPECT_TRUE(verify_basis(C, B, &why)) << why;
      const int lhs = static_cast<int>(B.dim()) - static_cast<int>(h0(C, K - D));
      EXPECT_EQ(lhs, D.degree() - C.genus() + 1) << D.str();
    }
  }
}

TEST(RiemannRoch, SmallCases) {
  const Curve C = Curve::create(2, from_roots(range(1, 5), 37));
  EXPECT_EQ(h0(C, Divisor()), 1u);
  EXPECT_EQ(h0(C, C.canonical_divisor()), 2u);
  EXPECT_EQ(h0(C, -Divisor::point(Place::branch(1))), 0u);
  Rng rng(3);
  const auto P = C.sample_place(rng);
  EXPECT_EQ(h0(C, C.fiber_divisor(Fp(P.x, 37))), 2u);
  EXPECT_EQ(h0(C, Divisor::point(P)), 1u);
}

TEST(RiemannRoch, CoordinatesAndLocalCoefficients) {
  const Curve C = Curve::create(3, from_roots(range(1, 5), 37));
  const Divisor D = C.canonical_divisor() + Divisor::point(Place::branch(2), 2);
  const auto B = riemann_roch_space(C, D);
  std::vector<Fp> coeffs;
  for (size_t i = 0; i < B.dim(); ++i) coeffs.push_back(C.fp(static_cast<int64_t>(3 * i + 1)));
  const auto h = linear_combination(C, B.basis, coeffs);
  const auto got = coordinates(C, B, h);
  ASSERT_TRUE(got);
  EXPECT_EQ(*got, coeffs);
  const auto lc = local_coefficients(C, B, Place::branch(2), -2, 1);
  EXPECT_EQ(lc.rows(), B.dim());
  EXPECT_EQ(lc.cols(), 3u);
}

TEST(SpecFile, ParsesBundledFiles) {
  const auto spec = parse_spec_file(std::string(CLIFFKIT_DATA_DIR) + "/trigonal_g4.curve");
  EXPECT_EQ(spec.n, 3u);
  EXPECT_EQ(spec.characteristic, 32029u);
  const Curve C = build_curve(spec);
  EXPECT_EQ(C.genus(), 4);
  const auto divs = build_divisors(spec, C);
  EXPECT_EQ(divs.at("F").degree(), 3);
  EXPECT_EQ(divs.at("K"), C.canonical_divisor());
  // Prime override.
  EXPECT_EQ(build_curve(spec, 37).p(), 37u);
}

TEST(SpecFile, ErrorsCarryLineNumbers) {
  try {
    parse_spec_string("name x\nchar 37\nn two\n");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  const auto spec = parse_spec_string("char 37\nn 2\nf -120 274 -225 85 -15 1\n\ndivisor D = finite 11 1\n");
  const Curve C = build_curve(spec);
  try {
    build_divisors(spec, C);
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5);
  }
}

TEST(Tower, PushforwardBookkeeping) {
  PushforwardTower T;
  T.add_layer({4, 8, {0, 2, 4, 6}});
  EXPECT_EQ(T.genus(1), 9);
  EXPECT_EQ(T.h0(1, 1), 2);
  EXPECT_EQ(T.h0(1, 2), 4);
  EXPECT_EQ(T.h1(1, 1), 6);
  T.add_layer({4, 32, {0, 2, 4, 6}});
  EXPECT_EQ(T.degree(2), 16);
  EXPECT_EQ(T.genus(2), 81);
  EXPECT_EQ(T.hurwitz_genus(2), 81);
  // Riemann-Roch on the composed cover: h0 - h1 = k deg - g + 1.
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(T.h0(2, k) - T.h1(2, k), 16 * k - 81 + 1);
  EXPECT_THROW(T.add_layer({2, 2, {1, 3}}), PreconditionError);
}
