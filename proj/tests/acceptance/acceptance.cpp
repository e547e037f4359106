// One PASS/FAIL line per acceptance criterion.  Every comparison is exact
// (tolerance 0); sampled checks pin their sample counts and seeds below.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "cliffkit/curve/riemann_roch.hpp"
#include "cliffkit/curve/spec_file.hpp"
#include "cliffkit/exactla/linalg.hpp"
#include "cliffkit/exactla/prime_span.hpp"
#include "cliffkit/koszul/koszul.hpp"
#include "cliffkit/linser/checks.hpp"
#include "cliffkit/linser/clifford.hpp"
#include "cliffkit/secant/secant.hpp"
#include "cliffkit/shiffer/shiffer.hpp"

using namespace cliff;
using curve::Curve;
using curve::Divisor;
using curve::Fp;
using linser::Evaluator;
using linser::LineBundle;

namespace {

constexpr uint64_t kSeed = 20240611;
constexpr size_t kRankSamples = 200;
constexpr size_t kContainmentSamples = 500;
constexpr size_t kCrossPoints = 50;

std::string data(const std::string& f) { return std::string(CLIFFKIT_DATA_DIR) + "/" + f; }

Curve load(const std::string& f, std::optional<uint32_t> p = std::nullopt) {
  return curve::build_curve(curve::parse_spec_file(data(f)), p);
}

Divisor random_divisor(const Curve& C, int d, uint64_t seed, const Divisor& avoid = {}) {
  Rng rng(seed);
  Divisor D;
  while (D.degree() < d) {
    auto P = C.sample_place(rng);
    if (D.coefficient(P) == 0 && avoid.coefficient(P) == 0) D.add(P, 1);
  }
  return D;
}

Divisor fiber_near(const Curve& C, int64_t start) {
  for (int64_t x = start;; ++x) {
    const auto over = C.places_over(C.fp(x));
    if (over.size() == C.n() && over.front().is_finite()) return Divisor::sum_of(over);
  }
}

// Oracle: rank of [A | v] exceeds rank A iff A x = v has no solution.
bool solvable(const la::Matrix<Fp>& A, const std::vector<Fp>& v) {
  la::Matrix<Fp> aug(A.rows(), A.cols() + 1, A.characteristic());
  for (size_t i = 0; i < A.rows(); ++i) {
    for (size_t j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
    aug(i, A.cols()) = v[i];
  }
  const size_t ra = A.cols() == 0 ? 0 : la::rank(A);
  return la::rank(aug) == ra;
}

struct Check {
  bool ok = true;
  std::ostringstream notes;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void run(int id, const std::string& title, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.notes << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!c.ok) ++failures;
  std::printf("%s %d %s |%s (tol=0, %.1fs)\n", c.ok ? "PASS" : "FAIL", id, title.c_str(), c.notes.str().c_str(),
              secs);
  std::fflush(stdout);
}

}  // namespace

int main() {
  run(1, "tower golden numbers", [](Check& c) {
    const auto spec = curve::parse_spec_file(data("cyclic4_g9.curve"));
    const Curve C = curve::build_curve(spec);
    const auto decl = curve::build_divisors(spec, C);
    const Divisor& F = decl.at("F");
    const auto tower = curve::build_tower(spec);
    // Hurwitz by hand: 2g - 2 = 4 * (-2) + 8 * 3.
    c.expect(C.genus() == 9 && tower.genus(1) == 9, "genus 9");
    for (int k = 1; k <= 2; ++k) {
      const int rr = static_cast<int>(curve::h0(C, F * k));
      const int pf = tower.h0(1, k);
      c.expect(rr == pf, "h0(kF) RR vs pushforward");
      c.notes << " h0(" << k << "F)=" << rr << "/" << pf;
    }
    c.expect(curve::h0(C, F) == 2 && curve::h0(C, F * 2) == 4, "h0(F)=2, h0(2F)=4");
    c.expect(curve::h0(C, C.canonical_divisor() - F) == static_cast<size_t>(tower.h1(1, 1)), "h0(K-F)");

    const auto T2 = curve::build_tower(curve::parse_spec_file(data("tower_l2.curve")));
    // Oracle: composed twists are the 16 sums a + b of {0,2,4,6}.
    int g = 0, h0F = 0, h02F = 0, h1F = 0, h12F = 0;
    for (int a : {0, 2, 4, 6})
      for (int b : {0, 2, 4, 6}) {
        const int t = a + b;
        g += std::max(0, t - 1);
        h0F += std::max(0, 2 - t);
        h02F += std::max(0, 3 - t);
        h1F += std::max(0, t - 2);
        h12F += std::max(0, t - 3);
      }
    c.expect(g == 81 && T2.genus(2) == g && T2.hurwitz_genus(2) == 81, "layer-2 genus 81");
    c.expect(T2.h0(2, 1) == 2 && T2.h0(2, 1) == h0F, "layer-2 h0(F)=2");
    c.expect(T2.h0(2, 2) == 5 && T2.h0(2, 2) == h02F, "layer-2 h0(2F)=5");
    c.expect(T2.h1(2, 1) == 66 && T2.h1(2, 1) == h1F, "layer-2 h0(K-F)=66");
    c.expect(T2.h1(2, 2) == 53 && T2.h1(2, 2) == h12F, "layer-2 h0(K-2F)=53");
    c.notes << " layer2 g=" << T2.genus(2) << " h0F=" << T2.h0(2, 1) << " h02F=" << T2.h0(2, 2)
            << " h0(K-F)=" << T2.h1(2, 1) << " h0(K-2F)=" << T2.h1(2, 2);
  });

  run(2, "Clifford landmarks", [](Check& c) {
    linser::SearchOptions opt;
    opt.seed = kSeed;
    {
      const Curve H = load("hyperelliptic_g3.curve", 37);
      const auto res = linser::cliff_bundle(H, LineBundle::canonical(H), opt);
      c.expect(res.value == 0 && res.certified, "hyperelliptic g3 cliff 0 certified");
      c.expect(res.witness.degree() == 2 && curve::h0(H, res.witness) == 2, "g^1_2 witness");
      c.notes << " hyp3=" << (res.value ? *res.value : -1) << "(" << res.mode() << ")";
    }
    {
      const Curve T = load("trigonal_g4.curve", 37);
      const auto res = linser::cliff_bundle(T, LineBundle::canonical(T), opt);
      const Divisor F = fiber_near(T, 2);
      c.expect(res.value == 1 && res.certified, "trigonal g4 cliff 1 certified");
      // Witness linearly equivalent to a fiber of x.
      c.expect(res.witness.degree() == 3 && curve::h0(T, res.witness - F) == 1, "fiber witness");
      c.notes << " trig4=" << (res.value ? *res.value : -1) << "(" << res.mode() << ")";
    }
    auto o = opt;
    o.require_very_ample = false;
    for (const char* file : {"hyperelliptic_g2.curve", "hyperelliptic_g3.curve"}) {
      const Curve C = load(file, 37);
      for (int d = 2; d <= 4; ++d) {
        const Divisor D = random_divisor(C, d, Rng::derive(kSeed, d), C.canonical_divisor());
        const auto L = LineBundle::canonical(C).twist(D);
        const auto res = linser::cliff_bundle(C, L, o);
        c.expect(res.value == d - 2, "cliff K(D) = d - 2");
        c.expect(linser::cliff_pair(C, L, D) == d - 2, "attained at D");
        c.notes << " g" << C.genus() << "d" << d << "=" << (res.value ? *res.value : -1) << (res.certified ? "c" : "s");
      }
    }
  });

  run(3, "Shiffer rank bounds", [](Check& c) {
    {
      const Curve T = load("trigonal_g4.curve");
      const Evaluator eK(T, LineBundle::canonical(T));
      const Divisor F = fiber_near(T, 10);
      const auto rb = shiffer::rank_bounds_check(eK, eK, F, kRankSamples, kSeed);
      // Oracle: r = h0(K - F) - h0(K) + 3 = 2 - 4 + 3.
      c.expect(rb.r1 == 1 && rb.lower == 1 && rb.upper == 2, "trigonal bounds [1,2]");
      c.expect(rb.all_within() && rb.upper_attained(), "trigonal within, upper attained");
      const auto w = shiffer::min_rank_witness(T, eK, F, kSeed);
      c.expect(w.ok() && w.rank == 1, "trigonal lower bound attained");
      c.notes << " trig[" << rb.lower << "," << rb.upper << "] witness=" << w.rank;
    }
    const Curve C = load("hyperelliptic_g2.curve");
    {
      const Evaluator e7(C, LineBundle::of(random_divisor(C, 7, Rng::derive(kSeed, 70))));
      for (int d = 1; d <= 3; ++d) {
        const Divisor D = random_divisor(C, d, Rng::derive(kSeed, 100 + d), e7.bundle().representative);
        const auto rb = shiffer::rank_bounds_check(e7, e7, D, kRankSamples, kSeed + d);
        c.expect(rb.all_within() && rb.upper_attained(), "deg 7 within, upper attained");
        const auto w = shiffer::min_rank_witness(C, e7, D, kSeed);
        c.expect(w.ok(), "deg 7 lower bound attained");
        c.notes << " deg7 d" << d << "[" << rb.lower << "," << rb.upper << "]";
      }
    }
    {
      const Evaluator e5(C, LineBundle::of(random_divisor(C, 5, Rng::derive(kSeed, 50))));
      const Evaluator e6(C, LineBundle::of(random_divisor(C, 6, Rng::derive(kSeed, 60))));
      for (int d = 1; d <= 3; ++d) {
        Divisor avoid = e5.bundle().representative + e6.bundle().representative;
        const Divisor D = random_divisor(C, d, Rng::derive(kSeed, 200 + d), avoid);
        const auto rb = shiffer::rank_bounds_check(e5, e6, D, kRankSamples, kSeed + 10 + d);
        c.expect(rb.all_within() && rb.upper_attained(), "two-bundle within, upper attained");
        c.notes << " 5/6 d" << d << "[" << rb.lower << "," << rb.upper << "]";
      }
    }
  });

  run(4, "point variation vs evaluation matrix", [](Check& c) {
    for (const char* file : {"hyperelliptic_g2.curve", "hyperelliptic_g3.curve", "trigonal_g4.curve", "picard_g3.curve",
                             "cyclic4_g9.curve"}) {
      const Curve C = load(file);
      const auto K = LineBundle::canonical(C);
      const Evaluator eK(C, K);
      const auto T = linser::mult_map(C, K, K);
      Rng rng(kSeed);
      size_t ok = 0;
      for (size_t i = 0; i < kCrossPoints; ++i) {
        const auto P = C.sample_place(rng);
        const auto A = shiffer::shiffer_matrix(eK, eK, shiffer::unit_datum(Divisor::point(P), C.p()));
        const auto B = shiffer::point_matrix(T, shiffer::evaluation_functional(C, T.b12, P));
        std::optional<Fp> s;
        bool prop = true;
        for (size_t a = 0; a < A.rows(); ++a)
          for (size_t b = 0; b < A.cols(); ++b) {
            if (!s && !B(a, b).is_zero()) s = A(a, b) / B(a, b);
            if (s && A(a, b) != *s * B(a, b)) prop = false;
            if (!s && !A(a, b).is_zero()) prop = false;
          }
        if (prop && s && !s->is_zero()) ++ok;
      }
      c.expect(ok == kCrossPoints, std::string("proportional on ") + file);
      c.notes << " g" << C.genus() << ":" << ok << "/" << kCrossPoints;
    }
  });

  run(5, "quadratic normality", [](Check& c) {
    auto sym2_rank = [](const Curve& C, const LineBundle& L) {
      const auto T = linser::mult_map(C, L, L);
      la::PrimeSpan img(T.dim12(), C.p());
      for (size_t a = 0; a < T.dim1(); ++a)
        for (size_t b = a; b < T.dim1(); ++b) img.add(T.product(a, b));
      return std::pair<size_t, size_t>(img.dim(), T.dim12());
    };
    {
      const Curve T = load("trigonal_g4.curve");
      auto [r, n] = sym2_rank(T, LineBundle::canonical(T));
      // h0(2K) = 3g - 3.
      c.expect(n == 9 && r == 9, "trigonal g4 surjective");
      c.notes << " trig4 " << r << "/" << n;
    }
    {
      const Curve H = load("hyperelliptic_g3.curve");
      auto [r, n] = sym2_rank(H, LineBundle::canonical(H));
      // Image is the 2g - 1 forms pulled back from the rational normal curve.
      c.expect(n == 6 && r == 5, "hyperelliptic g3 corank 1");
      c.notes << " hyp3 " << r << "/" << n;
    }
    for (const char* file : {"hyperelliptic_g2.curve", "hyperelliptic_g3.curve", "trigonal_g4.curve", "picard_g3.curve"}) {
      const Curve C = load(file);
      const int g = C.genus();
      for (int d : {2 * g + 1, 2 * g + 2}) {
        const auto L = LineBundle::of(random_divisor(C, d, Rng::derive(kSeed, 300 + d)));
        auto [r, n] = sym2_rank(C, L);
        c.expect(n == static_cast<size_t>(2 * d - g + 1) && r == n, "deg >= 2g+1 surjective");
        c.notes << " g" << g << "d" << d << ":" << r << "/" << n;
      }
    }
  });

  run(6, "determinantal presentation", [](Check& c) {
    const Curve C = load("hyperelliptic_g2.curve");
    const auto L1 = LineBundle::of(random_divisor(C, 6, Rng::derive(kSeed, 61)));
    const auto L2 = LineBundle::of(random_divisor(C, 6, Rng::derive(kSeed, 62)));
    c.expect(!linser::isomorphic(C, L1, L2), "L1 != L2");
    {
      const auto r = secant::det_presented(C, L1, L2, 1, kSeed);
      // Oracle: dim Sym^2 W - h0(L12^2), with W = H0(L12), from RR alone.
      const size_t N = curve::h0(C, L1.representative + L2.representative);
      const size_t target = N * (N + 1) / 2 - curve::h0(C, (L1.representative + L2.representative) * 2);
      c.expect(r.minors_dim == target && r.ideal_dim == target, "k=1 dims");
      c.expect(r.equal(), "k=1 EQUAL");
      c.notes << " k1: minors=" << r.minors_dim << " ideal=" << r.ideal_dim << " rr=" << target << " " << r.verdict;
    }
    {
      const auto r = secant::det_presented(C, L1, L2, 2, kSeed);
      c.expect(r.contained && r.minors_dim == r.ideal_dim, "k=2 deg 6 equal");
      c.notes << " k2/deg6: minors=" << r.minors_dim << " ideal=" << r.ideal_dim << " cloud=" << r.cloud << " "
              << r.verdict << (r.hyp_main ? "" : " (below deg 2g+1+k)");
    }
    {
      const auto M1 = LineBundle::of(random_divisor(C, 7, Rng::derive(kSeed, 71)));
      const auto M2 = LineBundle::of(random_divisor(C, 7, Rng::derive(kSeed, 72)));
      const auto r = secant::det_presented(C, M1, M2, 2, kSeed);
      c.expect(r.hyp_main && r.equal(), "k=2 deg 7 EQUAL");
      c.notes << " k2/deg7: minors=" << r.minors_dim << " ideal=" << r.ideal_dim << " " << r.verdict;
    }
  });

  run(7, "secant vs rank locus", [](Check& c) {
    struct Model {
      const char* file;
      bool canonical;
    };
    for (const Model m : {Model{"hyperelliptic_g2.curve", false}, Model{"trigonal_g4.curve", true},
                          Model{"picard_g3.curve", false}}) {
      const Curve C = load(m.file);
      const auto L = m.canonical ? LineBundle::canonical(C)
                                 : LineBundle::of(random_divisor(C, 2 * C.genus() + 3, Rng::derive(kSeed, 7)));
      for (int j = 1; j <= 3; ++j) {
        const auto r = secant::rank_locus_containment(C, L, j, kContainmentSamples, kSeed + j);
        c.expect(r.violations == 0 && r.trials == kContainmentSamples, "containment");
      }
      c.notes << " g" << C.genus() << ":ok";
    }
    for (const char* file : {"hyperelliptic_g2.curve", "picard_g3.curve", "hyperelliptic_g3.curve"}) {
      const Curve C = load(file);
      const Divisor D = random_divisor(C, 3, Rng::derive(kSeed, 73), C.canonical_divisor());
      const auto h = secant::hassett_witness(C, D, kSeed);
      // Oracle for (b): recount the plane membership here.
      const Evaluator e(C, LineBundle::canonical(C).twist(D));
      const auto tau = shiffer::shiffer_matrix(e, e, *h.datum, true);
      la::PrimeSpan plane(e.h0(), C.p());
      for (size_t col = 0; col < tau.cols(); ++col) plane.add(tau.col(col));
      size_t hits = 0, tested = 0;
      for (const auto& P : C.rational_places()) {
        ++tested;
        if (plane.contains(e.evaluation_vector(P, true))) ++hits;
      }
      c.expect(h.rank_ok() && plane.dim() == 1, "rank d - 2");
      c.expect(hits == 0 && tested == h.places_tested && h.avoids_curve(), "plane misses C(F_p)");
      c.notes << " g" << C.genus() << ": rank=" << h.rank << " places=" << tested << " on=" << hits
              << " offsec_forms=" << h.forms_not_vanishing;
    }
  });

  run(8, "tangent space at rank-p points", [](Check& c) {
    const Curve C = load("hyperelliptic_g2.curve");
    const auto L = LineBundle::of(random_divisor(C, 7, Rng::derive(kSeed, 80)));
    for (int p = 1; p <= 2; ++p) {
      Rng rng(Rng::derive(kSeed, 80 + p));
      const Divisor D = random_divisor(C, p, rng.next(), L.representative);
      const auto phi = shiffer::random_star_datum(D, C.p(), rng);
      const auto t = secant::tangent_space_check(C, L, phi);
      // Oracle: h0(L^2) - h0(L^2(-2D)) from RR.
      const Divisor L2 = L.representative * 2;
      const size_t expect = curve::h0(C, L2) - curve::h0(C, L2 - D * 2);
      c.expect(!t.skipped && t.kernel_dim == expect && t.contains_2d, "kernel = span(2D)");
      c.expect(expect == static_cast<size_t>(2 * p), "2p");
      c.notes << " p" << p << ": ker=" << t.kernel_dim << " rr=" << expect;
    }
  });

  run(9, "Koszul cohomology", [](Check& c) {
    const Curve H3 = load("hyperelliptic_g3.curve");
    const Curve P3 = load("picard_g3.curve");
    const Curve T4 = load("trigonal_g4.curve");
    for (const Curve* C : {&H3, &P3, &T4}) {
      const auto K = LineBundle::canonical(*C);
      const koszul::KoszulComplex KC(*C, K);
      const int g = C->genus();
      bool sq = true, dual = true;
      for (int p = 0; p <= g; ++p)
        for (int q = 0; q <= 3; ++q) {
          const auto s = KC.slice(p, q);
          sq = sq && s.square_zero;
          dual = dual && KC.dual_dim(p, q) == s.dim();
        }
      c.expect(sq, "d^2 = 0");
      c.expect(dual, "dual complex consistency");
      const bool hyper = C == &H3;
      const size_t k02 = KC.dim(0, 2);
      c.expect((k02 == 0) == !hyper, "K02 = 0 iff non-hyperelliptic");
      c.expect((k02 == 0) == linser::mult_map(*C, K, K).surjective(), "K02 vs quadratic normality");
      c.notes << " g" << g << (hyper ? "h" : "") << ":K02=" << k02;
    }
    {
      const koszul::KoszulComplex KC(T4, LineBundle::canonical(T4));
      std::ostringstream d;
      for (int p = 0; p <= 2; ++p) {
        c.expect(KC.dim(p, 2) == KC.dim(4 - p - 2, 1), "duality g=4");
        d << KC.dim(p, 2);
      }
      c.notes << " dual(K_p2)=" << d.str();
    }
    // Nontrivial classes, with the coboundary test redone here as a rank
    // oracle on the assembled transpose.
    auto check_class = [&](const koszul::KoszulComplex& KC, const LineBundle& L, const Divisor& D, int want_c,
                           const std::string& tag) {
      const auto cr = koszul::verify_nontrivial_class(KC, L, D, kSeed);
      c.expect(cr.c == want_c && cr.nontrivial(), tag + " nontrivial");
      const auto phi_e = Evaluator(KC.curve(), KC.basis(1));
      const auto w = shiffer::min_rank_witness(KC.curve(), phi_e, D, kSeed, !D.disjoint_from(L.representative));
      const auto phi = shiffer::datum_functional(KC.curve(), KC.basis(2), *w.datum, !D.disjoint_from(L.representative));
      const auto M = shiffer::shiffer_matrix(phi_e, phi_e, *w.datum, !D.disjoint_from(L.representative));
      la::PrimeSpan img(M.rows(), KC.curve().p());
      for (size_t col = 0; col < M.cols(); ++col) img.add(M.col(col));
      const auto v = koszul::decomposable_cochain(phi, img.basis(), KC.wdim());
      c.expect(!solvable(KC.boundary(cr.c, 2).transpose(), v), tag + " oracle: not a coboundary");
      c.notes << " " << tag << ":c=" << cr.c;
    };
    {
      const auto K = LineBundle::canonical(T4);
      const koszul::KoszulComplex KC(T4, K);
      check_class(KC, K, fiber_near(T4, 10), 1, "trig-pencil");
      const auto tr = koszul::verify_decomposable_trivial(KC, 0, 1, kSeed);
      c.expect(tr.all_trivial(), "trig p=0 trivial");
    }
    const Curve G2 = load("hyperelliptic_g2.curve");
    for (const Curve* C : {&G2, &P3}) {
      for (int d = 3; d <= 4; ++d) {
        const Divisor D = random_divisor(*C, d, Rng::derive(kSeed, 90 + d), C->canonical_divisor());
        const auto L = LineBundle::canonical(*C).twist(D);
        const koszul::KoszulComplex KC(*C, L);
        check_class(KC, L, D, d - 2, "g" + std::to_string(C->genus()) + "K(D)d" + std::to_string(d));
        for (int p = 0; p < d - 2; ++p) {
          const auto tr = koszul::verify_decomposable_trivial(KC, p, 20, kSeed + p);
          c.expect(tr.all_trivial(), "decomposable below cliff trivial");
          c.notes << " p" << p << ":" << tr.coboundaries << "/" << tr.cocycles;
        }
      }
    }
  });

  run(10, "Petri equivalence", [](Check& c) {
    size_t tested = 0;
    auto test = [&](const Curve& C, const Divisor& D, const std::string& tag) {
      const auto pr = linser::petri_check(C, D, kSeed);
      // Oracle for the Petri side: rank of H0(D) x H0(K-D) -> H0(K) here.
      const auto T = linser::mult_map(C, LineBundle::of(D), LineBundle::of(C.canonical_divisor() - D));
      c.expect(T.rank == pr.petri_rank, tag + " petri rank oracle");
      c.expect(pr.agree(), tag + " tests agree");
      ++tested;
      return pr;
    };
    const Curve G9 = load("cyclic4_g9.curve");
    const Divisor F9 = fiber_near(G9, 23);
    const auto g9 = test(G9, F9, "g9-g14");
    c.expect(!g9.petri_surjective(), "g9 g^1_4 Petri-non-surjective");
    c.notes << " g9:" << g9.petri_rank << "/" << g9.petri_target;
    test(G9, F9 * 2, "g9-2F");
    const Curve T4 = load("trigonal_g4.curve");
    test(T4, fiber_near(T4, 10), "trig-pencil");
    const Curve H3 = load("hyperelliptic_g3.curve");
    test(H3, fiber_near(H3, 12), "hyp3-g12");
    const Curve G2 = load("hyperelliptic_g2.curve");
    test(G2, fiber_near(G2, 11), "hyp2-g12");
    c.notes << " cases=" << tested;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
