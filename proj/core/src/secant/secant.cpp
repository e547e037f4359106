#include "cliffkit/secant/secant.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>

#include "cliffkit/exactla/linalg.hpp"
#include "cliffkit/util/parallel.hpp"

namespace cliff::secant {

namespace {

uint32_t modulus_of(const Curve& C) { return static_cast<uint32_t>(C.p()); }

// j + 1 distinct finite places away from the frame divisor.
std::vector<Place> distinct_places(const Curve& C, const Divisor& avoid, size_t count, Rng& rng) {
  std::vector<Place> out;
  for (int tries = 0; out.size() < count; ++tries) {
    if (tries > 64 * static_cast<int>(count) + 256) throw SamplingExhausted("not enough distinct places");
    Place P = C.sample_place(rng);
    if (avoid.coefficient(P) != 0) continue;
    if (std::find(out.begin(), out.end(), P) != out.end()) continue;
    out.push_back(P);
  }
  return out;
}

int permutation_sign(const std::vector<size_t>& perm) {
  int s = 1;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) s = -s;
  return s;
}

std::vector<std::vector<size_t>> combinations(size_t n, size_t k) {
  std::vector<std::vector<size_t>> out;
  if (k == 0 || k > n) return out;
  auto idx = la::first_combination(k);
  do out.push_back(idx);
  while (la::next_combination(idx, n));
  return out;
}

la::Matrix<Fp> adjugate(const la::Matrix<Fp>& m) {
  const size_t s = m.rows();
  const uint32_t p = m.characteristic();
  la::Matrix<Fp> adj(s, s, p);
  if (s == 1) {
    adj(0, 0) = Fp(1, p);
    return adj;
  }
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < s; ++j) {
      std::vector<size_t> rows, cols;
      for (size_t r = 0; r < s; ++r)
        if (r != j) rows.push_back(r);
      for (size_t c = 0; c < s; ++c)
        if (c != i) cols.push_back(c);
      Fp d = la::determinant(m.submatrix(rows, cols));
      adj(i, j) = ((i + j) % 2) ? -d : d;
    }
  return adj;
}

}  // namespace

SecantPoint sample_secant_point(const Curve& C, const Evaluator& e12, int j, Rng& rng) {
  if (j < 0) throw PreconditionError("secant level must be >= 0");
  const uint32_t p = modulus_of(C);
  SecantPoint out;
  out.points = distinct_places(C, e12.basis().divisor, static_cast<size_t>(j) + 1, rng);
  out.coords.assign(e12.h0(), Fp(0, p));
  for (const auto& P : out.points) {
    const Fp c = rng.nonzero(p);
    out.coeffs.push_back(c);
    const auto v = e12.evaluation_vector(P);
    for (size_t i = 0; i < v.size(); ++i) out.coords[i] += c * v[i];
  }
  return out;
}

SecantPoint sample_secant_point(const Curve& C, const Evaluator& e12, int j, uint64_t seed) {
  Rng rng(seed);
  return sample_secant_point(C, e12, j, rng);
}

SamplePointCloud sample_cloud(const Curve& C, const Evaluator& e12, int j, size_t count, uint64_t seed,
                              unsigned threads) {
  SamplePointCloud cloud;
  cloud.ambient = e12.h0();
  cloud.level = j;
  cloud.seed = seed;
  cloud.points.resize(count);
  parallel_for(count, threads, [&](size_t i) {
    Rng rng(Rng::derive(seed, i));
    cloud.points[i] = sample_secant_point(C, e12, j, rng);
  });
  return cloud;
}

MinorSpan minor_span(const MultiplicationTensor& T, unsigned k, unsigned threads) {
  const size_t n1 = T.dim1(), n2 = T.dim2(), N = T.dim12();
  if (k == 0 || k > std::min(n1, n2)) throw PreconditionError("minor size out of range");
  const uint32_t p = T.b12.denominator.modulus();
  FormAlgebra alg(N, k, p);
  const size_t monos = alg.basis(k).size();

  std::vector<std::vector<size_t>> perms;
  {
    std::vector<size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
  }
  const auto row_sets = combinations(n1, k);
  const auto col_sets = combinations(n2, k);

  // One partial span per row set, merged in order so the result is
  // independent of scheduling.
  std::vector<la::PrimeSpan> partial(row_sets.size(), la::PrimeSpan(monos, p));
  parallel_for(row_sets.size(), threads, [&](size_t ri) {
    const auto& I = row_sets[ri];
    auto& span = partial[ri];
    for (const auto& J : col_sets) {
      if (span.dim() == monos) return;
      std::vector<Fp> det(monos, Fp(0, p));
      std::vector<const std::vector<Fp>*> factors(k);
      for (const auto& perm : perms) {
        for (unsigned a = 0; a < k; ++a) factors[a] = &T.product(I[a], J[perm[a]]);
        const auto term = alg.product(factors);
        if (permutation_sign(perm) > 0)
          for (size_t m = 0; m < monos; ++m) det[m] += term[m];
        else
          for (size_t m = 0; m < monos; ++m) det[m] -= term[m];
      }
      span.add(det);
    }
  });

  la::PrimeSpan total(monos, p);
  for (const auto& s : partial)
    for (const auto& b : s.basis()) total.add(b);

  MinorSpan out;
  out.k = k;
  out.vars = N;
  out.minors = row_sets.size() * col_sets.size();
  out.basis = total.basis();
  return out;
}

size_t cloud_size_for(size_t vars, unsigned degree, unsigned oversample) {
  return 4 * static_cast<size_t>(std::max(1u, oversample)) * MonomialBasis(vars, degree).size();
}

IdealDim vanishing_ideal_dim(const SamplePointCloud& cloud, unsigned degree, bool want_basis) {
  const MonomialBasis mb(cloud.ambient, degree);
  IdealDim out;
  out.monomials = mb.size();
  out.cloud = cloud.points.size();
  if (cloud.points.empty()) {
    out.dim = mb.size();
    out.prefix_dims = {mb.size(), mb.size(), mb.size()};
    out.evaluations = la::PrimeSpan(mb.size(), 2);
    if (want_basis) {
      out.basis.clear();
      for (size_t i = 0; i < mb.size(); ++i) {
        std::vector<Fp> e(mb.size(), Fp(0, 2));
        e[i] = Fp(1, 2);
        out.basis.push_back(e);
      }
    }
    return out;
  }
  const uint32_t p = cloud.points.front().coords.front().modulus();
  la::PrimeSpan span(mb.size(), p);
  const size_t S = cloud.points.size();
  const size_t marks[3] = {std::max<size_t>(1, S / 4), std::max<size_t>(1, S / 2), S};
  size_t next = 0;
  for (size_t i = 0; i < S; ++i) {
    if (span.dim() < mb.size()) span.add(mb.evaluate(cloud.points[i].coords));
    while (next < 3 && i + 1 == marks[next]) {
      out.prefix_dims.push_back(mb.size() - span.dim());
      ++next;
    }
  }
  if (out.prefix_dims[0] != out.prefix_dims[2] || out.prefix_dims[1] != out.prefix_dims[2])
    throw UnstableDimension("ideal dimension did not stabilize: " + std::to_string(out.prefix_dims[0]) + ", " +
                            std::to_string(out.prefix_dims[1]) + ", " + std::to_string(out.prefix_dims[2]));
  out.dim = out.prefix_dims[2];
  if (want_basis) out.basis = span.annihilator();
  out.evaluations = std::move(span);
  return out;
}

bool contained_in(const MinorSpan& minors, const IdealDim& ideal) {
  if (ideal.cloud == 0) return true;
  const auto rows = ideal.evaluations.basis();
  for (const auto& f : minors.basis)
    for (const auto& r : rows)
      if (!la::dot(f, r).is_zero()) return false;
  return true;
}

DetPresReport det_presented(const Curve& C, const LineBundle& L1, const LineBundle& L2, unsigned k, uint64_t seed,
                            unsigned oversample, unsigned threads) {
  if (k == 0) throw PreconditionError("k must be >= 1");
  DetPresReport r;
  r.k = k;
  r.deg1 = L1.degree();
  r.deg2 = L2.degree();
  r.genus = C.genus();
  const int g = r.genus;
  const int mn = std::min(r.deg1, r.deg2);
  r.hyp_main = mn >= 2 * g + 1 + static_cast<int>(k);
  r.hyp_shifted = mn >= 2 * g + static_cast<int>(k);

  const auto T = linser::mult_map(C, L1, L2);
  r.vars = T.dim12();
  const auto minors = minor_span(T, k + 1, threads);
  r.minors = minors.minors;
  r.minors_dim = minors.dim();

  const Evaluator e12(C, T.b12);
  const size_t S = cloud_size_for(r.vars, k + 1, oversample);
  const auto cloud = sample_cloud(C, e12, static_cast<int>(k) - 1, S, seed, threads);
  const auto ideal = vanishing_ideal_dim(cloud, k + 1);
  r.monomials = ideal.monomials;
  r.ideal_dim = ideal.dim;
  r.cloud = ideal.cloud;
  r.prefix_dims = ideal.prefix_dims;
  r.contained = contained_in(minors, ideal);

  if (k == 1) {
    // Quadrics through C in its L12 embedding, exactly: the kernel of
    // Sym^2 H^0(L12) -> H^0(L12^2).
    const auto T2 = linser::mult_map(C, T.b12, T.b12);
    const size_t N = T.dim12();
    la::PrimeSpan img(T2.dim12(), static_cast<uint32_t>(C.p()));
    for (size_t a = 0; a < N; ++a)
      for (size_t b = a; b < N; ++b) img.add(T2.product(a, b));
    r.exact_quadrics = N * (N + 1) / 2 - img.dim();
  }

  if (!r.contained)
    r.verdict = "NOT_CONTAINED";
  else if (r.minors_dim == r.ideal_dim && (!r.exact_quadrics || *r.exact_quadrics == r.ideal_dim))
    r.verdict = "EQUAL";
  else
    r.verdict = "MINORS_SMALLER";
  return r;
}

ContainmentReport rank_locus_containment(const Curve& C, const LineBundle& L, int j, size_t trials, uint64_t seed,
                                         unsigned threads) {
  if (j < 1) throw PreconditionError("rank locus level must be >= 1");
  const auto T = linser::mult_map(C, L, L);
  const Evaluator e12(C, T.b12);
  const auto cloud = sample_cloud(C, e12, j - 1, trials, seed, threads);
  std::vector<size_t> ranks(trials);
  parallel_for(trials, threads, [&](size_t i) {
    ranks[i] = la::rank(shiffer::point_matrix(T, cloud.points[i].coords));
  });
  ContainmentReport out;
  out.j = j;
  out.trials = trials;
  for (size_t rk : ranks) {
    ++out.histogram[rk];
    if (rk > static_cast<size_t>(j)) ++out.violations;
  }
  return out;
}

HassettReport hassett_witness(const Curve& C, const Divisor& D, uint64_t seed, unsigned oversample,
                              unsigned threads) {
  const int d = D.degree();
  if (d < 3 || !D.is_effective()) throw PreconditionError("hassett witness needs effective D of degree >= 3");
  HassettReport out;
  out.d = d;
  out.target_rank = d - 2;
  const LineBundle L = LineBundle::canonical(C).twist(D);
  const Evaluator e(C, L);
  const auto w = shiffer::min_rank_witness(C, e, D, seed, true);
  out.method = w.method;
  out.detail = w.detail;
  if (!w.datum) return out;
  out.datum = w.datum;
  const auto tau = shiffer::shiffer_matrix(e, e, *w.datum, true);
  out.rank = la::rank(tau);

  // The plane is the column space of tau in P(H^0(L)^dual).  A place q lies
  // on it iff its evaluation vector does.
  const uint32_t p = modulus_of(C);
  la::PrimeSpan cols(e.h0(), p);
  for (size_t c = 0; c < tau.cols(); ++c) cols.add(tau.col(c));
  const auto places = C.rational_places();
  std::vector<uint8_t> on(places.size(), 0);
  parallel_for(places.size(), threads,
               [&](size_t i) { on[i] = cols.contains(e.evaluation_vector(places[i], true)) ? 1 : 0; });
  out.places_tested = places.size();
  out.places_on_plane = static_cast<size_t>(std::count(on.begin(), on.end(), 1));

  // Forms of degree d - 1 through Sec^{d-3} in P(H^0(L^2)^dual) that do not
  // vanish at the datum.
  const auto b2 = curve::riemann_roch_space(C, L.representative * 2);
  const Evaluator e2(C, b2);
  const auto phi = shiffer::datum_functional(C, b2, *w.datum, true);
  const unsigned deg = static_cast<unsigned>(d - 1);
  const auto cloud = sample_cloud(C, e2, d - 3, cloud_size_for(b2.dim(), deg, oversample), seed + 1, threads);
  const auto ideal = vanishing_ideal_dim(cloud, deg, true);
  out.ideal_dim = ideal.dim;
  out.cloud = ideal.cloud;
  const MonomialBasis mb(b2.dim(), deg);
  const auto at_phi = mb.evaluate(phi);
  for (const auto& f : ideal.basis)
    if (!la::dot(f, at_phi).is_zero()) ++out.forms_not_vanishing;
  return out;
}

TangentReport tangent_space_check(const Curve& C, const LineBundle& L, const shiffer::ShifferDatum& phi) {
  TangentReport out;
  const Divisor D = phi.divisor();
  out.p = D.degree();
  const Evaluator e(C, L);
  if (!phi.in_star()) {
    out.skipped = true;
    out.reason = "datum not in T*";
    return out;
  }
  const auto M = shiffer::shiffer_matrix(e, e, phi);
  if (la::rank(M) != static_cast<size_t>(out.p)) {
    out.skipped = true;
    out.reason = "variation has rank below deg D";
    return out;
  }
  const auto T = linser::mult_map(C, L, L);
  const size_t N = T.dim1(), N12 = T.dim12();
  out.ambient = N12;
  const uint32_t p = modulus_of(C);
  const auto xi = shiffer::datum_functional(C, T.b12, phi);
  const auto Mx = shiffer::point_matrix(T, xi);
  const size_t s = static_cast<size_t>(out.p) + 1;
  if (s > N) {
    out.skipped = true;
    out.reason = "minor size exceeds h0(L)";
    return out;
  }

  la::PrimeSpan grads(N12, p);
  const auto sets = combinations(N, s);
  for (const auto& I : sets)
    for (const auto& J : sets) {
      const auto adj = adjugate(Mx.submatrix(I, J));
      std::vector<Fp> g(N12, Fp(0, p));
      for (size_t a = 0; a < s; ++a)
        for (size_t b = 0; b < s; ++b) {
          const Fp c = adj(b, a);
          if (c.is_zero()) continue;
          const auto& mu = T.product(I[a], J[b]);
          for (size_t m = 0; m < N12; ++m) g[m] += c * mu[m];
        }
      grads.add(g);
    }
  out.jacobian_rank = grads.dim();
  out.kernel_dim = N12 - out.jacobian_rank;

  // Sections of L^2 vanishing to order two along D, as coordinates in b12.
  const auto sub = curve::riemann_roch_space(C, T.b12.divisor - D * 2);
  const auto coords = curve::coordinates(C, T.b12, sub.basis);
  la::PrimeSpan twice(N12, p);
  for (const auto& c : coords) {
    if (!c) throw InternalError("section of L^2(-2D) outside H^0(L^2)");
    twice.add(*c);
  }
  out.expected_dim = N12 - twice.dim();
  out.contains_2d = true;
  for (const auto& v : grads.basis())
    if (!twice.contains(v)) out.contains_2d = false;
  return out;
}

SecantDimReport secant_dim_probe(const Curve& C, const LineBundle& L, int j, size_t trials, uint64_t seed) {
  if (j < 0) throw PreconditionError("secant level must be >= 0");
  const Evaluator e(C, L);
  SecantDimReport out;
  out.j = j;
  out.trials = trials;
  out.ambient = e.h0();
  const size_t k = 2 * (static_cast<size_t>(j) + 1);
  for (size_t t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, t));
    const auto pts = distinct_places(C, L.representative, k, rng);
    la::PrimeSpan span(e.h0(), modulus_of(C));
    for (const auto& P : pts) span.add(e.evaluation_vector(P));
    if (span.dim() == k) ++out.independent;
  }
  return out;
}

}  // namespace cliff::secant
