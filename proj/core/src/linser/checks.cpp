#include "cliffkit/linser/checks.hpp"

#include <set>

namespace cliff::linser {

bool places_enumerable(const Curve& C) { return C.p() <= 1024; }

namespace {

// Places tested when the rational points are too many to enumerate: the
// support of the representative, infinity, branch points, and samples.
std::vector<Place> test_places(const Curve& C, const LineBundle& L, Rng& rng, size_t samples) {
  std::set<Place> s;
  for (const auto& P : L.representative.support()) s.insert(P);
  for (const auto& P : C.infinite_places()) s.insert(P);
  for (const auto& r : C.f().roots()) s.insert(Place::branch(r.value()));
  for (size_t i = 0; i < samples; ++i) s.insert(C.sample_place(rng));
  return {s.begin(), s.end()};
}

}  // namespace

CheckResult base_point_free(const Curve& C, const LineBundle& L, uint64_t seed, size_t samples) {
  CheckResult res;
  Evaluator ev(C, L);
  const size_t n0 = ev.h0();
  Rng rng(Rng::derive(seed, 0xb9f));
  res.certified = places_enumerable(C);
  const auto places = res.certified ? C.rational_places() : test_places(C, L, rng, samples);
  res.value = n0 > 0;
  if (n0 == 0) res.detail = "no sections";
  for (const auto& P : places) {
    if (!res.value) break;
    ++res.tested;
    if (ev.h0_minus(Divisor::point(P)) != n0 - 1) {
      res.value = false;
      res.detail = "base point at " + P.str();
    }
  }
  return res;
}

CheckResult very_ample(const Curve& C, const LineBundle& L, uint64_t seed, size_t samples) {
  CheckResult res;
  Evaluator ev(C, L);
  const size_t n0 = ev.h0();
  Rng rng(Rng::derive(seed, 0x7a3));
  res.certified = places_enumerable(C) && C.p() <= 256;
  const auto places = res.certified ? C.rational_places() : test_places(C, L, rng, samples);
  if (n0 < 2) {
    res.detail = "fewer than two sections";
    return res;
  }
  ev.prepare(places, 2);
  res.value = true;
  for (size_t i = 0; i < places.size() && res.value; ++i)
    for (size_t j = i; j < places.size(); ++j) {
      Divisor D = Divisor::point(places[i]);
      D.add(places[j], 1);
      ++res.tested;
      if (ev.h0_minus(D) != n0 - 2) {
        res.value = false;
        res.detail = places[i] == places[j] ? "fails to separate tangents at " + places[i].str()
                                            : "fails to separate " + places[i].str() + " and " + places[j].str();
        break;
      }
    }
  return res;
}

PetriResult petri_check(const Curve& C, const Divisor& D, uint64_t seed) {
  const LineBundle L = LineBundle::of(D);
  const auto bpf = base_point_free(C, L, seed);
  if (!bpf.value) throw PreconditionError("divisor is not base point free: " + bpf.detail);
  PetriResult res;
  const auto bD = curve::riemann_roch_space(C, D);
  const auto bKD = curve::riemann_roch_space(C, C.canonical_divisor() - D);
  const auto petri = mult_map(C, bD, bKD);
  res.petri_rank = petri.rank;
  res.petri_target = petri.dim12();
  const auto square = mult_map(C, bD, bD);
  res.square_rank = square.rank;
  res.square_target = square.dim12();
  return res;
}

PlaneSearchResult d_pointed_plane_search(const Curve& C, const LineBundle& L, int d, uint64_t seed,
                                         size_t samples) {
  const int g = C.genus();
  if (L.degree() != 2 * g - 2) throw PreconditionError("plane search needs deg L = 2g - 2");
  Evaluator ev(C, L);
  if (2 * d < static_cast<int>(ev.h0()) + 1) throw PreconditionError("plane search needs 2d >= h0(L) + 1");
  PlaneSearchResult res;
  Rng rng(Rng::derive(seed, 0xd91));
  const uint32_t p = C.p();
  std::vector<Divisor> cands;
  // Fibers of the cover padded with random points, then random divisors.
  for (uint32_t x = 0; x < p && cands.size() < 16; ++x) {
    const auto over = C.places_over(Fp::raw(x, p));
    if (over.size() != C.n() || static_cast<int>(C.n()) > d) continue;
    Divisor D = Divisor::sum_of(over);
    while (D.degree() < d) D.add(C.sample_place(rng), 1);
    cands.push_back(D);
  }
  const Divisor residual = L.representative - C.canonical_divisor();
  for (size_t s = 0; s < samples; ++s) {
    Divisor D;
    if (residual.is_effective() && residual.degree() <= d && s % 2 == 0) D = residual;
    while (D.degree() < d) D.add(C.sample_place(rng), 1);
    cands.push_back(D);
  }
  for (const auto& D : cands) {
    ++res.candidates;
    const int r = ev.r(D);
    if (r >= 1) {
      res.witness = D;
      res.r = r;
      return res;
    }
  }
  return res;
}

}  // namespace cliff::linser
