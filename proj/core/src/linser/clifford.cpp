#include "cliffkit/linser/clifford.hpp"

#include <algorithm>
#include <cmath>

#include "cliffkit/linser/checks.hpp"
#include "cliffkit/util/parallel.hpp"

namespace cliff::linser {

int r_L(const Curve& C, const LineBundle& L, const Divisor& D) {
  if (!D.is_effective()) throw PreconditionError("r_L needs an effective divisor");
  const int a = static_cast<int>(curve::h0(C, L.representative - D));
  const int b = static_cast<int>(curve::h0(C, L.representative));
  return a - b + D.degree();
}

int cliff_pair(const Curve& C, const LineBundle& L, const Divisor& D) { return D.degree() - 2 * r_L(C, L, D); }

int cliff_of(const Curve& C, const LineBundle& L) {
  return L.degree() - 2 * (static_cast<int>(h0(C, L)) - 1);
}

int cliff_two_bundle(const Curve& C, const LineBundle& L1, const LineBundle& L2, const Divisor& D) {
  return D.degree() - r_L(C, L1, D) - r_L(C, L2, D);
}

double multiset_count(size_t places, int dmax) {
  double total = 0;
  for (int d = 1; d <= dmax; ++d) {
    // C(places + d - 1, d)
    double c = 1;
    for (int i = 1; i <= d; ++i) c = c * static_cast<double>(places + i - 1) / i;
    total += c;
  }
  return total;
}

namespace {

struct Best {
  std::optional<int> value;
  Divisor witness;
  size_t candidates = 0, eligible = 0, excluded = 0;

  void offer(int v, const Divisor& D) {
    if (!value || v < *value || (v == *value && D < witness)) {
      value = v;
      witness = D;
    }
  }
  void merge(const Best& o) {
    candidates += o.candidates;
    eligible += o.eligible;
    excluded += o.excluded;
    if (o.value) offer(*o.value, o.witness);
  }
};

// Scores one candidate against one or two evaluators.
class Scorer {
 public:
  Scorer(const Evaluator& a, const Evaluator* b) : a_(a), b_(b) {}

  void score(const Divisor& D, Best& best) const {
    ++best.candidates;
    const size_t ha = a_.h0_minus(D);
    const int ra = static_cast<int>(ha) - static_cast<int>(a_.h0()) + D.degree();
    if (!b_) {
      if (ra <= 0) return;
      if (ha < 2) {
        ++best.excluded;
        return;
      }
      ++best.eligible;
      best.offer(D.degree() - 2 * ra, D);
      return;
    }
    const size_t hb = b_->h0_minus(D);
    const int rb = static_cast<int>(hb) - static_cast<int>(b_->h0()) + D.degree();
    if (ra <= 0 && rb <= 0) return;
    if (ha < 2 || hb < 2) {
      ++best.excluded;
      return;
    }
    ++best.eligible;
    best.offer(D.degree() - ra - rb, D);
  }

 private:
  const Evaluator& a_;
  const Evaluator* b_;
};

Divisor from_indices(const std::vector<Place>& places, const std::vector<size_t>& idx) {
  Divisor D;
  for (size_t i : idx) D.add(places[i], 1);
  return D;
}

Best exhaustive(const std::vector<Place>& places, int dmax, const Scorer& scorer, unsigned threads) {
  std::vector<Best> parts(places.size());
  // One task per leading place; multisets are non-decreasing index lists.
  parallel_for(places.size(), threads, [&](size_t first) {
    Best& best = parts[first];
    for (int d = 1; d <= dmax; ++d) {
      std::vector<size_t> idx(static_cast<size_t>(d), first);
      for (;;) {
        scorer.score(from_indices(places, idx), best);
        // Advance positions 1..d-1 as a non-decreasing sequence >= first.
        int pos = d - 1;
        while (pos >= 1 && idx[pos] + 1 >= places.size()) --pos;
        if (pos < 1) break;
        ++idx[pos];
        for (int j = pos + 1; j < d; ++j) idx[j] = idx[pos];
      }
    }
  });
  Best total;
  for (const auto& b : parts) total.merge(b);
  return total;
}

std::vector<Divisor> structured_candidates(const Curve& C, const LineBundle& L, int dmax, Rng& rng) {
  std::vector<Divisor> out;
  const uint32_t p = C.p();
  const int n = static_cast<int>(C.n());
  std::vector<Divisor> fibers;
  for (uint32_t x = 0; x < p && fibers.size() < 8; ++x) {
    const auto over = C.places_over(Fp::raw(x, p));
    if (over.size() == C.n()) fibers.push_back(Divisor::sum_of(over));
    if (over.size() == 1 && over[0].kind == curve::PlaceKind::Branch) fibers.push_back(Divisor::point(over[0], n));
  }
  for (const auto& P : C.infinite_places())
    if (C.infinity_kind() == curve::InfinityKind::TotallyRamified) fibers.push_back(Divisor::point(P, n));
  if (C.infinity_kind() == curve::InfinityKind::Split) fibers.push_back(Divisor::sum_of(C.infinite_places()));
  for (const auto& F : fibers) {
    for (int k = 1; k * n <= dmax; ++k) out.push_back(F * k);
    // Fiber plus extra points, and partial fibers.
    for (int extra = 1; n + extra <= dmax; ++extra)
      for (int rep = 0; rep < 4; ++rep) {
        Divisor D = F;
        for (int i = 0; i < extra; ++i) D.add(C.sample_place(rng), 1);
        out.push_back(D);
      }
  }
  const Divisor residual = L.representative - C.canonical_divisor();
  if (residual.is_effective() && !residual.is_zero() && residual.degree() <= dmax) out.push_back(residual);
  return out;
}

CliffResult run_search(const Curve& C, const LineBundle& L1, const LineBundle* L2, const SearchOptions& opt) {
  CliffResult res;
  const bool canonical = !L2 && is_canonical(C, L1);
  if (opt.require_very_ample && !canonical) {
    bool ok = very_ample(C, L1, opt.seed).value;
    if (ok && L2) ok = very_ample(C, *L2, opt.seed).value;
    res.very_ample = ok;
    if (!ok) throw PreconditionError("line bundle is not very ample");
  }
  int dmax = opt.budget_deg;
  if (canonical) dmax = std::min(dmax, C.genus() - 1);
  res.degree_bound = dmax;
  if (dmax < 1) return res;

  Evaluator ea(C, L1);
  std::unique_ptr<Evaluator> eb;
  if (L2) eb = std::make_unique<Evaluator>(C, *L2);
  const Scorer scorer(ea, eb.get());

  const double count = multiset_count(C.p() + 1 + C.n(), dmax);  // cheap upper estimate
  Best best;
  if (count <= static_cast<double>(opt.exhaustive_cap)) {
    const auto places = C.rational_places();
    if (multiset_count(places.size(), dmax) <= static_cast<double>(opt.exhaustive_cap)) {
      ea.prepare(places, dmax);
      if (eb) eb->prepare(places, dmax);
      best = exhaustive(places, dmax, scorer, opt.threads);
      res.certified = true;
    }
  }
  if (!res.certified) {
    Rng rng(Rng::derive(opt.seed, 0xc1f));
    auto cands = structured_candidates(C, L1, dmax, rng);
    if (L2) {
      const Divisor r2 = L2->representative - C.canonical_divisor();
      if (r2.is_effective() && !r2.is_zero() && r2.degree() <= dmax) cands.push_back(r2);
    }
    for (size_t s = 0; s < opt.random_samples; ++s) {
      const int d = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(dmax)));
      Divisor D;
      for (int i = 0; i < d; ++i) D.add(C.sample_place(rng), 1);
      cands.push_back(D);
    }
    std::vector<Best> parts(cands.size());
    parallel_for(cands.size(), opt.threads, [&](size_t i) { scorer.score(cands[i], parts[i]); });
    for (const auto& b : parts) best.merge(b);
  }
  res.value = best.value;
  res.witness = best.witness;
  res.candidates = best.candidates;
  res.eligible = best.eligible;
  res.excluded_by_codim = best.excluded;
  return res;
}

}  // namespace

CliffResult cliff_bundle(const Curve& C, const LineBundle& L, const SearchOptions& opt) {
  return run_search(C, L, nullptr, opt);
}

CliffResult cliff_two_bundle_min(const Curve& C, const LineBundle& L1, const LineBundle& L2,
                                 const SearchOptions& opt) {
  return run_search(C, L1, &L2, opt);
}

}  // namespace cliff::linser
