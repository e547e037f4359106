#pragma once

#include <optional>
#include <string>

#include "cliffkit/linser/bundle.hpp"

namespace cliff::linser {

// r_L(D) = h0(L(-D)) - h0(L) + deg D for effective D.
int r_L(const Curve& C, const LineBundle& L, const Divisor& D);
int cliff_pair(const Curve& C, const LineBundle& L, const Divisor& D);
// deg L - 2 (h0(L) - 1).
int cliff_of(const Curve& C, const LineBundle& L);
int cliff_two_bundle(const Curve& C, const LineBundle& L1, const LineBundle& L2, const Divisor& D);

struct SearchOptions {
  int budget_deg = 4;
  // Exhaustive enumeration runs when the candidate count is at most this.
  size_t exhaustive_cap = 1000000;
  size_t random_samples = 4000;
  uint64_t seed = 1;
  unsigned threads = 1;
  bool require_very_ample = true;
};

struct CliffResult {
  std::optional<int> value;
  Divisor witness;
  bool certified = false;
  int degree_bound = 0;
  size_t candidates = 0;
  size_t eligible = 0;
  // r_L(D) > 0 but h0(L(-D)) < 2: excluded by the codimension filter.
  size_t excluded_by_codim = 0;
  std::optional<bool> very_ample;  // set when the gate ran
  std::string mode() const { return certified ? "exhaustive" : "sampled"; }
};

// min cliff(L, D) over effective D with r_L(D) > 0 and h0(L(-D)) >= 2.
// Throws PreconditionError when the very-ample gate is on and fails.
CliffResult cliff_bundle(const Curve& C, const LineBundle& L, const SearchOptions& opt);
// Two-bundle version: r1 > 0 or r2 > 0, codimension filter on both.
CliffResult cliff_two_bundle_min(const Curve& C, const LineBundle& L1, const LineBundle& L2,
                                 const SearchOptions& opt);

// Number of effective divisors of degree 1..dmax on `places` points.
double multiset_count(size_t places, int dmax);

}  // namespace cliff::linser
