#pragma once

#include <optional>
#include <string>

#include "cliffkit/linser/bundle.hpp"
#include "cliffkit/linser/multiplication.hpp"

namespace cliff::linser {

struct CheckResult {
  bool value = false;
  bool certified = false;  // every rational place (or pair) was tested
  size_t tested = 0;
  std::string detail;
};

// h0(L - P) = h0(L) - 1 at every tested place.
CheckResult base_point_free(const Curve& C, const LineBundle& L, uint64_t seed = 1, size_t samples = 64);
// h0(L - P - Q) = h0(L) - 2 for every tested pair, P = Q included.
CheckResult very_ample(const Curve& C, const LineBundle& L, uint64_t seed = 1, size_t samples = 24);

struct PetriResult {
  // H^0(D) x H^0(K - D) -> H^0(K)
  size_t petri_rank = 0, petri_target = 0;
  // H^0(D) x H^0(D) -> H^0(2D)
  size_t square_rank = 0, square_target = 0;
  bool petri_surjective() const { return petri_rank == petri_target; }
  bool square_surjective() const { return square_rank == square_target; }
  bool agree() const { return petri_surjective() == square_surjective(); }
};

// Both sides of the equivalence, computed independently.  Throws
// PreconditionError when D is not base point free.
PetriResult petri_check(const Curve& C, const Divisor& D, uint64_t seed = 1);

struct PlaneSearchResult {
  std::optional<Divisor> witness;
  int r = 0;            // r_L(witness)
  size_t candidates = 0;
};

// Degree-d divisor with r_L(D) >= 1 for deg L = 2g - 2 and 2d >= h0(L) + 1.
// Absence within the budget is "not found", never "nonexistent".
PlaneSearchResult d_pointed_plane_search(const Curve& C, const LineBundle& L, int d, uint64_t seed = 1,
                                         size_t samples = 2000);

// Rational places used for exhaustive checks when the field is small.
bool places_enumerable(const Curve& C);

}  // namespace cliff::linser
