#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "cliffkit/curve/riemann_roch.hpp"

namespace cliff::linser {

using curve::Curve;
using curve::Divisor;
using curve::Fp;
using curve::Function;
using curve::Place;
using curve::RRBasis;

// A line bundle as O(R) for a chosen representative divisor R.  Tensor
// products and duals are divisor arithmetic on representatives.
struct LineBundle {
  Divisor representative;

  static LineBundle of(Divisor D) { return {std::move(D)}; }
  static LineBundle canonical(const Curve& C) { return {C.canonical_divisor()}; }
  int degree() const { return representative.degree(); }

  LineBundle tensor(const LineBundle& o) const { return {representative + o.representative}; }
  LineBundle dual() const { return {-representative}; }
  LineBundle power(int k) const { return {representative * k}; }
  LineBundle twist(const Divisor& D) const { return {representative + D}; }  // L(D)
  friend bool operator==(const LineBundle&, const LineBundle&) = default;
};

size_t h0(const Curve& C, const LineBundle& L);
size_t h1(const Curve& C, const LineBundle& L);
// L isomorphic to M, decided exactly from h0(L - M) and degrees.
bool isomorphic(const Curve& C, const LineBundle& L, const LineBundle& M);
bool is_canonical(const Curve& C, const LineBundle& L);

// Evaluates h0(L(-D)) for many effective D against one basis of H^0(L):
// h0(L(-D)) = h0(L) - rank of the stacked local conditions at supp D.
// Local blocks are cached per place; the cache is safe for concurrent use.
class Evaluator {
 public:
  Evaluator(const Curve& C, LineBundle L);
  // Reuses an existing basis of H^0(O(B.divisor)).
  Evaluator(const Curve& C, RRBasis B);

  const Curve& curve() const { return *C_; }
  const LineBundle& bundle() const { return L_; }
  const RRBasis& basis() const { return basis_; }
  size_t h0() const { return basis_.dim(); }

  size_t h0_minus(const Divisor& D) const;
  // r_L(D) = h0(L(-D)) - h0(L) + deg D.
  int r(const Divisor& D) const;
  // Number of independent conditions D imposes on H^0(L).
  size_t conditions(const Divisor& D) const { return h0() - h0_minus(D); }

  // Coefficients of t^{-R_P} .. t^{-R_P + mult - 1} of every basis section
  // at P (h0 x mult).
  la::Matrix<Fp> local_block(const Place& P, int mult) const;
  // Values of the basis at P in the frame t^{R_P}.  Places inside supp R
  // raise SupportCollision unless allow_overlap is set.
  std::vector<Fp> evaluation_vector(const Place& P, bool allow_overlap = false) const;
  void prepare(const std::vector<Place>& places, int mult) const;

 private:
  const Curve* C_;
  LineBundle L_;
  RRBasis basis_;
  mutable std::mutex mu_;
  mutable std::map<Place, la::Matrix<Fp>> cache_;
};

}  // namespace cliff::linser
