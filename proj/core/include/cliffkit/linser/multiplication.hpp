#pragma once

#include "cliffkit/linser/bundle.hpp"

namespace cliff::linser {

// Structure constants of H^0(L1) x H^0(L2) -> H^0(L1 L2):
// e_a f_b = sum_c mu(a, b)[c] g_c.
struct MultiplicationTensor {
  RRBasis b1, b2, b12;
  std::vector<std::vector<Fp>> mu;  // index a * dim2 + b
  size_t rank = 0;

  size_t dim1() const { return b1.dim(); }
  size_t dim2() const { return b2.dim(); }
  size_t dim12() const { return b12.dim(); }
  const std::vector<Fp>& product(size_t a, size_t b) const { return mu.at(a * dim2() + b); }
  bool surjective() const { return rank == dim12(); }
  size_t corank() const { return dim12() - rank; }
  // (dim1 * dim2) x dim12.
  la::Matrix<Fp> flattened() const;
  // The matrix (xi(e_a f_b))_{a,b} for a functional xi on H^0(L1 L2)
  // given in the dual of the b12 coordinates.
  la::Matrix<Fp> contract(const std::vector<Fp>& xi) const;
};

MultiplicationTensor mult_map(const Curve& C, const LineBundle& L1, const LineBundle& L2);
MultiplicationTensor mult_map(const Curve& C, const RRBasis& b1, const RRBasis& b2);

}  // namespace cliff::linser
