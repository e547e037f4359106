#pragma once

#include <cstdint>
#include <vector>

#include "cliffkit/exactla/matrix.hpp"

namespace cliff::la {

// Echelon span over F_p on raw residues.  For p < 2^16 row updates are
// accumulated in 64 bits and reduced lazily, which is the hot loop of the
// Monte-Carlo ideal and Koszul rank computations.
class PrimeSpan {
 public:
  PrimeSpan(size_t length, uint32_t p);

  size_t length() const { return length_; }
  size_t dim() const { return pivots_.size(); }
  uint32_t modulus() const { return p_; }

  // Reduces v in place; returns true when it was independent (and added).
  bool add(std::vector<uint32_t> v);
  bool add(const std::vector<Fp>& v);
  bool contains(std::vector<uint32_t> v) const;
  bool contains(const std::vector<Fp>& v) const;

  std::vector<std::vector<Fp>> basis() const;
  // Vectors orthogonal to the span under the plain dot product.
  std::vector<std::vector<Fp>> annihilator() const;

 private:
  // Returns the pivot of the reduced residual, or length_ when zero.
  size_t reduce(std::vector<uint32_t>& v) const;

  size_t length_;
  uint32_t p_;
  std::vector<std::vector<uint32_t>> rows_;  // unit pivot, sorted insertion
  std::vector<size_t> pivots_;
};

std::vector<uint32_t> raw_values(const std::vector<Fp>& v);

// Rank over F_p by elimination on raw residues.
size_t prime_rank(const Matrix<Fp>& m);

}  // namespace cliff::la
