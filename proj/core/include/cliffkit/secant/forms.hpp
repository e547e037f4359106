#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cliffkit/exactla/field.hpp"

namespace cliff::secant {

using la::Fp;

// Monomials of degree k in N variables, as non-decreasing index lists in
// lexicographic order.  Forms are dense coefficient vectors in this order.
class MonomialBasis {
 public:
  MonomialBasis(size_t vars, unsigned degree);

  size_t vars() const { return vars_; }
  unsigned degree() const { return degree_; }
  size_t size() const { return monos_.size(); }
  const std::vector<uint16_t>& monomial(size_t i) const { return monos_[i]; }
  size_t index(const std::vector<uint16_t>& sorted) const;

  // Value of every monomial at a point.
  std::vector<Fp> evaluate(const std::vector<Fp>& point) const;

 private:
  size_t vars_;
  unsigned degree_;
  std::vector<std::vector<uint16_t>> monos_;
  std::map<std::vector<uint16_t>, size_t> index_;
};

// Tables for multiplying forms of degree k by linear forms, k = 0 .. max.
class FormAlgebra {
 public:
  FormAlgebra(size_t vars, unsigned max_degree, uint32_t p);

  const MonomialBasis& basis(unsigned k) const { return bases_.at(k); }
  uint32_t modulus() const { return p_; }
  // (form of degree k) * (linear form) -> degree k + 1.
  std::vector<Fp> times_linear(const std::vector<Fp>& form, unsigned k, const std::vector<Fp>& lin) const;
  // Product of linear forms, degree = lins.size().
  std::vector<Fp> product(const std::vector<const std::vector<Fp>*>& lins) const;
  Fp evaluate(const std::vector<Fp>& form, unsigned k, const std::vector<Fp>& point) const;
  // Partial derivatives of a degree-k form at a point (gradient).
  std::vector<Fp> gradient(const std::vector<Fp>& form, unsigned k, const std::vector<Fp>& point) const;

 private:
  uint32_t p_;
  std::vector<MonomialBasis> bases_;
  // mul_[k][m * vars + v] = index of monomial m * x_v in degree k + 1.
  std::vector<std::vector<uint32_t>> mul_;
};

}  // namespace cliff::secant
