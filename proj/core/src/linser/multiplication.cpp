#include "cliffkit/linser/multiplication.hpp"

#include "cliffkit/exactla/linalg.hpp"

namespace cliff::linser {

la::Matrix<Fp> MultiplicationTensor::flattened() const {
  const uint32_t p = b12.denominator.modulus();
  la::Matrix<Fp> M(mu.size(), dim12(), p);
  for (size_t i = 0; i < mu.size(); ++i)
    for (size_t c = 0; c < dim12(); ++c) M(i, c) = mu[i][c];
  return M;
}

la::Matrix<Fp> MultiplicationTensor::contract(const std::vector<Fp>& xi) const {
  if (xi.size() != dim12()) throw PreconditionError("functional has the wrong dimension");
  const uint32_t p = b12.denominator.modulus();
  la::Matrix<Fp> M(dim1(), dim2(), p);
  for (size_t a = 0; a < dim1(); ++a)
    for (size_t b = 0; b < dim2(); ++b) {
      Fp s = Fp::raw(0, p);
      const auto& v = product(a, b);
      for (size_t c = 0; c < v.size(); ++c) s += v[c] * xi[c];
      M(a, b) = s;
    }
  return M;
}

MultiplicationTensor mult_map(const Curve& C, const LineBundle& L1, const LineBundle& L2) {
  const auto b1 = curve::riemann_roch_space(C, L1.representative);
  if (L1 == L2) return mult_map(C, b1, b1);
  return mult_map(C, b1, curve::riemann_roch_space(C, L2.representative));
}

MultiplicationTensor mult_map(const Curve& C, const RRBasis& b1, const RRBasis& b2) {
  MultiplicationTensor T;
  T.b1 = b1;
  T.b2 = b2;
  T.b12 = curve::riemann_roch_space(C, b1.divisor + b2.divisor);
  std::vector<Function> prods;
  prods.reserve(b1.dim() * b2.dim());
  for (const auto& e : b1.basis)
    for (const auto& f : b2.basis) prods.push_back(C.multiply(e, f));
  auto coords = curve::coordinates(C, T.b12, prods);
  for (auto& c : coords) {
    if (!c) throw InternalError("product of sections is not in H^0(L1 L2)");
    T.mu.push_back(std::move(*c));
  }
  T.rank = T.mu.empty() || T.dim12() == 0 ? 0 : la::rank(T.flattened());
  return T;
}

}  // namespace cliff::linser
