#include <algorithm>

#include "cliffkit/exactla/linalg.hpp"
#include "cliffkit/linser/bundle.hpp"

namespace cliff::linser {

Evaluator::Evaluator(const Curve& C, LineBundle L)
    : C_(&C), L_(std::move(L)), basis_(curve::riemann_roch_space(C, L_.representative)) {}

Evaluator::Evaluator(const Curve& C, RRBasis B)
    : C_(&C), L_(LineBundle::of(B.divisor)), basis_(std::move(B)) {}

la::Matrix<Fp> Evaluator::local_block(const Place& P, int mult) const {
  if (mult <= 0) return la::Matrix<Fp>(h0(), 0, C_->p());
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(P);
    if (it != cache_.end() && static_cast<int>(it->second.cols()) >= mult) {
      std::vector<size_t> rows(h0()), cols(static_cast<size_t>(mult));
      for (size_t i = 0; i < rows.size(); ++i) rows[i] = i;
      for (size_t j = 0; j < cols.size(); ++j) cols[j] = j;
      return it->second.submatrix(rows, cols);
    }
  }
  const int lo = -L_.representative.coefficient(P);
  auto block = curve::local_coefficients(*C_, basis_, P, lo, lo + mult);
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = cache_[P];
  if (slot.cols() < block.cols()) slot = block;
  return block;
}

void Evaluator::prepare(const std::vector<Place>& places, int mult) const {
  for (const auto& P : places) local_block(P, mult);
}

size_t Evaluator::h0_minus(const Divisor& D) const {
  if (!D.is_effective()) throw PreconditionError("h0_minus needs an effective divisor");
  const size_t N = h0();
  if (N == 0) return 0;
  size_t total = 0;
  for (const auto& [P, k] : D.terms()) total += static_cast<size_t>(k);
  if (total == 0) return N;
  la::Matrix<Fp> M(N, total, C_->p());
  size_t col = 0;
  for (const auto& [P, k] : D.terms()) {
    const auto B = local_block(P, k);
    for (size_t j = 0; j < B.cols(); ++j, ++col)
      for (size_t i = 0; i < N; ++i) M(i, col) = B(i, j);
  }
  return N - la::rank(M);
}

int Evaluator::r(const Divisor& D) const {
  return static_cast<int>(h0_minus(D)) - static_cast<int>(h0()) + D.degree();
}

std::vector<Fp> Evaluator::evaluation_vector(const Place& P, bool allow_overlap) const {
  if (!allow_overlap && L_.representative.coefficient(P) != 0)
    throw SupportCollision("evaluation at " + P.str() + " inside the support of the representative");
  if (P.is_finite() && L_.representative.coefficient(P) == 0 &&
      !basis_.denominator.eval(Fp::raw(P.x, C_->p())).is_zero()) {
    std::vector<Fp> v;
    v.reserve(h0());
    for (const auto& h : basis_.basis) v.push_back(C_->evaluate(h, P));
    return v;
  }
  const auto B = local_block(P, 1);
  std::vector<Fp> v(h0());
  for (size_t i = 0; i < v.size(); ++i) v[i] = B(i, 0);
  return v;
}

}  // namespace cliff::linser
