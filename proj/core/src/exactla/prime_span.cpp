#include "cliffkit/exactla/prime_span.hpp"

#include "cliffkit/exactla/linalg.hpp"

namespace cliff::la {

namespace {

uint32_t inv_mod(uint32_t a, uint32_t p) { return Fp::raw(a, p).inverse().value(); }

}  // namespace

PrimeSpan::PrimeSpan(size_t length, uint32_t p) : length_(length), p_(p) {
  if (p == 0) throw CharacteristicMismatch();
}

std::vector<uint32_t> raw_values(const std::vector<Fp>& v) {
  std::vector<uint32_t> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].value();
  return out;
}

size_t PrimeSpan::reduce(std::vector<uint32_t>& v) const {
  if (v.size() != length_) throw PreconditionError("span: vector length mismatch");
  const uint64_t p = p_;
  if (p < (1u << 16)) {
    // Each update adds less than 2^32, so 2^32 updates fit in 64 bits.
    std::vector<uint64_t> acc(v.begin(), v.end());
    for (size_t k = 0; k < rows_.size(); ++k) {
      const size_t piv = pivots_[k];
      const uint64_t c = acc[piv] % p;
      if (!c) continue;
      const uint64_t m = p - c;
      const auto& r = rows_[k];
      for (size_t j = piv; j < length_; ++j) acc[j] += m * r[j];
    }
    size_t first = length_;
    for (size_t j = 0; j < length_; ++j) {
      v[j] = static_cast<uint32_t>(acc[j] % p);
      if (v[j] && first == length_) first = j;
    }
    return first;
  }
  for (size_t k = 0; k < rows_.size(); ++k) {
    const size_t piv = pivots_[k];
    const uint64_t c = v[piv];
    if (!c) continue;
    const uint64_t m = p - c;
    const auto& r = rows_[k];
    for (size_t j = piv; j < length_; ++j)
      if (r[j]) v[j] = static_cast<uint32_t>((v[j] + m * r[j]) % p);
  }
  for (size_t j = 0; j < length_; ++j)
    if (v[j]) return j;
  return length_;
}

bool PrimeSpan::add(std::vector<uint32_t> v) {
  const size_t piv = reduce(v);
  if (piv == length_) return false;
  const uint64_t inv = inv_mod(v[piv], p_);
  for (size_t j = piv; j < length_; ++j) v[j] = static_cast<uint32_t>(v[j] * inv % p_);
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

bool PrimeSpan::add(const std::vector<Fp>& v) { return add(raw_values(v)); }

bool PrimeSpan::contains(std::vector<uint32_t> v) const { return reduce(v) == length_; }

bool PrimeSpan::contains(const std::vector<Fp>& v) const { return contains(raw_values(v)); }

std::vector<std::vector<Fp>> PrimeSpan::basis() const {
  std::vector<std::vector<Fp>> out;
  for (const auto& r : rows_) {
    std::vector<Fp> v(length_);
    for (size_t j = 0; j < length_; ++j) v[j] = Fp::raw(r[j], p_);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<Fp>> PrimeSpan::annihilator() const {
  Matrix<Fp> m(rows_.size(), length_, p_);
  for (size_t i = 0; i < rows_.size(); ++i)
    for (size_t j = 0; j < length_; ++j) m(i, j) = Fp::raw(rows_[i][j], p_);
  if (rows_.empty()) {
    std::vector<std::vector<Fp>> out;
    for (size_t j = 0; j < length_; ++j) {
      std::vector<Fp> v(length_, Fp::raw(0, p_));
      v[j] = Fp::raw(1, p_);
      out.push_back(std::move(v));
    }
    return out;
  }
  return kernel_basis(m);
}

size_t prime_rank(const Matrix<Fp>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const uint32_t p = m.characteristic();
  // Eliminate along the shorter side.
  const bool by_rows = m.cols() <= m.rows();
  const size_t len = by_rows ? m.cols() : m.rows();
  const size_t count = by_rows ? m.rows() : m.cols();
  PrimeSpan span(len, p);
  std::vector<uint32_t> v(len);
  for (size_t i = 0; i < count && span.dim() < len; ++i) {
    for (size_t j = 0; j < len; ++j) v[j] = (by_rows ? m(i, j) : m(j, i)).value();
    span.add(v);
  }
  return span.dim();
}

}  // namespace cliff::la
