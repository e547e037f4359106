#pragma once

#include <optional>
#include <vector>

#include "cliffkit/exactla/field.hpp"

namespace cliff::curve {

using la::Fp;

// Truncated Laurent series sum_{k} c_k t^{start+k}.  A truncated series is
// known modulo t^{precision()}; an exact one has implicit zeros past its
// stored coefficients (used for x = x0 + t, x = t^{-n}, y = t).
class LaurentSeries {
 public:
  static constexpr int kExactPrecision = 1 << 28;

  LaurentSeries() = default;
  static LaurentSeries truncated(int start, std::vector<Fp> coeffs, uint32_t p);
  static LaurentSeries exact(int start, std::vector<Fp> coeffs, uint32_t p);
  static LaurentSeries zero_to(int precision, uint32_t p);

  uint32_t modulus() const { return p_; }
  bool is_exact() const { return exact_; }
  int start() const { return start_; }
  int precision() const { return exact_ ? kExactPrecision : start_ + static_cast<int>(c_.size()); }
  const std::vector<Fp>& coeffs() const { return c_; }

  Fp coeff(int e) const;
  std::optional<int> valuation() const;
  Fp leading_coefficient() const;
  bool is_zero_to_precision() const { return !valuation().has_value(); }
  // Number of known coefficients from the valuation on.
  int known_terms() const;

  LaurentSeries normalized() const;
  LaurentSeries truncate(int precision) const;

  LaurentSeries operator+(const LaurentSeries& o) const;
  LaurentSeries operator-(const LaurentSeries& o) const;
  LaurentSeries operator*(const LaurentSeries& o) const;
  LaurentSeries operator*(Fp s) const;
  LaurentSeries inverse(int rel_terms) const;
  LaurentSeries pow(unsigned e) const;

 private:
  uint32_t p_ = 0;
  int start_ = 0;
  bool exact_ = false;
  std::vector<Fp> c_;
};

// w with w^n = u and w_0 = 1, for a power series u with u_0 = 1; first
// `terms` coefficients.
std::vector<Fp> unit_series_root(const std::vector<Fp>& u, unsigned n, size_t terms);

// Compositional inverse R of F(s) = a_1 s + a_2 s^2 + ... (a_1 != 0), i.e.
// F(R(s)) = s, coefficients of s^0..s^{terms-1}.
std::vector<Fp> series_reversion(const std::vector<Fp>& a, size_t terms);

}  // namespace cliff::curve
