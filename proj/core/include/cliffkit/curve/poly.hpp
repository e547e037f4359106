#pragma once

#include <cstdint>
#include <vector>

#include "cliffkit/exactla/field.hpp"

namespace cliff::curve {

using la::Fp;

// Dense univariate polynomial over F_p, coefficients low to high, no
// trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(uint32_t p) : p_(p) {}
  Poly(std::vector<Fp> coeffs, uint32_t p);

  static Poly from_ints(const std::vector<int64_t>& coeffs, uint32_t p);
  static Poly constant(Fp c);
  static Poly monomial(Fp c, size_t k);
  static Poly x_minus(Fp a);  // x - a

  uint32_t modulus() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Fp coeff(size_t i) const { return i < c_.size() ? c_[i] : Fp::raw(0, p_); }
  Fp lead() const { return c_.empty() ? Fp::raw(0, p_) : c_.back(); }
  const std::vector<Fp>& coeffs() const { return c_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(Fp s) const;
  Poly operator/(const Poly& o) const;
  Poly operator%(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  static Poly gcd(Poly a, Poly b);  // monic, or zero

  Fp eval(Fp x) const;
  Poly derivative() const;
  Poly monic() const;
  Poly pow(unsigned e) const;
  Poly powmod(uint64_t e, const Poly& mod) const;
  Poly taylor_shift(Fp a) const;  // f(x + a)
  bool is_squarefree() const;

  // Multiplicity of the root a (0 when f(a) != 0).
  int root_multiplicity(Fp a) const;

  // Distinct roots in F_p, ascending by representative.
  std::vector<Fp> roots() const;

 private:
  void trim();
  uint32_t p_ = 0;
  std::vector<Fp> c_;
};

// All n-th roots of a in F_p, ascending.  Empty when a is not an n-th power.
std::vector<Fp> nth_roots(Fp a, unsigned n);

// A generator of F_p^*.
Fp primitive_root(uint32_t p);

}  // namespace cliff::curve
