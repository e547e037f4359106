#pragma once

#include <cstdint>
#include <ostream>
#include <gmpxx.h>

#include "cliffkit/util/errors.hpp"

namespace cliff::la {

// Residue modulo a prime p < 2^31.  The modulus travels with the value so
// that mixing characteristics is caught at the operation that does it.
class Fp {
 public:
  Fp() = default;
  Fp(int64_t v, uint32_t p) : p_(p) {
    if (p == 0) throw PreconditionError("Fp with modulus 0");
    int64_t r = v % static_cast<int64_t>(p);
    if (r < 0) r += p;
    v_ = static_cast<uint32_t>(r);
  }

  static Fp raw(uint32_t v, uint32_t p) {
    Fp out;
    out.v_ = v;
    out.p_ = p;
    return out;
  }

  uint32_t value() const { return v_; }
  uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  // Symmetric representative in (-p/2, p/2], handy for printing.
  int64_t signed_value() const {
    return v_ > p_ / 2 ? static_cast<int64_t>(v_) - p_ : static_cast<int64_t>(v_);
  }

  Fp operator+(Fp o) const {
    check(o);
    uint32_t s = v_ + o.v_;
    if (s >= p_) s -= p_;
    return raw(s, p_);
  }
  Fp operator-(Fp o) const {
    check(o);
    return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_, p_);
  }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
  Fp operator*(Fp o) const {
    check(o);
    return raw(static_cast<uint32_t>(static_cast<uint64_t>(v_) * o.v_ % p_), p_);
  }
  Fp operator/(Fp o) const { return *this * o.inverse(); }

  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  Fp& operator/=(Fp o) { return *this = *this / o; }

  Fp inverse() const {
    if (v_ == 0) throw PreconditionError("division by zero in F_p");
    int64_t a = v_, b = p_, x0 = 1, x1 = 0;
    while (b != 0) {
      int64_t q = a / b;
      int64_t t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    return Fp(x0, p_);
  }

  Fp pow(uint64_t e) const {
    Fp base = *this, acc = raw(1 % p_, p_);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_ && a.p_ == b.p_; }
  friend bool operator!=(Fp a, Fp b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }

 private:
  void check(Fp o) const {
    if (p_ != o.p_) throw CharacteristicMismatch();
  }
  uint32_t v_ = 0;
  uint32_t p_ = 0;
};

using Rational = mpq_class;

// Uniform access used by the templated algorithms.  The "characteristic"
// doubles as the tag a matrix carries: 0 for Q, p for F_p.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Fp> {
  static Fp zero(uint32_t ch) { return Fp::raw(0, ch); }
  static Fp one(uint32_t ch) { return Fp::raw(1, ch); }
  static bool is_zero(const Fp& a) { return a.is_zero(); }
  static uint32_t characteristic(const Fp& a) { return a.modulus(); }
  static Fp inverse(const Fp& a) { return a.inverse(); }
  static void require_tag(uint32_t ch) {
    if (ch == 0) throw CharacteristicMismatch();
  }
};

template <>
struct FieldTraits<Rational> {
  static Rational zero(uint32_t) { return Rational(0); }
  static Rational one(uint32_t) { return Rational(1); }
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static uint32_t characteristic(const Rational&) { return 0; }
  static Rational inverse(const Rational& a) {
    if (sgn(a) == 0) throw PreconditionError("division by zero in Q");
    return Rational(1) / a;
  }
  static void require_tag(uint32_t ch) {
    if (ch != 0) throw CharacteristicMismatch();
  }
};

bool is_prime(uint64_t n);

}  // namespace cliff::la
