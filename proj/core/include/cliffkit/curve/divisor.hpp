#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cliff::curve {

enum class PlaceKind : uint8_t { Finite = 0, Branch = 1, Infinity = 2 };

// A rational place of y^n = f(x).  Coordinates are residues stored as raw
// values; the owning curve fixes the modulus.
struct Place {
  PlaceKind kind = PlaceKind::Finite;
  uint32_t x = 0;      // x0 for Finite and Branch
  uint32_t y = 0;      // y0 for Finite
  uint32_t index = 0;  // Infinity index

  static Place finite(uint32_t x0, uint32_t y0) { return {PlaceKind::Finite, x0, y0, 0}; }
  static Place branch(uint32_t x0) { return {PlaceKind::Branch, x0, 0, 0}; }
  static Place infinity(uint32_t i) { return {PlaceKind::Infinity, 0, 0, i}; }

  bool is_finite() const { return kind == PlaceKind::Finite; }
  bool is_affine() const { return kind != PlaceKind::Infinity; }

  auto operator<=>(const Place&) const = default;
  std::string str() const;
};

// Finite formal sum of places with nonzero integer coefficients.
class Divisor {
 public:
  Divisor() = default;
  static Divisor point(const Place& p, int mult = 1);
  static Divisor sum_of(const std::vector<Place>& places, int mult = 1);

  int coefficient(const Place& p) const;
  void add(const Place& p, int mult);

  int degree() const;
  bool is_effective() const;
  bool is_zero() const { return c_.empty(); }
  std::vector<Place> support() const;
  const std::map<Place, int>& terms() const { return c_; }

  Divisor positive_part() const;
  Divisor negative_part() const;  // returned with positive coefficients
  bool disjoint_from(const Divisor& o) const;

  Divisor operator+(const Divisor& o) const;
  Divisor operator-(const Divisor& o) const;
  Divisor operator*(int k) const;
  Divisor operator-() const { return *this * -1; }

  friend bool operator==(const Divisor& a, const Divisor& b) { return a.c_ == b.c_; }
  friend bool operator<(const Divisor& a, const Divisor& b) { return a.c_ < b.c_; }

  std::string str() const;

 private:
  std::map<Place, int> c_;
};

}  // namespace cliff::curve
