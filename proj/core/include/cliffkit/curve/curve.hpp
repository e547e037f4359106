#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cliffkit/curve/divisor.hpp"
#include "cliffkit/curve/poly.hpp"
#include "cliffkit/curve/series.hpp"
#include "cliffkit/util/rng.hpp"

namespace cliff::curve {

enum class InfinityKind { TotallyRamified, Split };

// h = (sum_b P_b(x) y^b) / Q(x), b = 0..n-1.
class Function {
 public:
  Function() = default;
  Function(std::vector<Poly> numerator, Poly denominator);

  const std::vector<Poly>& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  size_t n() const { return num_.size(); }
  uint32_t modulus() const { return den_.modulus(); }
  bool is_zero() const;
  int max_numerator_degree() const;

  Function operator+(const Function& o) const;
  Function operator-(const Function& o) const;
  Function operator*(Fp s) const;

 private:
  std::vector<Poly> num_;
  Poly den_;
};

// 2g - 2 = n (2 g0 - 2) + sum (e - 1).  Throws on odd parity.
int hurwitz_genus(int n, const std::vector<int>& ramification, int base_genus = 0);

// The superelliptic model y^n = f(x) over F_p.
class Curve {
 public:
  static Curve create(unsigned n, const Poly& f);
  static Curve create(unsigned n, const std::vector<int64_t>& f, uint32_t p);

  uint32_t p() const { return p_; }
  unsigned n() const { return n_; }
  int m() const { return f_.degree(); }
  const Poly& f() const { return f_; }
  int genus() const { return genus_; }
  InfinityKind infinity_kind() const { return kind_; }
  unsigned num_infinite_places() const { return kind_ == InfinityKind::Split ? n_ : 1; }
  Fp fp(int64_t v) const { return Fp(v, p_); }
  Fp zeta() const { return zeta_; }

  unsigned ramification_index(const Place& P) const;
  bool on_curve(const Place& P) const;
  void require_place(const Place& P) const;

  std::vector<Place> infinite_places() const;
  // The n places over a non-branch x0.  Throws PreconditionError at a branch
  // value and NoRootInField when the fiber has no rational point.
  std::vector<Place> fiber(Fp x0) const;
  // All rational places over x0 (one Branch place, n Finite places, or none).
  std::vector<Place> places_over(Fp x0) const;
  Divisor fiber_divisor(Fp x0) const { return Divisor::sum_of(fiber(x0)); }
  Place sample_place(Rng& rng) const;
  Place sample_place(uint64_t seed) const;
  std::vector<Place> rational_places() const;
  // div(dx / y^{n-1}); supported at infinity.
  Divisor canonical_divisor() const;

  Function one() const { return constant(Fp::raw(1, p_)); }
  Function constant(Fp c) const;
  Function x() const;
  Function y() const;
  Function from_poly(const Poly& px) const;
  Function multiply(const Function& a, const Function& b) const;
  bool equal(const Function& a, const Function& b) const;

  // Laurent expansion in the canonical parameter at P with `order` terms
  // past the leading one.
  LaurentSeries expand(const Function& h, const Place& P, int order) const;
  std::optional<int> valuation(const Function& h, const Place& P) const;
  // Value at a place where h is regular.
  Fp evaluate(const Function& h, const Place& P) const;

  // x and y as series in the local parameter at P, known at least modulo
  // t^precision.
  std::pair<LaurentSeries, LaurentSeries> local_xy(const Place& P, int precision) const;
  int x_valuation(const Place& P) const;
  int y_valuation(const Place& P) const;
  // Numerator sum_b P_b(x) y^b of h expanded to absolute precision >= prec.
  LaurentSeries numerator_series(const std::vector<Poly>& num, const Place& P, int prec) const;

 private:
  Curve() = default;
  uint32_t p_ = 0;
  unsigned n_ = 0;
  Poly f_;
  int genus_ = 0;
  InfinityKind kind_ = InfinityKind::TotallyRamified;
  Fp zeta_;
  Fp lead_root_;
};

}  // namespace cliff::curve
