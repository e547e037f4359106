#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cliffkit/curve/curve.hpp"
#include "cliffkit/exactla/matrix.hpp"

namespace cliff::curve {

// Basis of H^0(O(D)) = { h : div(h) + D >= 0 }.  Every element is G/Q with
// the shared denominator Q.
struct RRBasis {
  Divisor divisor;
  std::vector<Function> basis;
  Poly denominator;
  size_t dim() const { return basis.size(); }
};

RRBasis riemann_roch_space(const Curve& C, const Divisor& D);
size_t h0(const Curve& C, const Divisor& D);

// Checks div(h) + D >= 0 for every basis element by expansion.  On failure
// fills `why` when given.
bool verify_basis(const Curve& C, const RRBasis& B, std::string* why = nullptr);

Function linear_combination(const Curve& C, const std::vector<Function>& fs, const std::vector<Fp>& coeffs);

// Coordinates of h in the basis, or nullopt when h is not in the span.
std::optional<std::vector<Fp>> coordinates(const Curve& C, const RRBasis& B, const Function& h);
// Same for many functions with one elimination.
std::vector<std::optional<std::vector<Fp>>> coordinates(const Curve& C, const RRBasis& B,
                                                        const std::vector<Function>& hs);

// Row i holds the coefficients of t^lo .. t^{hi-1} of basis element i at P.
la::Matrix<Fp> local_coefficients(const Curve& C, const RRBasis& B, const Place& P, int lo, int hi);

}  // namespace cliff::curve
