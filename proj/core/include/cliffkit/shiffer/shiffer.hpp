#pragma once

#include <map>
#include <optional>
#include <string>

#include "cliffkit/linser/bundle.hpp"
#include "cliffkit/linser/multiplication.hpp"

namespace cliff::shiffer {

using linser::Evaluator;
using linser::LineBundle;
using linser::MultiplicationTensor;
using curve::Curve;
using curve::Divisor;
using curve::Fp;
using curve::Place;

// Laurent-tail data on D = sum n_i p_i: beta[i][j] multiplies the t^j
// coefficient (j = 0 .. n_i - 1) of the local product at points[i].
struct ShifferDatum {
  std::vector<Place> points;
  std::vector<std::vector<Fp>> beta;

  Divisor divisor() const;
  int degree() const;
  // Top coefficient nonzero at every point.
  bool in_star() const;
};

ShifferDatum random_star_datum(const Divisor& D, uint32_t p, Rng& rng);
// beta = 1 in the lowest slot of every point (one unit per point).
ShifferDatum unit_datum(const Divisor& D, uint32_t p);

// entry(a, b) = sum_i sum_j beta_ij [t^j](s_a t_b)(p_i), with s, t the bases
// of the two evaluators in their local frames.
la::Matrix<Fp> shiffer_matrix(const Evaluator& e1, const Evaluator& e2, const ShifferDatum& datum,
                              bool allow_overlap = false);

// The same datum as a functional on H^0(L1 L2), in the coordinates of B12.
std::vector<Fp> datum_functional(const Curve& C, const curve::RRBasis& b12, const ShifferDatum& datum,
                                 bool allow_overlap = false);
std::vector<Fp> evaluation_functional(const Curve& C, const curve::RRBasis& b12, const Place& P,
                                      bool allow_overlap = false);
// (xi(e_a f_b))_{a,b}.
la::Matrix<Fp> point_matrix(const MultiplicationTensor& T, const std::vector<Fp>& xi);

// Pairing of the local spaces at a point of multiplicity k = beta.size(),
// with the second index reversed: entry(u, v) = beta_{k-1+u-v} (0 outside
// range), upper triangular with beta_{k-1} on the diagonal.
la::Matrix<Fp> local_pairing_matrix(const std::vector<Fp>& beta);

struct RankBoundsReport {
  int d = 0, r1 = 0, r2 = 0;
  int lower = 0, upper = 0;
  std::map<size_t, size_t> histogram;  // rank -> count
  size_t trials = 0;
  bool all_within() const;
  bool upper_attained() const { return histogram.count(static_cast<size_t>(upper)) > 0; }
  bool lower_attained() const { return histogram.count(static_cast<size_t>(lower)) > 0; }
};

// Ranks of `trials` random data in T*(D) against [d - r1 - r2, d - max(r1, r2)].
RankBoundsReport rank_bounds_check(const Evaluator& e1, const Evaluator& e2, const Divisor& D, size_t trials,
                                   uint64_t seed, unsigned threads = 1, bool allow_overlap = false);

struct LowRankResult {
  std::vector<Fp> a;         // x_d = sum a_i x_i
  std::vector<Fp> weights;   // coefficients on x_1 .. x_{d-1}
  std::vector<Fp> f;         // f(lambda), f(0) = 1, low to high
  std::optional<Fp> lambda;  // a nonzero root, absent when f has none in F_p
};

// xs = x_1 .. x_d with x_1 .. x_{d-1} independent and x_d = sum a_i x_i.
// f(lambda) = det(diag(w) + lambda a a^T) / prod w; a root gives
// rank(sum w_i x_i x_i^T + lambda x_d x_d^T) <= d - 2.
LowRankResult low_rank_coefficients(const std::vector<std::vector<Fp>>& xs, const std::vector<Fp>& weights);

struct WitnessResult {
  std::optional<ShifferDatum> datum;
  size_t rank = 0;
  int target = 0;  // d - 2 r
  std::string method;
  std::string detail;
  bool ok() const { return datum.has_value() && static_cast<int>(rank) == target; }
};

// Datum on D whose matrix has rank d - 2 r_L(D).
WitnessResult min_rank_witness(const Curve& C, const Evaluator& e, const Divisor& D, uint64_t seed,
                               bool allow_overlap = false);

}  // namespace cliff::shiffer
