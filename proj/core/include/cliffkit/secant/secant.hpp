#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cliffkit/exactla/prime_span.hpp"
#include "cliffkit/linser/bundle.hpp"
#include "cliffkit/linser/multiplication.hpp"
#include "cliffkit/secant/forms.hpp"
#include "cliffkit/shiffer/shiffer.hpp"

namespace cliff::secant {

using curve::Curve;
using curve::Divisor;
using curve::Place;
using linser::Evaluator;
using linser::LineBundle;
using linser::MultiplicationTensor;

// Convention throughout: Sec^j(C) is spanned by j + 1 points, Sec^0 = C.
struct SecantPoint {
  std::vector<Fp> coords;  // functional on H^0(L12) in basis coordinates
  std::vector<Place> points;
  std::vector<Fp> coeffs;
};

struct SamplePointCloud {
  size_t ambient = 0;
  int level = 0;
  uint64_t seed = 0;
  std::vector<SecantPoint> points;
};

SecantPoint sample_secant_point(const Curve& C, const Evaluator& e12, int j, Rng& rng);
SecantPoint sample_secant_point(const Curve& C, const Evaluator& e12, int j, uint64_t seed);
// Point i is drawn from the stream derived from (seed, i).
SamplePointCloud sample_cloud(const Curve& C, const Evaluator& e12, int j, size_t count, uint64_t seed,
                              unsigned threads = 1);

struct MinorSpan {
  unsigned k = 0;
  size_t vars = 0;
  size_t minors = 0;
  std::vector<std::vector<Fp>> basis;  // degree-k forms
  size_t dim() const { return basis.size(); }
};

// Span of all k x k minors of (mu(e_a f_b)) as degree-k forms on H^0(L12)^dual.
MinorSpan minor_span(const MultiplicationTensor& T, unsigned k, unsigned threads = 1);

struct IdealDim {
  size_t dim = 0;
  size_t monomials = 0;
  size_t cloud = 0;
  std::vector<size_t> prefix_dims;  // at cloud/4, cloud/2, cloud
  la::PrimeSpan evaluations{0, 2};  // row space of the evaluation matrix
  // Forms vanishing on the cloud (computed on request).
  std::vector<std::vector<Fp>> basis;
};

size_t cloud_size_for(size_t vars, unsigned degree, unsigned oversample);
// Dimension of the degree-`degree` forms vanishing on the cloud.  Throws
// UnstableDimension unless the three prefix dimensions agree.
IdealDim vanishing_ideal_dim(const SamplePointCloud& cloud, unsigned degree, bool want_basis = false);
// Every minor form vanishes on every cloud point.
bool contained_in(const MinorSpan& minors, const IdealDim& ideal);

struct DetPresReport {
  unsigned k = 0;
  int deg1 = 0, deg2 = 0, genus = 0;
  bool hyp_main = false;     // deg L_i >= 2g + 1 + k
  bool hyp_shifted = false;  // deg L_i >= 2g + 1 + (k - 1)
  size_t vars = 0, monomials = 0, minors = 0;
  size_t minors_dim = 0, ideal_dim = 0, cloud = 0;
  std::vector<size_t> prefix_dims;
  std::optional<size_t> exact_quadrics;  // k = 1: dim ker Sym^2 H^0(L12) -> H^0(L12^2)
  bool contained = false;
  std::string verdict;  // EQUAL, MINORS_SMALLER, NOT_CONTAINED
  bool equal() const { return verdict == "EQUAL"; }
};

// (k+1)-minors against the degree-(k+1) forms vanishing on a Sec^{k-1} cloud.
DetPresReport det_presented(const Curve& C, const LineBundle& L1, const LineBundle& L2, unsigned k, uint64_t seed,
                            unsigned oversample = 3, unsigned threads = 1);

struct ContainmentReport {
  int j = 0;
  size_t trials = 0, violations = 0;
  std::map<size_t, size_t> histogram;
};

// Points of Sec^{j-1} (j points) have point_matrix rank <= j.
ContainmentReport rank_locus_containment(const Curve& C, const LineBundle& L, int j, size_t trials, uint64_t seed,
                                         unsigned threads = 1);

struct HassettReport {
  int d = 0;
  int target_rank = 0;
  size_t rank = 0;
  std::string method;
  size_t places_tested = 0, places_on_plane = 0;
  size_t ideal_dim = 0, forms_not_vanishing = 0, cloud = 0;
  std::optional<shiffer::ShifferDatum> datum;
  std::string detail;
  bool rank_ok() const { return datum && static_cast<int>(rank) == target_rank; }
  bool avoids_curve() const { return places_on_plane == 0 && places_tested > 0; }
  bool off_secant_evidence() const { return forms_not_vanishing > 0; }
};

// L = K(D), deg D = d >= 3: a rank d-2 variation whose image plane misses
// the rational points of C, plus forms through a Sec^{d-3} cloud that do
// not vanish at it.
HassettReport hassett_witness(const Curve& C, const Divisor& D, uint64_t seed, unsigned oversample = 3,
                              unsigned threads = 1);

struct TangentReport {
  bool skipped = false;
  std::string reason;
  int p = 0;
  size_t ambient = 0;
  size_t jacobian_rank = 0;
  size_t kernel_dim = 0;
  size_t expected_dim = 0;  // h0(L^2) - h0(L^2(-2D))
  bool contains_2d = false;
  bool equal() const { return !skipped && contains_2d && kernel_dim == expected_dim; }
};

// Jacobian of the (p+1)-minors at the datum's functional versus the span of 2D.
TangentReport tangent_space_check(const Curve& C, const LineBundle& L, const shiffer::ShifferDatum& phi);

struct SecantDimReport {
  int j = 0;
  size_t trials = 0, independent = 0;
  size_t ambient = 0;
  bool saturated() const { return 2 * static_cast<size_t>(j + 1) > ambient; }
};

// Disjoint D, E of degree j + 1: are the 2(j+1) evaluation vectors independent?
SecantDimReport secant_dim_probe(const Curve& C, const LineBundle& L, int j, size_t trials, uint64_t seed);

}  // namespace cliff::secant
