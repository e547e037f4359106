#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cliffkit/linser/bundle.hpp"
#include "cliffkit/linser/multiplication.hpp"

namespace cliff::koszul {

using curve::Curve;
using curve::Divisor;
using curve::Fp;
using curve::RRBasis;
using linser::LineBundle;

inline constexpr size_t kDefaultEntryBudget = 50'000'000;

// Lexicographic p-subsets of {0 .. n-1}; subset(i) and index(S) are inverse.
class WedgeBasis {
 public:
  WedgeBasis(size_t n, size_t p);
  size_t size() const { return sets_.size(); }
  const std::vector<size_t>& subset(size_t i) const { return sets_[i]; }
  size_t index(const std::vector<size_t>& sorted) const;

 private:
  std::vector<std::vector<size_t>> sets_;
  std::map<std::vector<size_t>, size_t> index_;
};

// Boundary  wedge^p W (x) M_src -> wedge^{p-1} W (x) M_tgt  from structure
// constants mult[a * src_dim + c] = w_a m_c in target coordinates:
//   d(w_{s_0} ^ ... ^ w_{s_{p-1}} (x) m) = sum_i (-1)^i (... omit s_i ...) (x) w_{s_i} m
// with s_0 < ... < s_{p-1}.  Columns are indexed S * src_dim + c, rows
// T * tgt_dim + e.  Throws BudgetExceeded above `budget` entries.
la::Matrix<Fp> koszul_matrix(size_t wdim, size_t p, size_t src_dim, size_t tgt_dim,
                             const std::vector<std::vector<Fp>>& mult, uint32_t ch,
                             size_t budget = kDefaultEntryBudget);

struct KoszulSlice {
  int p = 0, q = 0;
  la::Matrix<Fp> incoming;  // d_{p+1, q-1}
  la::Matrix<Fp> outgoing;  // d_{p, q}
  size_t rank_in = 0, rank_out = 0;
  size_t middle = 0;  // dim wedge^p W (x) M^q
  size_t dim() const { return middle - rank_out - rank_in; }
  // Both composites through this slot vanish.
  bool square_zero = false;
};

// Koszul complex of the section module M^q = H^0(L^q) over W = H^0(L).
// Bases of M^q are built once, M^{q+1} as the product space of W and M^q,
// so consecutive boundaries share coordinates.  Not safe for concurrent use.
class KoszulComplex {
 public:
  KoszulComplex(const Curve& C, LineBundle L, size_t budget = kDefaultEntryBudget);

  const Curve& curve() const { return *C_; }
  size_t wdim() const { return basis(1).dim(); }
  size_t module_dim(int q) const;
  const RRBasis& basis(int q) const;
  // w_a m_c in the coordinates of M^{q+1}, index a * dim M^q + c.
  const std::vector<std::vector<Fp>>& structure(int q) const;

  la::Matrix<Fp> boundary(int p, int q) const;
  KoszulSlice slice(int p, int q) const;
  size_t dim(int p, int q) const { return slice(p, q).dim(); }
  // The same dimension read off the transposed (dual) complex.
  size_t dual_dim(int p, int q) const;

 private:
  void guard(int p, int q) const;

  const Curve* C_;
  LineBundle L_;
  size_t budget_;
  mutable std::vector<RRBasis> bases_;
  mutable std::map<int, std::vector<std::vector<Fp>>> structure_;
};

struct BettiTable {
  int pmax = 0, qmax = 0;
  std::vector<std::vector<size_t>> dims;  // dims[q][p]
  size_t at(int p, int q) const { return dims.at(q).at(p); }
  std::string str() const;
};

BettiTable betti_table(const KoszulComplex& K, int pmax, int qmax);
BettiTable betti_table(const Curve& C, const LineBundle& L, int pmax, int qmax);

// phi (x) (u_1 ^ ... ^ u_p) as a functional on wedge^p W (x) M^q, in the
// dual coordinates of the primal basis.
std::vector<Fp> decomposable_cochain(const std::vector<Fp>& phi, const std::vector<std::vector<Fp>>& factors,
                                     size_t wdim);
bool is_cocycle(const KoszulComplex& K, int p, int q, const std::vector<Fp>& v);
// Cocycle: d_{p+1,q-1}^T v = 0.  Coboundary: v = d_{p,q}^T x; returns such
// an x, or nullopt when none exists.
std::optional<std::vector<Fp>> coboundary_preimage(const KoszulComplex& K, int p, int q, const std::vector<Fp>& v);

struct ClassReport {
  int c = 0;  // wedge degree, the rank of the variation
  std::string method;
  size_t slice_dim = 0;  // dim K_{c,2}
  bool cocycle = false;
  bool coboundary = true;
  bool nontrivial() const { return cocycle && !coboundary; }
};

// phi from the minimal-rank variation on D, lambda the wedge of its image.
ClassReport verify_nontrivial_class(const KoszulComplex& K, const LineBundle& L, const Divisor& D, uint64_t seed);

struct TrivialityReport {
  int p = 0;
  size_t samples = 0, cocycles = 0, coboundaries = 0;
  bool vacuous = false;  // no nonzero decomposable cocycle of this shape exists
  bool all_trivial() const { return cocycles == coboundaries; }
};

// Decomposable cocycles phi (x) lambda in the dual of wedge^p W (x) M^2 with
// phi a combination of p point evaluations (p >= 1), or phi annihilating the
// image of multiplication (p = 0).  Each cocycle is tested for a preimage.
TrivialityReport verify_decomposable_trivial(const KoszulComplex& K, int p, size_t samples, uint64_t seed);

}  // namespace cliff::koszul
