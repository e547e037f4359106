#include "cliffkit/shiffer/shiffer.hpp"

#include "cliffkit/exactla/linalg.hpp"
#include "cliffkit/util/parallel.hpp"

namespace cliff::shiffer {

Divisor ShifferDatum::divisor() const {
  Divisor D;
  for (size_t i = 0; i < points.size(); ++i) D.add(points[i], static_cast<int>(beta[i].size()));
  return D;
}

int ShifferDatum::degree() const {
  int d = 0;
  for (const auto& b : beta) d += static_cast<int>(b.size());
  return d;
}

bool ShifferDatum::in_star() const {
  for (const auto& b : beta)
    if (b.empty() || b.back().is_zero()) return false;
  return true;
}

ShifferDatum random_star_datum(const Divisor& D, uint32_t p, Rng& rng) {
  if (!D.is_effective()) throw PreconditionError("Shiffer data need an effective divisor");
  ShifferDatum out;
  for (const auto& [P, k] : D.terms()) {
    out.points.push_back(P);
    std::vector<Fp> b;
    for (int j = 0; j + 1 < k; ++j) b.push_back(rng.uniform(p));
    b.push_back(rng.nonzero(p));
    out.beta.push_back(std::move(b));
  }
  return out;
}

ShifferDatum unit_datum(const Divisor& D, uint32_t p) {
  ShifferDatum out;
  for (const auto& [P, k] : D.terms()) {
    out.points.push_back(P);
    std::vector<Fp> b(static_cast<size_t>(k), Fp::raw(0, p));
    b[0] = Fp::raw(1, p);
    out.beta.push_back(std::move(b));
  }
  return out;
}

namespace {

void check_point(const Place& P, const Divisor& R1, const Divisor& R2, bool allow_overlap) {
  if (!P.is_finite()) throw PreconditionError("Shiffer data live at Finite places, got " + P.str());
  if (!allow_overlap && (R1.coefficient(P) != 0 || R2.coefficient(P) != 0))
    throw SupportCollision("datum point " + P.str() + " lies in the support of a representative");
}

}  // namespace

la::Matrix<Fp> shiffer_matrix(const Evaluator& e1, const Evaluator& e2, const ShifferDatum& datum,
                              bool allow_overlap) {
  const uint32_t p = e1.curve().p();
  const size_t n1 = e1.h0(), n2 = e2.h0();
  la::Matrix<Fp> M(n1, n2, p);
  for (size_t i = 0; i < datum.points.size(); ++i) {
    const Place& P = datum.points[i];
    check_point(P, e1.bundle().representative, e2.bundle().representative, allow_overlap);
    const auto& beta = datum.beta[i];
    const int k = static_cast<int>(beta.size());
    if (k == 0) continue;
    const auto S = e1.local_block(P, k);
    const auto T = e2.local_block(P, k);
    // S * H * T^T with the Hankel block H[u][v] = beta[u + v].
    la::Matrix<Fp> SH(n1, static_cast<size_t>(k), p);
    for (size_t a = 0; a < n1; ++a)
      for (int v = 0; v < k; ++v) {
        Fp s = Fp::raw(0, p);
        for (int u = 0; u + v < k; ++u) s += S(a, u) * beta[u + v];
        SH(a, v) = s;
      }
    for (size_t a = 0; a < n1; ++a)
      for (size_t b = 0; b < n2; ++b) {
        Fp s = Fp::raw(0, p);
        for (int v = 0; v < k; ++v) s += SH(a, v) * T(b, v);
        M(a, b) += s;
      }
  }
  return M;
}

std::vector<Fp> datum_functional(const Curve& C, const curve::RRBasis& b12, const ShifferDatum& datum,
                                 bool allow_overlap) {
  const uint32_t p = C.p();
  std::vector<Fp> xi(b12.dim(), Fp::raw(0, p));
  for (size_t i = 0; i < datum.points.size(); ++i) {
    const Place& P = datum.points[i];
    check_point(P, b12.divisor, Divisor(), allow_overlap);
    const int k = static_cast<int>(datum.beta[i].size());
    const int lo = -b12.divisor.coefficient(P);
    const auto B = curve::local_coefficients(C, b12, P, lo, lo + k);
    for (size_t c = 0; c < b12.dim(); ++c)
      for (int j = 0; j < k; ++j) xi[c] += datum.beta[i][j] * B(c, j);
  }
  return xi;
}

std::vector<Fp> evaluation_functional(const Curve& C, const curve::RRBasis& b12, const Place& P,
                                      bool allow_overlap) {
  ShifferDatum d;
  d.points.push_back(P);
  d.beta.push_back({Fp::raw(1, C.p())});
  return datum_functional(C, b12, d, allow_overlap);
}

la::Matrix<Fp> point_matrix(const MultiplicationTensor& T, const std::vector<Fp>& xi) { return T.contract(xi); }

la::Matrix<Fp> local_pairing_matrix(const std::vector<Fp>& beta) {
  if (beta.empty()) throw PreconditionError("empty local datum");
  const uint32_t p = beta.front().modulus();
  const int k = static_cast<int>(beta.size());
  la::Matrix<Fp> H(beta.size(), beta.size(), p);
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < k; ++v) {
      const int idx = k - 1 + u - v;
      if (idx < k) H(u, v) = beta[idx];
    }
  return H;
}

bool RankBoundsReport::all_within() const {
  for (const auto& [r, c] : histogram)
    if (static_cast<int>(r) < lower || static_cast<int>(r) > upper) return false;
  return true;
}

RankBoundsReport rank_bounds_check(const Evaluator& e1, const Evaluator& e2, const Divisor& D, size_t trials,
                                   uint64_t seed, unsigned threads, bool allow_overlap) {
  RankBoundsReport rep;
  rep.d = D.degree();
  rep.r1 = e1.r(D);
  rep.r2 = e2.r(D);
  rep.lower = rep.d - rep.r1 - rep.r2;
  rep.upper = rep.d - std::max(rep.r1, rep.r2);
  rep.trials = trials;
  const uint32_t p = e1.curve().p();
  std::vector<size_t> ranks(trials);
  parallel_for(trials, threads, [&](size_t t) {
    Rng rng(Rng::derive(seed, t));
    const auto datum = random_star_datum(D, p, rng);
    ranks[t] = la::rank(shiffer_matrix(e1, e2, datum, allow_overlap));
  });
  for (size_t r : ranks) ++rep.histogram[r];
  return rep;
}

}  // namespace cliff::shiffer
