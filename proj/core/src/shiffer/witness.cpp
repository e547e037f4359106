#include <algorithm>

#include "cliffkit/exactla/linalg.hpp"
#include "cliffkit/shiffer/shiffer.hpp"

namespace cliff::shiffer {

namespace {

// Lagrange interpolation through (k, ys[k]), k = 0 .. ys.size() - 1.
curve::Poly interpolate(const std::vector<Fp>& ys, uint32_t p) {
  using curve::Poly;
  Poly acc(p);
  const size_t m = ys.size();
  for (size_t k = 0; k < m; ++k) {
    Poly term = Poly::constant(ys[k]);
    Fp denom = Fp::raw(1, p);
    for (size_t j = 0; j < m; ++j) {
      if (j == k) continue;
      term = term * Poly::x_minus(Fp(static_cast<int64_t>(j), p));
      denom *= Fp(static_cast<int64_t>(k) - static_cast<int64_t>(j), p);
    }
    acc = acc + term * denom.inverse();
  }
  return acc;
}

}  // namespace

LowRankResult low_rank_coefficients(const std::vector<std::vector<Fp>>& xs, const std::vector<Fp>& weights) {
  if (xs.size() < 2) throw PreconditionError("low_rank_coefficients needs at least two vectors");
  const size_t d = xs.size();
  if (weights.size() != d - 1) throw PreconditionError("need one weight per independent vector");
  const uint32_t p = xs[0].at(0).modulus();
  if (p <= d) throw PreconditionError("characteristic too small for interpolation");
  const size_t N = xs[0].size();
  la::Matrix<Fp> X(N, d - 1, p);
  for (size_t i = 0; i + 1 < d; ++i)
    for (size_t r = 0; r < N; ++r) X(r, i) = xs[i][r];
  if (la::rank(X) != d - 1) throw PreconditionError("x_1 .. x_{d-1} are dependent");
  auto a = la::solve(X, xs[d - 1]);
  if (!a) throw PreconditionError("x_d is not in the span of x_1 .. x_{d-1}");
  for (const auto& v : *a)
    if (v.is_zero()) throw PreconditionError("x_d needs every x_i with a nonzero coefficient");
  for (const auto& w : weights)
    if (w.is_zero()) throw PreconditionError("weights must be nonzero");

  LowRankResult res;
  res.a = *a;
  res.weights = weights;
  // f has degree <= d - 1; sample it at d points.
  std::vector<Fp> ys;
  for (size_t k = 0; k < d; ++k) {
    const Fp lam(static_cast<int64_t>(k), p);
    la::Matrix<Fp> G(d - 1, d - 1, p);
    for (size_t i = 0; i + 1 < d; ++i)
      for (size_t j = 0; j + 1 < d; ++j) G(i, j) = lam * res.a[i] * res.a[j] + (i == j ? weights[i] : Fp::raw(0, p));
    ys.push_back(la::determinant(G));
  }
  curve::Poly f = interpolate(ys, p);
  f = f * f.coeff(0).inverse();
  res.f = f.coeffs();
  if (p <= (1u << 16)) {
    for (uint32_t v = 1; v < p; ++v)
      if (f.eval(Fp::raw(v, p)).is_zero()) {
        res.lambda = Fp::raw(v, p);
        break;
      }
  } else {
    for (const auto& r : f.roots())
      if (!r.is_zero()) {
        res.lambda = r;
        break;
      }
  }
  return res;
}

WitnessResult min_rank_witness(const Curve& C, const Evaluator& e, const Divisor& D, uint64_t seed,
                               bool allow_overlap) {
  WitnessResult res;
  const uint32_t p = C.p();
  const int d = D.degree();
  const int r = e.r(D);
  res.target = d - 2 * r;
  Rng rng(Rng::derive(seed, 0x5a1));
  auto rank_of = [&](const ShifferDatum& datum) { return la::rank(shiffer_matrix(e, e, datum, allow_overlap)); };

  if (r == 0) {
    ShifferDatum datum = random_star_datum(D, p, rng);
    res.rank = rank_of(datum);
    res.datum = datum;
    res.method = "degenerate";
    return res;
  }

  bool reduced_finite = true;
  for (const auto& [P, k] : D.terms())
    if (k != 1 || !P.is_finite()) reduced_finite = false;

  // (a) residue construction: a section w of L^2 K^{-1}(-D) that does not
  // vanish on D gives beta_i = 1 / (y_i^{n-1} w_i).
  if (reduced_finite) {
    const Divisor R = e.bundle().representative;
    const Divisor E = R * 2 - C.canonical_divisor() - D;
    const auto W = curve::riemann_roch_space(C, E);
    if (W.dim() > 0) {
      linser::Evaluator ew(C, W);
      std::vector<std::vector<Fp>> vals;
      for (const auto& [P, k] : D.terms()) vals.push_back(ew.evaluation_vector(P, true));
      for (int attempt = 0; attempt < 64 && !res.datum; ++attempt) {
        std::vector<Fp> c(W.dim());
        for (auto& x : c) x = attempt == 0 && W.dim() == 1 ? Fp::raw(1, p) : rng.uniform(p);
        ShifferDatum datum;
        bool ok = true;
        size_t i = 0;
        for (const auto& [P, k] : D.terms()) {
          Fp wi = Fp::raw(0, p);
          for (size_t j = 0; j < c.size(); ++j) wi += c[j] * vals[i][j];
          ++i;
          if (wi.is_zero()) {
            ok = false;
            break;
          }
          const Fp yi = Fp::raw(P.y, p).pow(C.n() - 1);
          datum.points.push_back(P);
          datum.beta.push_back({(yi * wi).inverse()});
        }
        if (!ok) continue;
        const size_t rk = rank_of(datum);
        if (static_cast<int>(rk) == res.target) {
          res.datum = datum;
          res.rank = rk;
          res.method = "residue";
        } else {
          res.detail = "residue datum has rank " + std::to_string(rk);
          break;
        }
      }
      if (res.datum) return res;
      if (res.detail.empty()) res.detail = "no section of the residual avoids every point of D";
    } else {
      res.detail = "residual bundle has no sections";
    }
  }

  // (b) r = 1: perturb one weight along the unique dependency.
  if (r == 1 && reduced_finite) {
    std::vector<Place> pts;
    std::vector<std::vector<Fp>> xs;
    for (const auto& [P, k] : D.terms()) {
      pts.push_back(P);
      xs.push_back(e.evaluation_vector(P, allow_overlap));
    }
    // Put a point with a nonzero dependency coefficient last.
    la::Matrix<Fp> X(e.h0(), xs.size(), p);
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = 0; j < e.h0(); ++j) X(j, i) = xs[i][j];
    const auto ker = la::kernel_basis(X);
    if (ker.size() == 1 && std::all_of(ker[0].begin(), ker[0].end(), [](Fp v) { return !v.is_zero(); })) {
      for (int attempt = 0; attempt < 16; ++attempt) {
        std::vector<Fp> w(xs.size() - 1);
        for (auto& x : w) x = attempt == 0 ? Fp::raw(1, p) : rng.nonzero(p);
        const auto lr = low_rank_coefficients(xs, w);
        if (!lr.lambda) continue;
        ShifferDatum datum;
        datum.points = pts;
        for (const auto& x : w) datum.beta.push_back({x});
        datum.beta.push_back({*lr.lambda});
        const size_t rk = rank_of(datum);
        res.datum = datum;
        res.rank = rk;
        res.method = "perturbation";
        return res;
      }
      res.detail += res.detail.empty() ? "" : "; ";
      res.detail += "f(lambda) has no root in the field for the tried weights";
    } else {
      res.detail += res.detail.empty() ? "" : "; ";
      res.detail += "dependency does not involve every point";
    }
  }
  res.method = "none";
  if (res.detail.empty()) res.detail = "neither construction applies";
  return res;
}

}  // namespace cliff::shiffer
