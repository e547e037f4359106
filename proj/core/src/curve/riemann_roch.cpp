#include "cliffkit/curve/riemann_roch.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cliffkit/exactla/linalg.hpp"

namespace cliff::curve {

namespace {

struct Monomial {
  int a;  // power of x
  int b;  // power of y
};

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
int ceil_div(int a, int b) { return -floor_div(-a, b); }

// Expansions of x^a y^b at P, each known modulo t^prec.
std::vector<LaurentSeries> monomial_expansions(const Curve& C, const Place& P, const std::vector<Monomial>& monos,
                                               int prec) {
  int amax = 0;
  for (const auto& mo : monos) amax = std::max(amax, mo.a);
  int margin = 2;
  if (!P.is_affine()) margin += amax * -C.x_valuation(P) + static_cast<int>(C.n()) * -C.y_valuation(P);
  const uint32_t p = C.p();
  for (int round = 0; round < 12; ++round) {
    auto [xs, ys] = C.local_xy(P, prec + margin);
    std::vector<LaurentSeries> xp{LaurentSeries::exact(0, {Fp::raw(1, p)}, p)};
    for (int a = 1; a <= amax; ++a) xp.push_back(xp.back() * xs);
    std::vector<LaurentSeries> yp{LaurentSeries::exact(0, {Fp::raw(1, p)}, p)};
    for (unsigned b = 1; b < C.n(); ++b) yp.push_back(yp.back() * ys);
    std::vector<LaurentSeries> out;
    bool ok = true;
    for (const auto& mo : monos) {
      out.push_back(xp[mo.a] * yp[mo.b]);
      if (out.back().precision() < prec) {
        ok = false;
        break;
      }
    }
    if (ok) return out;
    margin = 2 * margin + 8;
  }
  throw InternalError("monomial expansion precision not reached");
}

}  // namespace

RRBasis riemann_roch_space(const Curve& C, const Divisor& D) {
  for (const auto& P : D.support()) C.require_place(P);
  const uint32_t p = C.p();
  const int n = static_cast<int>(C.n());
  const int m = C.m();
  RRBasis out;
  out.divisor = D;
  out.denominator = Poly::constant(Fp::raw(1, p));
  if (D.degree() < 0) return out;

  // Denominator: enough poles over each x0 carrying positive multiplicity.
  std::map<uint32_t, int> cx;
  for (const auto& [P, k] : D.terms()) {
    if (!P.is_affine() || k <= 0) continue;
    const int e = static_cast<int>(C.ramification_index(P));
    int& c = cx[P.x];
    c = std::max(c, ceil_div(k, e));
  }
  Poly Q = Poly::constant(Fp::raw(1, p));
  int degQ = 0;
  for (const auto& [x0, c] : cx) {
    Q = Q * Poly::x_minus(Fp::raw(x0, p)).pow(static_cast<unsigned>(c));
    degQ += c;
  }
  out.denominator = Q;

  // Required valuation of the numerator G at each constrained place.
  std::map<Place, int> need;
  for (const auto& [x0, c] : cx)
    for (const auto& P : C.places_over(Fp::raw(x0, p)))
      need[P] = c * static_cast<int>(C.ramification_index(P)) - D.coefficient(P);
  for (const auto& [P, k] : D.terms())
    if (P.is_affine() && k < 0 && !cx.count(P.x)) need[P] = -k;
  for (const auto& P : C.infinite_places()) need[P] = degQ * C.x_valuation(P) - D.coefficient(P);

  // Ansatz: pole order at infinity bounds each x-degree exactly (the
  // leading terms of different y-powers cannot all cancel).
  std::vector<Monomial> monos;
  for (int b = 0; b < n; ++b) {
    int dmax;
    if (C.infinity_kind() == InfinityKind::TotallyRamified) {
      dmax = floor_div(n * degQ + D.coefficient(Place::infinity(0)) - m * b, n);
    } else {
      int best = D.coefficient(Place::infinity(0));
      for (const auto& P : C.infinite_places()) best = std::max(best, D.coefficient(P));
      dmax = degQ + best - b * (m / n);
    }
    for (int a = 0; a <= dmax; ++a) monos.push_back({a, b});
  }
  if (monos.empty()) return out;

  std::vector<std::vector<Fp>> rows;
  for (const auto& [P, k] : need) {
    int lo = 0;
    if (!P.is_affine()) {
      lo = k;
      for (const auto& mo : monos) lo = std::min(lo, mo.a * C.x_valuation(P) + mo.b * C.y_valuation(P));
    }
    if (lo >= k) continue;
    auto ex = monomial_expansions(C, P, monos, k);
    for (int e = lo; e < k; ++e) {
      std::vector<Fp> row;
      row.reserve(monos.size());
      for (const auto& s : ex) row.push_back(s.coeff(e));
      rows.push_back(std::move(row));
    }
  }
  std::vector<std::vector<Fp>> kernel;
  if (rows.empty()) {
    for (size_t j = 0; j < monos.size(); ++j) {
      std::vector<Fp> v(monos.size(), Fp::raw(0, p));
      v[j] = Fp::raw(1, p);
      kernel.push_back(std::move(v));
    }
  } else {
    kernel = la::kernel_basis(la::Matrix<Fp>::from_rows(rows, monos.size(), p));
  }

  for (const auto& v : kernel) {
    std::vector<std::vector<Fp>> comp(n);
    for (size_t j = 0; j < monos.size(); ++j) {
      auto& cc = comp[monos[j].b];
      if (cc.size() <= static_cast<size_t>(monos[j].a)) cc.resize(monos[j].a + 1, Fp::raw(0, p));
      cc[monos[j].a] = v[j];
    }
    std::vector<Poly> num;
    for (auto& cc : comp) num.emplace_back(std::move(cc), p);
    out.basis.emplace_back(std::move(num), Q);
  }

  const long long lower = static_cast<long long>(D.degree()) - C.genus() + 1;
  if (static_cast<long long>(out.dim()) < lower ||
      (D.degree() > 2 * C.genus() - 2 && static_cast<long long>(out.dim()) != lower))
    throw InternalError("Riemann-Roch dimension violates the Riemann-Roch bound for " + D.str());
  return out;
}

size_t h0(const Curve& C, const Divisor& D) { return riemann_roch_space(C, D).dim(); }

bool verify_basis(const Curve& C, const RRBasis& B, std::string* why) {
  std::set<Place> places;
  for (const auto& P : B.divisor.support()) places.insert(P);
  for (const auto& P : C.infinite_places()) places.insert(P);
  for (const auto& r : B.denominator.roots())
    for (const auto& P : C.places_over(r)) places.insert(P);
  for (size_t i = 0; i < B.basis.size(); ++i) {
    if (B.basis[i].is_zero()) {
      if (why) *why = "basis element " + std::to_string(i) + " is zero";
      return false;
    }
    for (const auto& P : places) {
      const auto v = C.valuation(B.basis[i], P);
      if (v && *v < -B.divisor.coefficient(P)) {
        if (why)
          *why = "basis element " + std::to_string(i) + " has valuation " + std::to_string(*v) + " at " + P.str();
        return false;
      }
    }
  }
  return true;
}

Function linear_combination(const Curve& C, const std::vector<Function>& fs, const std::vector<Fp>& coeffs) {
  if (fs.size() != coeffs.size()) throw PreconditionError("linear_combination: length mismatch");
  Function acc = C.constant(Fp::raw(0, C.p()));
  for (size_t i = 0; i < fs.size(); ++i)
    if (!coeffs[i].is_zero()) acc = acc + fs[i] * coeffs[i];
  return acc;
}

std::optional<std::vector<Fp>> coordinates(const Curve& C, const RRBasis& B, const Function& h) {
  return coordinates(C, B, std::vector<Function>{h}).front();
}

std::vector<std::optional<std::vector<Fp>>> coordinates(const Curve& C, const RRBasis& B,
                                                        const std::vector<Function>& hs) {
  const uint32_t p = C.p();
  const size_t N = B.dim();
  std::vector<std::optional<std::vector<Fp>>> out(hs.size());
  if (hs.empty()) return out;
  // Clear every denominator at once: with L = lcm of the function
  // denominators and Q the basis denominator, compare
  // sum_i c_i G_i (L / Q) = G_h (L / Q_h) component by component.
  Poly L = B.denominator;
  for (const auto& h : hs) {
    if (h.n() != C.n()) throw CharacteristicMismatch("function from another curve");
    const Poly g = Poly::gcd(L, h.denominator());
    L = L * (h.denominator() / g);
  }
  std::vector<std::vector<Poly>> lhs;
  const Poly lq = L / B.denominator;
  for (const auto& g : B.basis) {
    std::vector<Poly> comp;
    for (const auto& c : g.numerator()) comp.push_back(c * lq);
    lhs.push_back(std::move(comp));
  }
  std::vector<std::vector<Poly>> rhs;
  for (const auto& h : hs) {
    const Poly lh = L / h.denominator();
    std::vector<Poly> comp;
    for (const auto& c : h.numerator()) comp.push_back(c * lh);
    rhs.push_back(std::move(comp));
  }
  int maxdeg = 0;
  for (const auto* side : {&lhs, &rhs})
    for (const auto& comp : *side)
      for (const auto& c : comp) maxdeg = std::max(maxdeg, c.degree());
  const size_t stride = static_cast<size_t>(maxdeg + 1);
  const size_t nrows = C.n() * stride;
  la::Matrix<Fp> A(nrows, N + hs.size(), p);
  for (unsigned comp = 0; comp < C.n(); ++comp)
    for (size_t k = 0; k < stride; ++k) {
      const size_t r = comp * stride + k;
      for (size_t i = 0; i < N; ++i) A(r, i) = lhs[i][comp].coeff(k);
      for (size_t j = 0; j < hs.size(); ++j) A(r, N + j) = rhs[j][comp].coeff(k);
    }
  // Basis numerators are independent, so the first N pivots land in the
  // first N columns; a pivot in column N + j means h_j is outside the span.
  auto ech = la::row_reduce(std::move(A));
  size_t rank_basis = 0;
  while (rank_basis < ech.pivots.size() && ech.pivots[rank_basis] < N) ++rank_basis;
  if (rank_basis != N) throw InternalError("basis numerators are dependent");
  for (size_t j = 0; j < hs.size(); ++j) {
    bool inside = true;
    for (size_t k = N; k < ech.pivots.size(); ++k) {
      // Rows past the basis pivots are zero in the first N columns; any
      // nonzero entry in column N + j puts h_j outside the span.
      if (!ech.reduced(k, N + j).is_zero()) {
        inside = false;
        break;
      }
    }
    if (!inside) continue;
    std::vector<Fp> x(N, Fp::raw(0, p));
    for (size_t k = 0; k < N; ++k) x[ech.pivots[k]] = ech.reduced(k, N + j);
    out[j] = std::move(x);
  }
  return out;
}

la::Matrix<Fp> local_coefficients(const Curve& C, const RRBasis& B, const Place& P, int lo, int hi) {
  la::Matrix<Fp> M(B.dim(), static_cast<size_t>(std::max(hi - lo, 0)), C.p());
  for (size_t i = 0; i < B.dim(); ++i) {
    // Enough terms past the leading one to cover t^{hi-1}.
    const auto s = C.expand(B.basis[i], P, 0).normalized();
    const int v = s.valuation().value_or(hi);
    LaurentSeries full = v < hi ? C.expand(B.basis[i], P, hi - v) : s;
    for (int e = lo; e < hi; ++e) M(i, static_cast<size_t>(e - lo)) = e < v ? Fp::raw(0, C.p()) : full.coeff(e);
  }
  return M;
}

}  // namespace cliff::curve
