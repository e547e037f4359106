#include "cliffkit/curve/curve.hpp"

#include <algorithm>
#include <numeric>

namespace cliff::curve {

int hurwitz_genus(int n, const std::vector<int>& ramification, int base_genus) {
  if (n < 1) throw PreconditionError("cover degree must be positive");
  long long rhs = static_cast<long long>(n) * (2LL * base_genus - 2);
  for (int e : ramification) {
    if (e < 1 || e > n) throw PreconditionError("ramification index out of range");
    rhs += e - 1;
  }
  if (rhs % 2 != 0) throw PreconditionError("ramification profile has odd parity");
  const long long g = rhs / 2 + 1;
  if (g < 0) throw PreconditionError("ramification profile gives negative genus");
  return static_cast<int>(g);
}

Curve Curve::create(unsigned n, const std::vector<int64_t>& f, uint32_t p) {
  if (p == 0) throw CharacteristicMismatch("curve geometry needs a prime field");
  return create(n, Poly::from_ints(f, p));
}

Curve Curve::create(unsigned n, const Poly& f) {
  const uint32_t p = f.modulus();
  if (n < 2) throw PreconditionError("cover degree must be at least 2");
  if (p < 5 || !la::is_prime(p)) throw CharacteristicMismatch("characteristic must be a prime >= 5");
  if (p % n == 0) throw CharacteristicMismatch("characteristic divides the cover degree");
  if ((p - 1) % n != 0)
    throw CharacteristicMismatch("need p = 1 mod n so the n-th roots of unity are rational");
  if (f.degree() < 1) throw PreconditionError("f must be non-constant");
  if (!f.is_squarefree()) throw PreconditionError("f is not squarefree");
  const unsigned m = static_cast<unsigned>(f.degree());

  Curve c;
  c.p_ = p;
  c.n_ = n;
  c.f_ = f;
  if (std::gcd(n, m) == 1)
    c.kind_ = InfinityKind::TotallyRamified;
  else if (m % n == 0)
    c.kind_ = InfinityKind::Split;
  else
    throw PreconditionError("unsupported infinity: need gcd(n, deg f) = 1 or n | deg f");

  const auto lead_roots = nth_roots(f.lead(), n);
  if (lead_roots.empty())
    throw PreconditionError("leading coefficient of f is not an n-th power in the field");
  c.lead_root_ = lead_roots.front();
  const Fp g = primitive_root(p);
  c.zeta_ = g.pow((p - 1) / n);

  std::vector<int> ram(m, static_cast<int>(n));
  if (c.kind_ == InfinityKind::TotallyRamified) ram.push_back(static_cast<int>(n));
  c.genus_ = hurwitz_genus(static_cast<int>(n), ram);
  return c;
}

unsigned Curve::ramification_index(const Place& P) const {
  switch (P.kind) {
    case PlaceKind::Finite: return 1;
    case PlaceKind::Branch: return n_;
    case PlaceKind::Infinity: return kind_ == InfinityKind::Split ? 1 : n_;
  }
  return 1;
}

bool Curve::on_curve(const Place& P) const {
  switch (P.kind) {
    case PlaceKind::Finite: {
      if (P.x >= p_ || P.y >= p_ || P.y == 0) return false;
      const Fp fx = f_.eval(Fp::raw(P.x, p_));
      return Fp::raw(P.y, p_).pow(n_) == fx;
    }
    case PlaceKind::Branch:
      return P.x < p_ && P.y == 0 && f_.eval(Fp::raw(P.x, p_)).is_zero();
    case PlaceKind::Infinity:
      return P.index < num_infinite_places();
  }
  return false;
}

void Curve::require_place(const Place& P) const {
  if (!on_curve(P)) throw PreconditionError("place " + P.str() + " is not on the curve");
}

std::vector<Place> Curve::infinite_places() const {
  std::vector<Place> out;
  for (unsigned i = 0; i < num_infinite_places(); ++i) out.push_back(Place::infinity(i));
  return out;
}

std::vector<Place> Curve::fiber(Fp x0) const {
  const Fp fx = f_.eval(x0);
  if (fx.is_zero()) throw PreconditionError("fiber requested over a branch value");
  const auto ys = nth_roots(fx, n_);
  if (ys.empty()) throw NoRootInField("f(x0) has no n-th root in the field");
  std::vector<Place> out;
  for (Fp y : ys) out.push_back(Place::finite(x0.value(), y.value()));
  return out;
}

std::vector<Place> Curve::places_over(Fp x0) const {
  const Fp fx = f_.eval(x0);
  if (fx.is_zero()) return {Place::branch(x0.value())};
  std::vector<Place> out;
  for (Fp y : nth_roots(fx, n_)) out.push_back(Place::finite(x0.value(), y.value()));
  return out;
}

Place Curve::sample_place(Rng& rng) const {
  for (int attempt = 0; attempt < 4096; ++attempt) {
    const Fp x0 = rng.uniform(p_);
    const Fp fx = f_.eval(x0);
    if (fx.is_zero()) continue;
    const auto ys = nth_roots(fx, n_);
    if (ys.empty()) continue;
    return Place::finite(x0.value(), ys[rng.below(ys.size())].value());
  }
  throw SamplingExhausted("no finite place found");
}

Place Curve::sample_place(uint64_t seed) const {
  Rng rng(seed);
  return sample_place(rng);
}

std::vector<Place> Curve::rational_places() const {
  std::vector<Place> out;
  for (uint32_t x = 0; x < p_; ++x) {
    auto over = places_over(Fp::raw(x, p_));
    out.insert(out.end(), over.begin(), over.end());
  }
  auto inf = infinite_places();
  out.insert(out.end(), inf.begin(), inf.end());
  std::sort(out.begin(), out.end());
  return out;
}

Divisor Curve::canonical_divisor() const {
  const int m = this->m();
  const int n = static_cast<int>(n_);
  Divisor K;
  // dx/y^{n-1} has no zeros or poles at finite places: at a branch point
  // dx vanishes to order n-1, exactly cancelling y^{n-1}.
  if (kind_ == InfinityKind::TotallyRamified) {
    K.add(Place::infinity(0), m * (n - 1) - n - 1);
  } else {
    const int each = (m / n) * (n - 1) - 2;
    for (unsigned i = 0; i < n_; ++i) K.add(Place::infinity(i), each);
  }
  if (K.degree() != 2 * genus_ - 2) throw InternalError("canonical divisor degree mismatch");
  return K;
}

int Curve::x_valuation(const Place& P) const {
  switch (P.kind) {
    case PlaceKind::Finite: return P.x == 0 ? 1 : 0;
    case PlaceKind::Branch: return P.x == 0 ? static_cast<int>(n_) : 0;
    case PlaceKind::Infinity: return kind_ == InfinityKind::Split ? -1 : -static_cast<int>(n_);
  }
  return 0;
}

int Curve::y_valuation(const Place& P) const {
  switch (P.kind) {
    case PlaceKind::Finite: return 0;
    case PlaceKind::Branch: return 1;
    case PlaceKind::Infinity:
      return kind_ == InfinityKind::Split ? -(m() / static_cast<int>(n_)) : -m();
  }
  return 0;
}

std::pair<LaurentSeries, LaurentSeries> Curve::local_xy(const Place& P, int precision) const {
  require_place(P);
  precision = std::max(precision, 2);
  const Fp zero = Fp::raw(0, p_), one = Fp::raw(1, p_);
  const int n = static_cast<int>(n_);
  const int m = this->m();
  switch (P.kind) {
    case PlaceKind::Finite: {
      const Fp x0 = Fp::raw(P.x, p_), y0 = Fp::raw(P.y, p_);
      auto xs = LaurentSeries::exact(0, {x0, one}, p_);
      const Poly F = f_.taylor_shift(x0);
      const Fp inv0 = F.coeff(0).inverse();
      std::vector<Fp> u;
      for (int k = 0; k <= F.degree(); ++k) u.push_back(F.coeff(k) * inv0);
      auto w = unit_series_root(u, n_, static_cast<size_t>(precision));
      for (auto& c : w) c *= y0;
      return {xs, LaurentSeries::truncated(0, std::move(w), p_)};
    }
    case PlaceKind::Branch: {
      const Fp x0 = Fp::raw(P.x, p_);
      const Poly F = f_.taylor_shift(x0);
      const int terms = std::max(2, (precision + n - 1) / n);
      auto r = series_reversion(F.coeffs(), static_cast<size_t>(terms));
      std::vector<Fp> xc(static_cast<size_t>(n * terms), zero);
      xc[0] = x0;
      for (int k = 1; k < terms; ++k) xc[static_cast<size_t>(n * k)] = r[k];
      return {LaurentSeries::truncated(0, std::move(xc), p_), LaurentSeries::exact(1, {one}, p_)};
    }
    case PlaceKind::Infinity: {
      const Fp c = f_.lead();
      std::vector<Fp> u;
      for (int j = 0; j <= m; ++j) u.push_back(f_.coeff(static_cast<size_t>(m - j)) / c);
      if (kind_ == InfinityKind::TotallyRamified) {
        const int terms = std::max(2, (precision + m + n - 1) / n);
        auto w = unit_series_root(u, n_, static_cast<size_t>(terms));
        std::vector<Fp> yc(static_cast<size_t>(n * terms), zero);
        for (int k = 0; k < terms; ++k) yc[static_cast<size_t>(n * k)] = w[k] * lead_root_;
        return {LaurentSeries::exact(-n, {one}, p_), LaurentSeries::truncated(-m, std::move(yc), p_)};
      }
      const int q = m / n;
      const Fp rho = zeta_.pow(P.index) * lead_root_;
      auto w = unit_series_root(u, n_, static_cast<size_t>(precision + q));
      for (auto& v : w) v *= rho;
      return {LaurentSeries::exact(-1, {one}, p_), LaurentSeries::truncated(-q, std::move(w), p_)};
    }
  }
  throw InternalError("unknown place kind");
}

namespace {

LaurentSeries horner(const Poly& a, const LaurentSeries& xs, uint32_t p) {
  if (a.is_zero()) return LaurentSeries::exact(0, {}, p);
  LaurentSeries s = LaurentSeries::exact(0, {a.lead()}, p);
  for (int i = a.degree() - 1; i >= 0; --i)
    s = s * xs + LaurentSeries::exact(0, {a.coeff(static_cast<size_t>(i))}, p);
  return s;
}

}  // namespace

LaurentSeries Curve::numerator_series(const std::vector<Poly>& num, const Place& P, int prec) const {
  // The coordinates need extra room to absorb the poles of x and y.
  int margin = 2;
  int maxdeg = 0;
  for (const auto& c : num) maxdeg = std::max(maxdeg, c.degree());
  if (P.kind == PlaceKind::Infinity)
    margin += maxdeg * -x_valuation(P) + static_cast<int>(n_ - 1) * -y_valuation(P);
  for (int round = 0; round < 12; ++round) {
    auto [xs, ys] = local_xy(P, prec + margin);
    LaurentSeries acc = LaurentSeries::exact(0, {}, p_);
    LaurentSeries ypow = LaurentSeries::exact(0, {Fp::raw(1, p_)}, p_);
    for (size_t b = 0; b < num.size(); ++b) {
      if (b > 0) ypow = ypow * ys;
      if (num[b].is_zero()) continue;
      acc = acc + horner(num[b], xs, p_) * ypow;
    }
    if (acc.precision() >= prec) return acc;
    margin = 2 * margin + 8;
  }
  throw InternalError("could not reach requested series precision");
}

LaurentSeries Curve::expand(const Function& h, const Place& P, int order) const {
  require_place(P);
  if (h.n() != n_ || h.modulus() != p_) throw CharacteristicMismatch("function from another curve");
  order = std::max(order, 0);
  const int need = order + 1;
  if (h.is_zero()) return LaurentSeries::exact(0, {}, p_);

  int lower = 0;
  if (P.kind == PlaceKind::Infinity)
    lower = -(h.max_numerator_degree() * -x_valuation(P) + static_cast<int>(n_ - 1) * -y_valuation(P));
  // A nonzero function has at most as many zeros as poles.
  const int cap = static_cast<int>(n_) * (h.max_numerator_degree() + m() + 1) + 16;

  auto expand_to = [&](const std::vector<Poly>& num, int lo) {
    int extra = 0;
    for (;;) {
      auto s = numerator_series(num, P, lo + need + extra).normalized();
      if (s.is_exact() || s.known_terms() >= need) return s;
      if (extra > cap) throw InternalError("series vanishes beyond the zero bound");
      extra = extra ? 2 * extra : 8;
    }
  };

  const LaurentSeries N = expand_to(h.numerator(), lower);
  const Poly& Q = h.denominator();
  if (Q.degree() == 0) {
    auto out = N * Q.lead().inverse();
    return out.truncate(*out.valuation() + need);
  }
  int qlower = 0;
  if (P.kind == PlaceKind::Infinity) qlower = Q.degree() * x_valuation(P);
  const LaurentSeries D = expand_to({Q}, qlower);
  auto out = N * D.inverse(need);
  return out.truncate(*out.normalized().valuation() + need);
}

std::optional<int> Curve::valuation(const Function& h, const Place& P) const {
  if (h.is_zero()) return std::nullopt;
  return expand(h, P, 0).normalized().valuation();
}

Fp Curve::evaluate(const Function& h, const Place& P) const {
  if (P.kind == PlaceKind::Finite) {
    const Fp x0 = Fp::raw(P.x, p_);
    const Fp q = h.denominator().eval(x0);
    if (!q.is_zero()) {
      const Fp y0 = Fp::raw(P.y, p_);
      Fp acc = Fp::raw(0, p_), yp = Fp::raw(1, p_);
      for (const auto& c : h.numerator()) {
        acc += c.eval(x0) * yp;
        yp *= y0;
      }
      return acc / q;
    }
  }
  if (h.is_zero()) return Fp::raw(0, p_);
  const auto s = expand(h, P, 0).normalized();
  const int v = *s.valuation();
  if (v < 0) throw PreconditionError("function has a pole at " + P.str());
  return s.coeff(0);
}

Function Curve::constant(Fp c) const {
  std::vector<Poly> num(n_, Poly(p_));
  num[0] = Poly::constant(c);
  return Function(std::move(num), Poly::constant(Fp::raw(1, p_)));
}

Function Curve::x() const { return from_poly(Poly::monomial(Fp::raw(1, p_), 1)); }

Function Curve::y() const {
  std::vector<Poly> num(n_, Poly(p_));
  num[1] = Poly::constant(Fp::raw(1, p_));
  return Function(std::move(num), Poly::constant(Fp::raw(1, p_)));
}

Function Curve::from_poly(const Poly& px) const {
  std::vector<Poly> num(n_, Poly(p_));
  num[0] = px;
  return Function(std::move(num), Poly::constant(Fp::raw(1, p_)));
}

Function Curve::multiply(const Function& a, const Function& b) const {
  if (a.n() != n_ || b.n() != n_) throw CharacteristicMismatch("function from another curve");
  std::vector<Poly> num(n_, Poly(p_));
  for (unsigned i = 0; i < n_; ++i) {
    if (a.numerator()[i].is_zero()) continue;
    for (unsigned j = 0; j < n_; ++j) {
      if (b.numerator()[j].is_zero()) continue;
      Poly prod = a.numerator()[i] * b.numerator()[j];
      if (i + j >= n_) {
        num[i + j - n_] += prod * f_;
      } else {
        num[i + j] += prod;
      }
    }
  }
  return Function(std::move(num), a.denominator() * b.denominator());
}

bool Curve::equal(const Function& a, const Function& b) const {
  for (unsigned i = 0; i < n_; ++i)
    if (!(a.numerator()[i] * b.denominator() == b.numerator()[i] * a.denominator())) return false;
  return true;
}

Function::Function(std::vector<Poly> numerator, Poly denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw PreconditionError("zero denominator");
  const uint32_t p = den_.modulus();
  for (auto& c : num_)
    if (c.modulus() == 0) c = Poly(p);
  // Keep the denominator monic.
  const Fp l = den_.lead();
  if (!l.is_one()) {
    const Fp inv = l.inverse();
    den_ = den_ * inv;
    for (auto& c : num_) c = c * inv;
  }
}

bool Function::is_zero() const {
  for (const auto& c : num_)
    if (!c.is_zero()) return false;
  return true;
}

int Function::max_numerator_degree() const {
  int d = 0;
  for (const auto& c : num_) d = std::max(d, c.degree());
  return d;
}

Function Function::operator+(const Function& o) const {
  if (o.n() != n()) throw CharacteristicMismatch("function from another curve");
  std::vector<Poly> num(n(), Poly(modulus()));
  if (den_ == o.den_) {
    for (size_t i = 0; i < n(); ++i) num[i] = num_[i] + o.num_[i];
    return Function(std::move(num), den_);
  }
  for (size_t i = 0; i < n(); ++i) num[i] = num_[i] * o.den_ + o.num_[i] * den_;
  return Function(std::move(num), den_ * o.den_);
}

Function Function::operator-(const Function& o) const { return *this + o * Fp::raw(modulus() - 1, modulus()); }

Function Function::operator*(Fp s) const {
  std::vector<Poly> num = num_;
  for (auto& c : num) c = c * s;
  return Function(std::move(num), den_);
}

}  // namespace cliff::curve
