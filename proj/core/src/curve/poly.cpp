#include "cliffkit/curve/poly.hpp"

#include <algorithm>

#include "cliffkit/util/rng.hpp"

namespace cliff::curve {

Poly::Poly(std::vector<Fp> coeffs, uint32_t p) : p_(p), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.modulus() != p) throw CharacteristicMismatch();
  trim();
}

Poly Poly::from_ints(const std::vector<int64_t>& coeffs, uint32_t p) {
  std::vector<Fp> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.emplace_back(v, p);
  return Poly(std::move(c), p);
}

Poly Poly::constant(Fp c) { return Poly({c}, c.modulus()); }

Poly Poly::monomial(Fp c, size_t k) {
  std::vector<Fp> v(k + 1, Fp::raw(0, c.modulus()));
  v[k] = c;
  return Poly(std::move(v), c.modulus());
}

Poly Poly::x_minus(Fp a) { return Poly({-a, Fp::raw(1, a.modulus())}, a.modulus()); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
  if (p_ != o.p_) throw CharacteristicMismatch();
  std::vector<Fp> r(std::max(c_.size(), o.c_.size()), Fp::raw(0, p_));
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Poly(std::move(r), p_);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (p_ != o.p_) throw CharacteristicMismatch();
  if (c_.empty() || o.c_.empty()) return Poly(p_);
  std::vector<uint64_t> acc(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    const uint64_t a = c_[i].value();
    if (!a) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) acc[i + j] = (acc[i + j] + a * o.c_[j].value()) % p_;
  }
  std::vector<Fp> r;
  r.reserve(acc.size());
  for (auto v : acc) r.push_back(Fp::raw(static_cast<uint32_t>(v), p_));
  return Poly(std::move(r), p_);
}

Poly Poly::operator*(Fp s) const {
  Poly r = *this;
  for (auto& c : r.c_) c *= s;
  r.trim();
  return r;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  if (a.p_ != b.p_) throw CharacteristicMismatch();
  const uint32_t p = a.p_;
  std::vector<Fp> rem = a.c_;
  if (a.degree() < b.degree()) {
    q = Poly(p);
    r = a;
    return;
  }
  std::vector<Fp> quo(a.c_.size() - b.c_.size() + 1, Fp::raw(0, p));
  const Fp inv = b.lead().inverse();
  for (size_t k = quo.size(); k-- > 0;) {
    const Fp c = rem[k + b.c_.size() - 1] * inv;
    quo[k] = c;
    if (c.is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= c * b.c_[j];
  }
  q = Poly(std::move(quo), p);
  rem.resize(b.c_.size() - 1, Fp::raw(0, p));
  r = Poly(std::move(rem), p);
}

Poly Poly::operator/(const Poly& o) const {
  Poly q, r;
  divmod(*this, o, q, r);
  return q;
}

Poly Poly::operator%(const Poly& o) const {
  Poly q, r;
  divmod(*this, o, q, r);
  return r;
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

Fp Poly::eval(Fp x) const {
  if (x.modulus() != p_) throw CharacteristicMismatch();
  Fp acc = Fp::raw(0, p_);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(p_);
  std::vector<Fp> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Fp(static_cast<int64_t>(i), p_));
  return Poly(std::move(d), p_);
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inverse();
}

Poly Poly::pow(unsigned e) const {
  Poly acc = Poly::constant(Fp::raw(1, p_)), base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Poly Poly::powmod(uint64_t e, const Poly& mod) const {
  Poly acc = Poly::constant(Fp::raw(1, p_)) % mod, base = *this % mod;
  while (e) {
    if (e & 1) acc = (acc * base) % mod;
    base = (base * base) % mod;
    e >>= 1;
  }
  return acc;
}

Poly Poly::taylor_shift(Fp a) const {
  // Horner in the ring: f(x + a) = (...(c_m (x+a) + c_{m-1})(x+a) + ...).
  Poly shift = Poly({a, Fp::raw(1, p_)}, p_);
  Poly acc(p_);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * shift + Poly::constant(c_[i]);
  return acc;
}

bool Poly::is_squarefree() const {
  if (degree() <= 0) return true;
  return gcd(*this, derivative()).degree() == 0;
}

int Poly::root_multiplicity(Fp a) const {
  if (is_zero()) throw PreconditionError("multiplicity in the zero polynomial");
  int k = 0;
  Poly cur = *this;
  const Poly lin = x_minus(a);
  while (cur.eval(a).is_zero()) {
    cur = cur / lin;
    ++k;
  }
  return k;
}

namespace {

void split_roots(const Poly& g, Rng& rng, std::vector<Fp>& out) {
  const uint32_t p = g.modulus();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-g.coeff(0) / g.coeff(1));
    return;
  }
  for (;;) {
    Poly shifted = Poly({rng.uniform(p), Fp::raw(1, p)}, p);
    Poly h = shifted.powmod((p - 1) / 2, g) - Poly::constant(Fp::raw(1, p));
    Poly d = Poly::gcd(g, h);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_roots(d, rng, out);
      split_roots(g / d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Fp> Poly::roots() const {
  if (degree() <= 0) return {};
  std::vector<Fp> out;
  Poly f = monic();
  if (f.coeff(0).is_zero()) {
    out.push_back(Fp::raw(0, p_));
    while (f.coeff(0).is_zero()) f = f / Poly::monomial(Fp::raw(1, p_), 1);
  }
  // Product of the distinct nonzero linear factors: gcd(f, x^{p-1} - 1).
  Poly x = Poly::monomial(Fp::raw(1, p_), 1);
  Poly g = Poly::gcd(f, x.powmod(p_ - 1, f) - Poly::constant(Fp::raw(1, p_)));
  if (p_ == 2) {
    if (g.degree() > 0) out.push_back(Fp::raw(1, 2));
  } else {
    Rng rng(0x5eedULL ^ p_);
    split_roots(g, rng, out);
  }
  std::sort(out.begin(), out.end(), [](Fp a, Fp b) { return a.value() < b.value(); });
  return out;
}

Fp primitive_root(uint32_t p) {
  if (p == 2) return Fp::raw(1, 2);
  std::vector<uint32_t> factors;
  uint32_t m = p - 1;
  for (uint32_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) factors.push_back(m);
  for (uint32_t g = 2; g < p; ++g) {
    Fp cand = Fp::raw(g, p);
    bool ok = true;
    for (auto q : factors)
      if (cand.pow((p - 1) / q).is_one()) {
        ok = false;
        break;
      }
    if (ok) return cand;
  }
  throw InternalError("no primitive root found");
}

std::vector<Fp> nth_roots(Fp a, unsigned n) {
  const uint32_t p = a.modulus();
  if (a.is_zero()) return {a};
  if (n == 1) return {a};
  // Quick reject via the power-residue criterion when n | p - 1.
  if ((p - 1) % n == 0 && !a.pow((p - 1) / n).is_one()) return {};
  std::vector<Fp> c(n + 1, Fp::raw(0, p));
  c[0] = -a;
  c[n] = Fp::raw(1, p);
  return Poly(std::move(c), p).roots();
}

}  // namespace cliff::curve
