#include "cliffkit/curve/series.hpp"

#include <algorithm>

namespace cliff::curve {

LaurentSeries LaurentSeries::truncated(int start, std::vector<Fp> coeffs, uint32_t p) {
  LaurentSeries s;
  s.p_ = p;
  s.start_ = start;
  s.c_ = std::move(coeffs);
  return s;
}

LaurentSeries LaurentSeries::exact(int start, std::vector<Fp> coeffs, uint32_t p) {
  LaurentSeries s = truncated(start, std::move(coeffs), p);
  s.exact_ = true;
  return s.normalized();
}

LaurentSeries LaurentSeries::zero_to(int precision, uint32_t p) { return truncated(precision, {}, p); }

Fp LaurentSeries::coeff(int e) const {
  if (e < start_) return Fp::raw(0, p_);
  const int k = e - start_;
  if (k < static_cast<int>(c_.size())) return c_[k];
  if (exact_) return Fp::raw(0, p_);
  throw InternalError("series coefficient requested beyond truncation order");
}

std::optional<int> LaurentSeries::valuation() const {
  for (size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return start_ + static_cast<int>(k);
  return std::nullopt;
}

Fp LaurentSeries::leading_coefficient() const {
  auto v = valuation();
  if (!v) throw PreconditionError("leading coefficient of a zero series");
  return coeff(*v);
}

int LaurentSeries::known_terms() const {
  auto v = valuation();
  if (!v) return 0;
  if (exact_) return kExactPrecision;
  return precision() - *v;
}

LaurentSeries LaurentSeries::normalized() const {
  LaurentSeries s = *this;
  size_t lead = 0;
  while (lead < s.c_.size() && s.c_[lead].is_zero()) ++lead;
  if (lead == s.c_.size()) {
    // Zero to precision (or exactly zero).
    s.start_ = exact_ ? 0 : precision();
    s.c_.clear();
    return s;
  }
  s.c_.erase(s.c_.begin(), s.c_.begin() + lead);
  s.start_ += static_cast<int>(lead);
  if (exact_)
    while (!s.c_.empty() && s.c_.back().is_zero()) s.c_.pop_back();
  return s;
}

LaurentSeries LaurentSeries::truncate(int precision) const {
  LaurentSeries s = *this;
  s.exact_ = false;
  if (precision <= s.start_) return zero_to(precision, p_);
  const size_t len = static_cast<size_t>(precision - s.start_);
  s.c_.resize(len, Fp::raw(0, p_));
  return s;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
  if (p_ != o.p_) throw CharacteristicMismatch();
  const bool ex = exact_ && o.exact_;
  const int lo = std::min(start_, o.start_);
  int hi;
  if (ex)
    hi = std::max(start_ + static_cast<int>(c_.size()), o.start_ + static_cast<int>(o.c_.size()));
  else
    hi = std::min(precision(), o.precision());
  std::vector<Fp> c;
  if (hi > lo) {
    c.reserve(hi - lo);
    for (int e = lo; e < hi; ++e) c.push_back(coeff(e) + o.coeff(e));
  }
  LaurentSeries s = truncated(std::min(lo, hi), std::move(c), p_);
  s.exact_ = ex;
  return s;
}

LaurentSeries LaurentSeries::operator*(Fp sc) const {
  LaurentSeries s = *this;
  for (auto& c : s.c_) c *= sc;
  return s;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const {
  return *this + o * Fp::raw(p_ - 1, p_);
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
  if (p_ != o.p_) throw CharacteristicMismatch();
  const LaurentSeries a = normalized(), b = o.normalized();
  if ((a.exact_ && a.c_.empty()) || (b.exact_ && b.c_.empty())) return exact(0, {}, p_);
  const int start = a.start_ + b.start_;
  const size_t la = a.c_.size(), lb = b.c_.size();
  size_t len;
  if (a.exact_ && b.exact_)
    len = la + lb - 1;
  else if (a.exact_)
    len = lb;
  else if (b.exact_)
    len = la;
  else
    len = std::min(la, lb);
  std::vector<uint64_t> acc(len, 0);
  for (size_t i = 0; i < la && i < len; ++i) {
    const uint64_t x = a.c_[i].value();
    if (!x) continue;
    for (size_t j = 0; j < lb && i + j < len; ++j) acc[i + j] = (acc[i + j] + x * b.c_[j].value()) % p_;
  }
  std::vector<Fp> c;
  c.reserve(len);
  for (auto v : acc) c.push_back(Fp::raw(static_cast<uint32_t>(v), p_));
  LaurentSeries s = truncated(start, std::move(c), p_);
  s.exact_ = a.exact_ && b.exact_;
  return s;
}

LaurentSeries LaurentSeries::inverse(int rel_terms) const {
  const LaurentSeries a = normalized();
  if (a.c_.empty()) throw PreconditionError("inverse of a series that is zero to its precision");
  if (a.exact_ && a.c_.size() == 1) return exact(-a.start_, {a.c_[0].inverse()}, p_);
  size_t len = static_cast<size_t>(std::max(rel_terms, 1));
  if (!a.exact_) len = std::min(len, a.c_.size());
  std::vector<Fp> b(len, Fp::raw(0, p_));
  const Fp inv0 = a.c_[0].inverse();
  b[0] = inv0;
  for (size_t k = 1; k < len; ++k) {
    Fp s = Fp::raw(0, p_);
    for (size_t j = 1; j <= k && j < a.c_.size(); ++j) s += a.c_[j] * b[k - j];
    b[k] = -s * inv0;
  }
  return truncated(-a.start_, std::move(b), p_);
}

LaurentSeries LaurentSeries::pow(unsigned e) const {
  LaurentSeries acc = exact(0, {Fp::raw(1, p_)}, p_);
  for (unsigned i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

namespace {

// Coefficient matching in w^n = u; valid past t^p where the derivative
// recurrence divides by zero.
std::vector<Fp> unit_series_root_slow(const std::vector<Fp>& u, unsigned n, size_t terms) {
  const uint32_t p = u[0].modulus();
  const Fp inv_n = Fp(static_cast<int64_t>(n), p).inverse();
  std::vector<Fp> w(terms, Fp::raw(0, p));
  if (terms == 0) return w;
  w[0] = Fp::raw(1, p);
  for (size_t k = 1; k < terms; ++k) {
    std::vector<Fp> pw(k + 1, Fp::raw(0, p));
    pw[0] = Fp::raw(1, p);
    for (unsigned e = 0; e < n; ++e) {
      std::vector<Fp> next(k + 1, Fp::raw(0, p));
      for (size_t i = 0; i <= k; ++i) {
        if (pw[i].is_zero()) continue;
        for (size_t j = 0; i + j <= k; ++j) next[i + j] += pw[i] * w[j];
      }
      pw = std::move(next);
    }
    const Fp uk = k < u.size() ? u[k] : Fp::raw(0, p);
    w[k] = (uk - pw[k]) * inv_n;
  }
  return w;
}

}  // namespace

std::vector<Fp> unit_series_root(const std::vector<Fp>& u, unsigned n, size_t terms) {
  if (u.empty() || !u[0].is_one()) throw PreconditionError("unit_series_root needs u_0 = 1");
  const uint32_t p = u[0].modulus();
  if (terms > p) return unit_series_root_slow(u, n, terms);
  const Fp alpha = Fp(static_cast<int64_t>(n), p).inverse();
  std::vector<Fp> w(terms, Fp::raw(0, p));
  if (terms == 0) return w;
  w[0] = Fp::raw(1, p);
  // k w_k = sum_{j=1}^{k} (alpha j - (k - j)) u_j w_{k-j}, from w' u = alpha u' w.
  for (size_t k = 1; k < terms; ++k) {
    Fp s = Fp::raw(0, p);
    for (size_t j = 1; j <= k && j < u.size(); ++j) {
      if (u[j].is_zero()) continue;
      const Fp coef = alpha * Fp(static_cast<int64_t>(j), p) - Fp(static_cast<int64_t>(k - j), p);
      s += coef * u[j] * w[k - j];
    }
    w[k] = s / Fp(static_cast<int64_t>(k), p);
  }
  return w;
}

std::vector<Fp> series_reversion(const std::vector<Fp>& a, size_t terms) {
  if (a.size() < 2 || !a[0].is_zero() || a[1].is_zero())
    throw PreconditionError("series_reversion needs a_0 = 0, a_1 != 0");
  const uint32_t p = a[1].modulus();
  std::vector<Fp> r(terms, Fp::raw(0, p));
  if (terms < 2) return r;
  const Fp inv1 = a[1].inverse();
  r[1] = inv1;
  // Coefficient-by-coefficient: with r_k unset, [s^k] F(R) = a_1 r_k + rest.
  for (size_t k = 2; k < terms; ++k) {
    // powers of R truncated to degree k
    std::vector<Fp> power(k + 1, Fp::raw(0, p));
    std::vector<Fp> rr(r.begin(), r.begin() + k + 1);
    power = rr;
    Fp coef = Fp::raw(0, p);
    for (size_t j = 2; j <= k && j < a.size(); ++j) {
      std::vector<Fp> next(k + 1, Fp::raw(0, p));
      for (size_t x = 1; x <= k; ++x) {
        if (power[x].is_zero()) continue;
        for (size_t y = 1; x + y <= k; ++y) next[x + y] += power[x] * rr[y];
      }
      power = std::move(next);
      coef += a[j] * power[k];
    }
    r[k] = -coef * inv1;
  }
  return r;
}

}  // namespace cliff::curve
