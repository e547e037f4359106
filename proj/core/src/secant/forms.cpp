#include "cliffkit/secant/forms.hpp"

#include <algorithm>

#include "cliffkit/util/errors.hpp"

namespace cliff::secant {

MonomialBasis::MonomialBasis(size_t vars, unsigned degree) : vars_(vars), degree_(degree) {
  if (vars == 0 && degree > 0) return;
  std::vector<uint16_t> cur(degree, 0);
  for (;;) {
    index_[cur] = monos_.size();
    monos_.push_back(cur);
    // next non-decreasing sequence
    int pos = static_cast<int>(degree) - 1;
    while (pos >= 0 && cur[pos] + 1u >= vars) --pos;
    if (pos < 0) break;
    ++cur[pos];
    for (size_t j = static_cast<size_t>(pos) + 1; j < degree; ++j) cur[j] = cur[pos];
  }
}

size_t MonomialBasis::index(const std::vector<uint16_t>& sorted) const {
  auto it = index_.find(sorted);
  if (it == index_.end()) throw InternalError("monomial out of range");
  return it->second;
}

std::vector<Fp> MonomialBasis::evaluate(const std::vector<Fp>& point) const {
  if (point.size() != vars_) throw PreconditionError("point has the wrong number of coordinates");
  const uint32_t p = point.empty() ? 0 : point[0].modulus();
  std::vector<Fp> out;
  out.reserve(monos_.size());
  for (const auto& m : monos_) {
    Fp v = Fp::raw(1, p);
    for (auto i : m) v *= point[i];
    out.push_back(v);
  }
  return out;
}

FormAlgebra::FormAlgebra(size_t vars, unsigned max_degree, uint32_t p) : p_(p) {
  if (p <= max_degree) throw PreconditionError("characteristic must exceed the form degree");
  for (unsigned k = 0; k <= max_degree; ++k) bases_.emplace_back(vars, k);
  for (unsigned k = 0; k < max_degree; ++k) {
    const auto& b = bases_[k];
    std::vector<uint32_t> table(b.size() * vars);
    for (size_t m = 0; m < b.size(); ++m)
      for (size_t v = 0; v < vars; ++v) {
        auto mono = b.monomial(m);
        mono.insert(std::upper_bound(mono.begin(), mono.end(), static_cast<uint16_t>(v)), static_cast<uint16_t>(v));
        table[m * vars + v] = static_cast<uint32_t>(bases_[k + 1].index(mono));
      }
    mul_.push_back(std::move(table));
  }
}

std::vector<Fp> FormAlgebra::times_linear(const std::vector<Fp>& form, unsigned k, const std::vector<Fp>& lin) const {
  const size_t vars = bases_[0].vars();
  if (k + 1 >= bases_.size()) throw PreconditionError("form degree exceeds the algebra");
  std::vector<uint64_t> acc(bases_[k + 1].size(), 0);
  const auto& table = mul_[k];
  for (size_t m = 0; m < form.size(); ++m) {
    const uint64_t c = form[m].value();
    if (!c) continue;
    for (size_t v = 0; v < vars; ++v) {
      const uint64_t l = lin[v].value();
      if (!l) continue;
      auto& slot = acc[table[m * vars + v]];
      slot = (slot + c * l) % p_;
    }
  }
  std::vector<Fp> out;
  out.reserve(acc.size());
  for (auto a : acc) out.push_back(Fp::raw(static_cast<uint32_t>(a), p_));
  return out;
}

std::vector<Fp> FormAlgebra::product(const std::vector<const std::vector<Fp>*>& lins) const {
  std::vector<Fp> acc{Fp::raw(1, p_)};
  for (unsigned k = 0; k < lins.size(); ++k) acc = times_linear(acc, k, *lins[k]);
  return acc;
}

Fp FormAlgebra::evaluate(const std::vector<Fp>& form, unsigned k, const std::vector<Fp>& point) const {
  const auto vals = bases_.at(k).evaluate(point);
  Fp s = Fp::raw(0, p_);
  for (size_t i = 0; i < form.size(); ++i)
    if (!form[i].is_zero()) s += form[i] * vals[i];
  return s;
}

std::vector<Fp> FormAlgebra::gradient(const std::vector<Fp>& form, unsigned k, const std::vector<Fp>& point) const {
  const size_t vars = bases_[0].vars();
  std::vector<Fp> g(vars, Fp::raw(0, p_));
  const auto& b = bases_.at(k);
  for (size_t m = 0; m < form.size(); ++m) {
    if (form[m].is_zero()) continue;
    const auto& mono = b.monomial(m);
    // d/dx_v of prod x_{i_j}: sum over positions j with i_j = v.
    for (size_t j = 0; j < mono.size(); ++j) {
      Fp rest = form[m];
      for (size_t l = 0; l < mono.size(); ++l)
        if (l != j) rest *= point[mono[l]];
      g[mono[j]] += rest;
    }
  }
  return g;
}

}  // namespace cliff::secant
