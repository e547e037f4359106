#include "cliffkit/koszul/koszul.hpp"

#include <algorithm>
#include <sstream>

#include "cliffkit/exactla/linalg.hpp"
#include "cliffkit/exactla/prime_span.hpp"
#include "cliffkit/shiffer/shiffer.hpp"

namespace cliff::koszul {

namespace {

la::Matrix<Fp> empty_matrix(size_t rows, size_t cols, uint32_t ch) { return la::Matrix<Fp>(rows, cols, ch); }

bool product_is_zero(const la::Matrix<Fp>& a, const la::Matrix<Fp>& b) {
  if (a.rows() == 0 || a.cols() == 0 || b.cols() == 0) return true;
  const auto c = a * b;
  for (size_t i = 0; i < c.rows(); ++i)
    for (size_t j = 0; j < c.cols(); ++j)
      if (!c(i, j).is_zero()) return false;
  return true;
}

size_t safe_rank(const la::Matrix<Fp>& m) { return (m.rows() == 0 || m.cols() == 0) ? 0 : la::rank(m); }

// (phi(w_a w_b))_{a,b} from the W x W -> M^2 structure constants.
la::Matrix<Fp> variation_matrix(const KoszulComplex& K, const std::vector<Fp>& phi) {
  const size_t N = K.wdim();
  const auto& mu = K.structure(1);
  const uint32_t p = static_cast<uint32_t>(K.curve().p());
  la::Matrix<Fp> m(N, N, p);
  for (size_t a = 0; a < N; ++a)
    for (size_t b = 0; b < N; ++b) m(a, b) = la::dot(mu[a * N + b], phi);
  return m;
}

std::vector<std::vector<Fp>> image_basis(const la::Matrix<Fp>& m) {
  la::PrimeSpan span(m.rows(), m.characteristic());
  for (size_t c = 0; c < m.cols(); ++c) span.add(m.col(c));
  return span.basis();
}

}  // namespace

WedgeBasis::WedgeBasis(size_t n, size_t p) {
  if (p > n) return;
  if (p == 0) {
    sets_.push_back({});
    index_[{}] = 0;
    return;
  }
  auto idx = la::first_combination(p);
  do {
    index_[idx] = sets_.size();
    sets_.push_back(idx);
  } while (la::next_combination(idx, n));
}

size_t WedgeBasis::index(const std::vector<size_t>& sorted) const {
  auto it = index_.find(sorted);
  if (it == index_.end()) throw PreconditionError("not a wedge basis subset");
  return it->second;
}

la::Matrix<Fp> koszul_matrix(size_t wdim, size_t p, size_t src_dim, size_t tgt_dim,
                             const std::vector<std::vector<Fp>>& mult, uint32_t ch, size_t budget) {
  const WedgeBasis src(wdim, p);
  const size_t cols = src.size() * src_dim;
  if (p == 0) return empty_matrix(0, cols, ch);
  const WedgeBasis tgt(wdim, p - 1);
  const size_t rows = tgt.size() * tgt_dim;
  if (static_cast<double>(rows) * static_cast<double>(cols) > static_cast<double>(budget))
    throw BudgetExceeded("koszul boundary " + std::to_string(rows) + " x " + std::to_string(cols) +
                         " exceeds the entry budget of " + std::to_string(budget));
  if (mult.size() != wdim * src_dim) throw PreconditionError("structure constants have the wrong shape");
  la::Matrix<Fp> d(rows, cols, ch);
  std::vector<size_t> omit(p - 1);
  for (size_t s = 0; s < src.size(); ++s) {
    const auto& S = src.subset(s);
    for (size_t i = 0; i < p; ++i) {
      omit.clear();
      for (size_t j = 0; j < p; ++j)
        if (j != i) omit.push_back(S[j]);
      const size_t t = tgt.index(omit);
      const bool negate = i % 2 == 1;
      for (size_t c = 0; c < src_dim; ++c) {
        const auto& prod = mult[S[i] * src_dim + c];
        const size_t col = s * src_dim + c;
        for (size_t e = 0; e < tgt_dim; ++e) {
          if (prod[e].is_zero()) continue;
          d(t * tgt_dim + e, col) += negate ? -prod[e] : prod[e];
        }
      }
    }
  }
  return d;
}

KoszulComplex::KoszulComplex(const Curve& C, LineBundle L, size_t budget)
    : C_(&C), L_(std::move(L)), budget_(budget) {
  bases_.push_back(curve::riemann_roch_space(C, Divisor()));
  bases_.push_back(curve::riemann_roch_space(C, L_.representative));
  if (bases_[0].dim() != 1) throw InternalError("H^0(O) is not one-dimensional");
}

const RRBasis& KoszulComplex::basis(int q) const {
  if (q < 0) throw PreconditionError("negative module degree");
  while (static_cast<int>(bases_.size()) <= q) structure(static_cast<int>(bases_.size()) - 1);
  return bases_[q];
}

size_t KoszulComplex::module_dim(int q) const { return q < 0 ? 0 : basis(q).dim(); }

const std::vector<std::vector<Fp>>& KoszulComplex::structure(int q) const {
  if (q < 0) throw PreconditionError("negative module degree");
  auto it = structure_.find(q);
  if (it != structure_.end()) return it->second;
  const uint32_t p = static_cast<uint32_t>(C_->p());
  std::vector<std::vector<Fp>> mu;
  if (q == 0) {
    // w_a * 1 = w_a.
    const size_t N = bases_[1].dim();
    for (size_t a = 0; a < N; ++a) {
      std::vector<Fp> e(N, Fp(0, p));
      e[a] = Fp(1, p);
      mu.push_back(e);
    }
  } else {
    basis(q);  // may grow bases_, so take references only afterwards
    auto T = linser::mult_map(*C_, bases_[1], bases_[q]);
    if (static_cast<int>(bases_.size()) == q + 1) bases_.push_back(std::move(T.b12));
    mu = std::move(T.mu);
  }
  return structure_.emplace(q, std::move(mu)).first->second;
}

void KoszulComplex::guard(int p, int q) const {
  if (C_->p() <= static_cast<uint64_t>(std::max(p, q) + 1))
    throw PreconditionError("characteristic too small for this Koszul slot");
}

la::Matrix<Fp> KoszulComplex::boundary(int p, int q) const {
  guard(p, q);
  const uint32_t ch = static_cast<uint32_t>(C_->p());
  const size_t N = wdim();
  if (p < 0) return empty_matrix(0, 0, ch);
  if (q < 0) {
    const size_t rows = p == 0 ? 0 : WedgeBasis(N, p - 1).size() * module_dim(q + 1);
    return empty_matrix(rows, 0, ch);
  }
  return koszul_matrix(N, static_cast<size_t>(p), module_dim(q), module_dim(q + 1), structure(q), ch, budget_);
}

KoszulSlice KoszulComplex::slice(int p, int q) const {
  KoszulSlice s;
  s.p = p;
  s.q = q;
  s.incoming = boundary(p + 1, q - 1);
  s.outgoing = boundary(p, q);
  s.middle = WedgeBasis(wdim(), p < 0 ? 0 : p).size() * module_dim(q);
  if (p < 0) s.middle = 0;
  s.rank_in = safe_rank(s.incoming);
  s.rank_out = safe_rank(s.outgoing);
  s.square_zero = product_is_zero(s.outgoing, s.incoming);
  return s;
}

size_t KoszulComplex::dual_dim(int p, int q) const {
  const auto s = slice(p, q);
  const size_t in_t = safe_rank(s.incoming.transpose());
  const size_t out_t = safe_rank(s.outgoing.transpose());
  return s.middle - in_t - out_t;
}

std::string BettiTable::str() const {
  std::ostringstream os;
  os << "q\\p";
  for (int p = 0; p <= pmax; ++p) os << '\t' << p;
  os << '\n';
  for (int q = 0; q <= qmax; ++q) {
    os << q;
    for (int p = 0; p <= pmax; ++p) os << '\t' << at(p, q);
    os << '\n';
  }
  return os.str();
}

BettiTable betti_table(const KoszulComplex& K, int pmax, int qmax) {
  BettiTable t;
  t.pmax = pmax;
  t.qmax = qmax;
  t.dims.assign(qmax + 1, std::vector<size_t>(pmax + 1, 0));
  for (int q = 0; q <= qmax; ++q)
    for (int p = 0; p <= pmax; ++p) t.dims[q][p] = K.dim(p, q);
  return t;
}

BettiTable betti_table(const Curve& C, const LineBundle& L, int pmax, int qmax) {
  return betti_table(KoszulComplex(C, L), pmax, qmax);
}

std::vector<Fp> decomposable_cochain(const std::vector<Fp>& phi, const std::vector<std::vector<Fp>>& factors,
                                     size_t wdim) {
  if (phi.empty()) throw PreconditionError("empty functional");
  const uint32_t ch = phi.front().modulus();
  const size_t p = factors.size();
  const WedgeBasis wb(wdim, p);
  std::vector<Fp> out(wb.size() * phi.size(), Fp(0, ch));
  for (size_t s = 0; s < wb.size(); ++s) {
    const auto& S = wb.subset(s);
    Fp val(1, ch);
    if (p > 0) {
      la::Matrix<Fp> m(p, p, ch);
      for (size_t i = 0; i < p; ++i)
        for (size_t j = 0; j < p; ++j) m(i, j) = factors[j].at(S[i]);
      val = la::determinant(m);
    }
    if (val.is_zero()) continue;
    for (size_t c = 0; c < phi.size(); ++c) out[s * phi.size() + c] = val * phi[c];
  }
  return out;
}

bool is_cocycle(const KoszulComplex& K, int p, int q, const std::vector<Fp>& v) {
  const auto A = K.boundary(p + 1, q - 1);
  if (A.rows() != v.size() && A.cols() != 0) throw PreconditionError("cochain has the wrong length");
  for (size_t c = 0; c < A.cols(); ++c) {
    Fp s(0, A.characteristic());
    for (size_t r = 0; r < A.rows(); ++r)
      if (!A(r, c).is_zero()) s += A(r, c) * v[r];
    if (!s.is_zero()) return false;
  }
  return true;
}

std::optional<std::vector<Fp>> coboundary_preimage(const KoszulComplex& K, int p, int q, const std::vector<Fp>& v) {
  const auto B = K.boundary(p, q);
  if (B.cols() != v.size()) throw PreconditionError("cochain has the wrong length");
  if (B.rows() == 0) {
    for (const auto& x : v)
      if (!x.is_zero()) return std::nullopt;
    return std::vector<Fp>{};
  }
  auto x = la::solve(B.transpose(), v);
  if (!x) return std::nullopt;
  // Confirm the preimage rather than trusting the solver.
  const auto Bt = B.transpose();
  for (size_t r = 0; r < Bt.rows(); ++r) {
    Fp s(0, B.characteristic());
    for (size_t c = 0; c < Bt.cols(); ++c) s += Bt(r, c) * (*x)[c];
    if (s != v[r]) throw InternalError("coboundary preimage does not reproduce the cochain");
  }
  return x;
}

ClassReport verify_nontrivial_class(const KoszulComplex& K, const LineBundle& L, const Divisor& D, uint64_t seed) {
  const Curve& C = K.curve();
  if (!(L.representative == K.basis(1).divisor)) throw PreconditionError("bundle does not match the complex");
  ClassReport out;
  const linser::Evaluator e(C, K.basis(1));
  const bool overlap = !D.disjoint_from(L.representative);
  const auto w = shiffer::min_rank_witness(C, e, D, seed, overlap);
  out.method = w.method;
  if (!w.ok()) throw PreconditionError("no minimal-rank variation on D: " + w.detail);
  out.c = static_cast<int>(w.rank);
  const auto phi = shiffer::datum_functional(C, K.basis(2), *w.datum, overlap);
  const auto M = variation_matrix(K, phi);
  const auto img = image_basis(M);
  if (img.size() != w.rank) throw InternalError("variation rank disagrees with its functional");
  const auto v = decomposable_cochain(phi, img, K.wdim());
  out.slice_dim = K.dim(out.c, 2);
  out.cocycle = is_cocycle(K, out.c, 2, v);
  out.coboundary = coboundary_preimage(K, out.c, 2, v).has_value();
  return out;
}

TrivialityReport verify_decomposable_trivial(const KoszulComplex& K, int p, size_t samples, uint64_t seed) {
  const Curve& C = K.curve();
  const uint32_t ch = static_cast<uint32_t>(C.p());
  TrivialityReport out;
  out.p = p;
  const size_t M2 = K.module_dim(2);
  auto test = [&](const std::vector<Fp>& v) {
    if (!is_cocycle(K, p, 2, v)) return;
    ++out.cocycles;
    if (coboundary_preimage(K, p, 2, v)) ++out.coboundaries;
  };
  if (p == 0) {
    la::PrimeSpan img(M2, ch);
    for (const auto& prod : K.structure(1)) img.add(prod);
    const auto ann = img.annihilator();
    out.vacuous = ann.empty();
    for (const auto& phi : ann) {
      ++out.samples;
      test(phi);
    }
    return out;
  }
  const linser::Evaluator e2(C, K.basis(2));
  const Divisor& avoid = K.basis(2).divisor;
  for (size_t t = 0; t < samples; ++t) {
    Rng rng(Rng::derive(seed, t));
    std::vector<curve::Place> pts;
    while (static_cast<int>(pts.size()) < p) {
      auto P = C.sample_place(rng);
      if (avoid.coefficient(P) == 0 && std::find(pts.begin(), pts.end(), P) == pts.end()) pts.push_back(P);
    }
    std::vector<Fp> phi(M2, Fp(0, ch));
    for (const auto& P : pts) {
      const Fp c = rng.nonzero(ch);
      const auto ev = e2.evaluation_vector(P);
      for (size_t i = 0; i < M2; ++i) phi[i] += c * ev[i];
    }
    const auto img = image_basis(variation_matrix(K, phi));
    if (static_cast<int>(img.size()) != p) continue;
    ++out.samples;
    test(decomposable_cochain(phi, img, K.wdim()));
  }
  return out;
}

}  // namespace cliff::koszul
