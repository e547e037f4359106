#pragma once

#include <algorithm>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "cliffkit/exactla/matrix.hpp"

namespace cliff::la {

// Fraction-free (Bareiss) routines over Q; defined in rational.cpp.
size_t bareiss_rank(const MatrixQ& m);
Rational bareiss_determinant(const MatrixQ& m);
// Elimination on raw residues; defined in prime_span.cpp.
size_t prime_rank(const Matrix<Fp>& m);

template <class F>
struct Echelon {
  Matrix<F> reduced;            // reduced row echelon form
  std::vector<size_t> pivots;   // pivot column of each nonzero row
};

template <class F>
Echelon<F> row_reduce(Matrix<F> m) {
  using T = FieldTraits<F>;
  const size_t rows = m.rows(), cols = m.cols();
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = rows;
    for (size_t i = r; i < rows; ++i)
      if (!T::is_zero(m(i, c))) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r)
      for (size_t j = c; j < cols; ++j) std::swap(m(sel, j), m(r, j));
    F inv = T::inverse(m(r, c));
    for (size_t j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || T::is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (size_t j = c; j < cols; ++j)
        if (!T::is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

// Plain forward elimination; used for F_p.
template <class F>
size_t forward_rank(Matrix<F> m) {
  using T = FieldTraits<F>;
  const size_t rows = m.rows(), cols = m.cols();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = rows;
    for (size_t i = r; i < rows; ++i)
      if (!T::is_zero(m(i, c))) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r)
      for (size_t j = c; j < cols; ++j) std::swap(m(sel, j), m(r, j));
    F inv = T::inverse(m(r, c));
    for (size_t i = r + 1; i < rows; ++i) {
      if (T::is_zero(m(i, c))) continue;
      F f = m(i, c) * inv;
      for (size_t j = c; j < cols; ++j)
        if (!T::is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

template <class F>
size_t rank(const Matrix<F>& m) {
  if constexpr (std::is_same_v<F, Rational>)
    return bareiss_rank(m);
  else if constexpr (std::is_same_v<F, Fp>)
    return prime_rank(m);
  else
    return forward_rank(m);
}

template <class F>
std::vector<std::vector<F>> kernel_basis(const Matrix<F>& m) {
  using T = FieldTraits<F>;
  auto ech = row_reduce(m);
  const size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : ech.pivots) is_pivot[c] = true;
  std::vector<std::vector<F>> out;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<F> v(cols, T::zero(m.characteristic()));
    v[f] = T::one(m.characteristic());
    for (size_t k = 0; k < ech.pivots.size(); ++k) v[ech.pivots[k]] = -ech.reduced(k, f);
    out.push_back(std::move(v));
  }
  return out;
}

template <class F>
F determinant(const Matrix<F>& src) {
  using T = FieldTraits<F>;
  if (src.rows() != src.cols()) throw PreconditionError("determinant of non-square matrix");
  if constexpr (std::is_same_v<F, Rational>) {
    return bareiss_determinant(src);
  } else {
    Matrix<F> m = src;
    const size_t n = m.rows();
    F det = T::one(m.characteristic());
    for (size_t c = 0; c < n; ++c) {
      size_t sel = n;
      for (size_t i = c; i < n; ++i)
        if (!T::is_zero(m(i, c))) {
          sel = i;
          break;
        }
      if (sel == n) return T::zero(m.characteristic());
      if (sel != c) {
        for (size_t j = c; j < n; ++j) std::swap(m(sel, j), m(c, j));
        det = -det;
      }
      det = det * m(c, c);
      F inv = T::inverse(m(c, c));
      for (size_t i = c + 1; i < n; ++i) {
        if (T::is_zero(m(i, c))) continue;
        F f = m(i, c) * inv;
        for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
      }
    }
    return det;
  }
}

// Solve a·x = b; nullopt when inconsistent.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& a, const std::vector<F>& b) {
  using T = FieldTraits<F>;
  if (b.size() != a.rows()) throw PreconditionError("solve: length mismatch");
  Matrix<F> aug(a.rows(), a.cols() + 1, a.characteristic());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto ech = row_reduce(std::move(aug));
  std::vector<F> x(a.cols(), T::zero(a.characteristic()));
  for (size_t k = 0; k < ech.pivots.size(); ++k) {
    if (ech.pivots[k] == a.cols()) return std::nullopt;
    x[ech.pivots[k]] = ech.reduced(k, a.cols());
  }
  return x;
}

// Advance idx (strictly increasing, values < n) to the next combination in
// lexicographic order.  Returns false after the last one.
inline bool next_combination(std::vector<size_t>& idx, size_t n) {
  const size_t k = idx.size();
  for (size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<size_t> first_combination(size_t k) {
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

// Streams every k x k minor as fn(row_set, col_set, det), row sets outer,
// both in lexicographic order.  Nothing is materialized beyond one minor.
template <class F, class Fn>
void for_each_minor(const Matrix<F>& m, size_t k, Fn&& fn) {
  if (k == 0 || k > std::min(m.rows(), m.cols())) throw PreconditionError("minor size out of range");
  auto rows = first_combination(k);
  do {
    auto cols = first_combination(k);
    do {
      fn(rows, cols, determinant(m.submatrix(rows, cols)));
    } while (next_combination(cols, m.cols()));
  } while (next_combination(rows, m.rows()));
}

// Incrementally maintained echelon basis of a span.  Rows are kept with a
// unit pivot and zeros in all earlier pivots, so reduction runs in
// insertion order.  merge() is order-insensitive in the resulting span.
template <class F>
class SpanAccumulator {
 public:
  using T = FieldTraits<F>;

  SpanAccumulator(size_t length, uint32_t ch) : length_(length), ch_(ch) {}

  size_t length() const { return length_; }
  size_t dim() const { return rows_.size(); }
  uint32_t characteristic() const { return ch_; }
  const std::vector<std::vector<F>>& basis() const { return rows_; }

  // Reduce v against the current basis in place; returns the pivot of the
  // residual or length() when v lies in the span.
  size_t reduce(std::vector<F>& v) const {
    if (v.size() != length_) throw PreconditionError("span: vector length mismatch");
    for (size_t k = 0; k < rows_.size(); ++k) {
      const F c = v[pivots_[k]];
      if (T::is_zero(c)) continue;
      const auto& r = rows_[k];
      for (size_t j = pivots_[k]; j < length_; ++j)
        if (!T::is_zero(r[j])) v[j] -= c * r[j];
    }
    for (size_t j = 0; j < length_; ++j)
      if (!T::is_zero(v[j])) return j;
    return length_;
  }

  bool contains(std::vector<F> v) const { return reduce(v) == length_; }

  bool add(std::vector<F> v) {
    for (const auto& x : v)
      if (T::characteristic(x) != ch_) throw CharacteristicMismatch();
    size_t piv = reduce(v);
    if (piv == length_) return false;
    F inv = T::inverse(v[piv]);
    for (size_t j = piv; j < length_; ++j) v[j] = v[j] * inv;
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

  void merge(const SpanAccumulator& other) {
    if (other.ch_ != ch_ || other.length_ != length_) throw CharacteristicMismatch();
    for (const auto& r : other.rows_) add(r);
  }

  // Basis of the vectors orthogonal (under the plain dot product) to the span.
  std::vector<std::vector<F>> annihilator() const {
    Matrix<F> m(rows_.size(), length_, ch_);
    for (size_t i = 0; i < rows_.size(); ++i)
      for (size_t j = 0; j < length_; ++j) m(i, j) = rows_[i][j];
    return kernel_basis(m);
  }

 private:
  size_t length_;
  uint32_t ch_;
  std::vector<std::vector<F>> rows_;
  std::vector<size_t> pivots_;
};

template <class F>
size_t span_dim(const std::vector<std::vector<F>>& vectors, uint32_t ch) {
  if (vectors.empty()) return 0;
  SpanAccumulator<F> acc(vectors.front().size(), ch);
  for (const auto& v : vectors) acc.add(v);
  return acc.dim();
}

template <class F>
F dot(const std::vector<F>& a, const std::vector<F>& b) {
  if (a.size() != b.size() || a.empty()) throw PreconditionError("dot: length mismatch");
  F s = a[0] * b[0];
  for (size_t i = 1; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace cliff::la
