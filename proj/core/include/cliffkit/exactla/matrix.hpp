#pragma once

#include <cstddef>
#include <vector>

#include "cliffkit/exactla/field.hpp"

namespace cliff::la {

// Dense row-major matrix over Q or F_p.  `characteristic()` is the tag that
// all binary operations compare.
template <class F>
class Matrix {
 public:
  using Traits = FieldTraits<F>;

  Matrix() = default;
  Matrix(size_t rows, size_t cols, uint32_t ch)
      : rows_(rows), cols_(cols), ch_(ch), data_(rows * cols, Traits::zero(ch)) {
    Traits::require_tag(ch);
  }

  static Matrix identity(size_t n, uint32_t ch) {
    Matrix m(n, n, ch);
    for (size_t i = 0; i < n; ++i) m(i, i) = Traits::one(ch);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<F>>& rows, size_t cols, uint32_t ch) {
    Matrix m(rows.size(), cols, ch);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw PreconditionError("ragged rows");
      for (size_t j = 0; j < cols; ++j) {
        if (Traits::characteristic(rows[i][j]) != ch) throw CharacteristicMismatch();
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  uint32_t characteristic() const { return ch_; }

  F& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  std::vector<F> row(size_t i) const {
    return std::vector<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<F> col(size_t j) const {
    std::vector<F> out;
    out.reserve(rows_);
    for (size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, ch_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix submatrix(const std::vector<size_t>& ri, const std::vector<size_t>& ci) const {
    Matrix s(ri.size(), ci.size(), ch_);
    for (size_t a = 0; a < ri.size(); ++a)
      for (size_t b = 0; b < ci.size(); ++b) s(a, b) = (*this)(ri[a], ci[b]);
    return s;
  }

  Matrix operator*(const Matrix& o) const {
    if (ch_ != o.ch_) throw CharacteristicMismatch();
    if (cols_ != o.rows_) throw PreconditionError("matrix product shape mismatch");
    Matrix out(rows_, o.cols_, ch_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const F& a = (*this)(i, k);
        if (Traits::is_zero(a)) continue;
        for (size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }

  Matrix operator+(const Matrix& o) const {
    if (ch_ != o.ch_) throw CharacteristicMismatch();
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("matrix sum shape mismatch");
    Matrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
  }

  Matrix scaled(const F& s) const {
    Matrix out = *this;
    for (auto& v : out.data_) v = v * s;
    return out;
  }

  std::vector<F> apply(const std::vector<F>& v) const {
    if (v.size() != cols_) throw PreconditionError("vector length mismatch");
    std::vector<F> out(rows_, Traits::zero(ch_));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!Traits::is_zero(v)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ch_ == b.ch_ && a.data_ == b.data_;
  }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  uint32_t ch_ = 0;
  std::vector<F> data_;
};

using MatrixFp = Matrix<Fp>;
using MatrixQ = Matrix<Rational>;

}  // namespace cliff::la
