#include "cliffkit/exactla/linalg.hpp"

namespace cliff::la {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Clear denominators row by row; returns the integer matrix and the product
// of the row scalings (so det(original) = det(integer) / scale).
std::vector<std::vector<mpz_class>> integer_rows(const MatrixQ& m, mpz_class& scale) {
  scale = 1;
  std::vector<std::vector<mpz_class>> out(m.rows(), std::vector<mpz_class>(m.cols()));
  for (size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (size_t j = 0; j < m.cols(); ++j) {
      mpz_class d = m(i, j).get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (size_t j = 0; j < m.cols(); ++j) {
      mpq_class v = m(i, j) * l;
      out[i][j] = v.get_num();
    }
    scale *= l;
  }
  return out;
}

// Bareiss elimination; returns rank, and the determinant when square.
size_t bareiss(std::vector<std::vector<mpz_class>>& a, size_t cols, mpz_class* det) {
  const size_t rows = a.size();
  mpz_class prev = 1;
  int sign = 1;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = rows;
    for (size_t i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == rows) {
      if (det) *det = 0;
      continue;
    }
    if (sel != r) {
      std::swap(a[sel], a[r]);
      sign = -sign;
    }
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  if (det && r == rows && rows == cols) *det = sign * prev;
  return r;
}

}  // namespace

size_t bareiss_rank(const MatrixQ& m) {
  mpz_class scale;
  auto a = integer_rows(m, scale);
  return bareiss(a, m.cols(), nullptr);
}

Rational bareiss_determinant(const MatrixQ& m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of non-square matrix");
  if (m.rows() == 0) return Rational(1);
  mpz_class scale;
  auto a = integer_rows(m, scale);
  mpz_class det = 0;
  size_t r = bareiss(a, m.cols(), &det);
  if (r < m.rows()) return Rational(0);
  Rational out(det, scale);
  out.canonicalize();
  return out;
}

}  // namespace cliff::la
