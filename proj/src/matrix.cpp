#include "minplus/matrix.hpp"

#include <ostream>
#include <stdexcept>

namespace minplus {

MinPlusMatrix MinPlusMatrix::identity(std::size_t n) {
  MinPlusMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ExtendedReal::unit();
  return m;
}

MinPlusMatrix MinPlusMatrix::from_rows(
    const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  MinPlusMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c)
      throw std::invalid_argument("ragged matrix literal");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = ExtendedReal(rows[i][j]);
  }
  return m;
}

MinPlusMatrix MinPlusMatrix::shifted(double c) const {
  MinPlusMatrix m(*this);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (m.at(i, j).is_finite()) m.at(i, j) = ExtendedReal(m.at(i, j).value() + c);
  return m;
}

MinPlusMatrix mat_oplus(const MinPlusMatrix& a, const MinPlusMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("mat_oplus: dimension mismatch");
  MinPlusMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r.at(i, j) = oplus(a.at(i, j), b.at(i, j));
  return r;
}

namespace {

inline void mul_row(const MinPlusMatrix& a, const MinPlusMatrix& b,
                    MinPlusMatrix& r, std::size_t i) {
  for (std::size_t k = 0; k < b.cols(); ++k) {
    ExtendedReal acc = ExtendedReal::eps();
    for (std::size_t j = 0; j < a.cols(); ++j)
      acc = oplus(acc, otimes(a.at(i, j), b.at(j, k)));
    r.at(i, k) = acc;
  }
}

}  // namespace

MinPlusMatrix mat_mul_serial(const MinPlusMatrix& a, const MinPlusMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("mat_mul: inner dimension mismatch");
  MinPlusMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) mul_row(a, b, r, i);
  return r;
}

MinPlusMatrix mat_mul(const MinPlusMatrix& a, const MinPlusMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("mat_mul: inner dimension mismatch");
  MinPlusMatrix r(a.rows(), b.cols());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static) if (n >= 32)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    mul_row(a, b, r, static_cast<std::size_t>(i));
  return r;
}

MinPlusVector mat_vec(const MinPlusMatrix& a, const MinPlusVector& x) {
  if (a.cols() != x.size())
    throw std::invalid_argument("mat_vec: dimension mismatch");
  MinPlusVector y(a.rows(), ExtendedReal::eps());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    ExtendedReal acc = ExtendedReal::eps();
    for (std::size_t j = 0; j < a.cols(); ++j)
      acc = oplus(acc, otimes(a.at(i, j), x[j]));
    y[i] = acc;
  }
  return y;
}

MinPlusVector vec_mat(const MinPlusVector& x, const MinPlusMatrix& a) {
  if (a.rows() != x.size())
    throw std::invalid_argument("vec_mat: dimension mismatch");
  MinPlusVector y(a.cols(), ExtendedReal::eps());
  for (std::size_t k = 0; k < a.cols(); ++k) {
    ExtendedReal acc = ExtendedReal::eps();
    for (std::size_t j = 0; j < a.rows(); ++j)
      acc = oplus(acc, otimes(x[j], a.at(j, k)));
    y[k] = acc;
  }
  return y;
}

std::ostream& operator<<(std::ostream& os, const MinPlusMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m.at(i, j);
    }
    os << '\n';
  }
  return os;
}

}  // namespace minplus
