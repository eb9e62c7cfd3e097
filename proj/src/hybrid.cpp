#include "minplus/hybrid.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace minplus {

HybridMatrix::HybridMatrix(KindVector row_kinds, KindVector col_kinds)
    : row_kinds_(std::move(row_kinds)), col_kinds_(std::move(col_kinds)) {
  data_.resize(rows() * cols());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j)
      at(i, j) = null_entry(row_kinds_[i]);
}

HybridMatrix HybridMatrix::null(KindVector row_kinds, KindVector col_kinds) {
  return HybridMatrix(std::move(row_kinds), std::move(col_kinds));
}

HybridMatrix hplus(const HybridMatrix& m1, const HybridMatrix& m2) {
  if (m1.row_kinds() != m2.row_kinds() || m1.col_kinds() != m2.col_kinds())
    throw std::invalid_argument("hplus: partition mismatch");
  HybridMatrix r(m1.row_kinds(), m1.col_kinds());
  for (std::size_t i = 0; i < r.rows(); ++i) {
    const bool std_row = m1.row_kind(i) == RowKind::standard;
    for (std::size_t j = 0; j < r.cols(); ++j)
      r.at(i, j) = std_row ? std_add(m1.at(i, j), m2.at(i, j))
                           : oplus(m1.at(i, j), m2.at(i, j));
  }
  return r;
}

std::vector<ExtendedReal> htimes_vec(const HybridMatrix& m,
                                     const std::vector<ExtendedReal>& x) {
  if (m.cols() != x.size())
    throw std::invalid_argument("htimes_vec: dimension mismatch");
  std::vector<ExtendedReal> y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.row_kind(i) == RowKind::standard) {
      ExtendedReal acc(0.0);
      for (std::size_t j = 0; j < m.cols(); ++j)
        acc = std_add(acc, std_mul(m.at(i, j), x[j]));
      y[i] = acc;
    } else {
      ExtendedReal acc = ExtendedReal::eps();
      for (std::size_t j = 0; j < m.cols(); ++j)
        acc = oplus(acc, otimes(m.at(i, j), x[j]));
      y[i] = acc;
    }
  }
  return y;
}

HybridMatrix htimes_mat(const HybridMatrix& m1, const HybridMatrix& m2) {
  if (m1.col_kinds() != m2.row_kinds())
    throw std::invalid_argument("htimes_mat: partition mismatch");
  HybridMatrix r(m1.row_kinds(), m2.col_kinds());
  for (std::size_t i = 0; i < m1.rows(); ++i) {
    if (m1.row_kind(i) == RowKind::standard) {
      for (std::size_t k = 0; k < m2.cols(); ++k) {
        ExtendedReal acc(0.0);
        for (std::size_t j = 0; j < m1.cols(); ++j)
          acc = std_add(acc, std_mul(m1.at(i, j), m2.at(j, k)));
        r.at(i, k) = acc;
      }
    } else {
      for (std::size_t k = 0; k < m2.cols(); ++k) {
        ExtendedReal acc = ExtendedReal::eps();
        for (std::size_t j = 0; j < m1.cols(); ++j)
          acc = oplus(acc, otimes(m1.at(i, j), m2.at(j, k)));
        r.at(i, k) = acc;
      }
    }
  }
  return r;
}

bool is_homogeneous(const HybridMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.row_kind(i) != RowKind::standard) continue;
    double sum = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const ExtendedReal e = m.at(i, j);
      if (!e.is_finite()) return false;  // an infinite coefficient breaks shifts
      sum += e.value();
    }
    if (std::abs(sum - 1.0) > 1e-12) return false;
  }
  return true;
}

bool is_monotone(const HybridMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.row_kind(i) != RowKind::standard) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const ExtendedReal e = m.at(i, j);
      if (e.is_finite() && e.value() < 0.0) return false;
    }
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const HybridMatrix& m) {
  os << "rows:";
  for (auto k : m.row_kinds()) os << (k == RowKind::standard ? " s" : " p");
  os << "\ncols:";
  for (auto k : m.col_kinds()) os << (k == RowKind::standard ? " s" : " p");
  os << '\n';
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
