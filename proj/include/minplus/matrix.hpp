#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "minplus/extended_real.hpp"

namespace minplus {

/// Dense matrix over the completed minplus semiring.  eps entries encode
/// absent edges of the precedence graph.
class MinPlusMatrix {
 public:
  MinPlusMatrix() : rows_(0), cols_(0) {}
  MinPlusMatrix(std::size_t rows, std::size_t cols,
                ExtendedReal fill = ExtendedReal::eps())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static MinPlusMatrix identity(std::size_t n);

  /// Builds from a row-major list; infinities spelled as IEEE +-inf.
  static MinPlusMatrix from_rows(
      const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  ExtendedReal& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  ExtendedReal at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const MinPlusMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  /// Adds constant c to every finite entry.
  MinPlusMatrix shifted(double c) const;

 private:
  std::size_t rows_, cols_;
  std::vector<ExtendedReal> data_;
};

using MinPlusVector = std::vector<ExtendedReal>;

/// Elementwise min.
MinPlusMatrix mat_oplus(const MinPlusMatrix& a, const MinPlusMatrix& b);

/// (A otimes B)_ik = min_j (A_ij + B_jk).  Parallelized over result rows;
/// bit-identical to mat_mul_serial (same inner reduction order).
MinPlusMatrix mat_mul(const MinPlusMatrix& a, const MinPlusMatrix& b);

/// Reference implementation of the product, kept for testing.
MinPlusMatrix mat_mul_serial(const MinPlusMatrix& a, const MinPlusMatrix& b);

MinPlusVector mat_vec(const MinPlusMatrix& a, const MinPlusVector& x);
MinPlusVector vec_mat(const MinPlusVector& x, const MinPlusMatrix& a);

std::ostream& operator<<(std::ostream& os, const MinPlusMatrix& m);

}  // namespace minplus
