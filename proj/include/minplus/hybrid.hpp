#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "minplus/extended_real.hpp"
#include "minplus/matrix.hpp"

namespace minplus {

/// A row (or column, or signal) is either a standard-algebra node
/// (weighted sum) or a minplus node (min of sums).
enum class RowKind : std::uint8_t { standard, minplus };

using KindVector = std::vector<RowKind>;

/// Null entry for an absent arc in a row of the given kind: 0 erases a
/// term in a standard sum, eps erases a term in a min.
constexpr ExtendedReal null_entry(RowKind k) {
  return k == RowKind::standard ? ExtendedReal(0.0) : ExtendedReal::eps();
}

/// Matrix of the generalized calculus: each row carries a kind deciding
/// whether it is evaluated as a standard linear form or a minplus one.
/// Kinds are stored per row/column rather than as two contiguous blocks,
/// which subsumes the permuted layouts used by the Petri net dynamics.
class HybridMatrix {
 public:
  HybridMatrix() = default;
  HybridMatrix(KindVector row_kinds, KindVector col_kinds);

  /// Null element of hplus for the given partition: 0 in standard rows,
  /// eps in minplus rows.
  static HybridMatrix null(KindVector row_kinds, KindVector col_kinds);

  std::size_t rows() const { return row_kinds_.size(); }
  std::size_t cols() const { return col_kinds_.size(); }
  RowKind row_kind(std::size_t i) const { return row_kinds_[i]; }
  RowKind col_kind(std::size_t j) const { return col_kinds_[j]; }
  const KindVector& row_kinds() const { return row_kinds_; }
  const KindVector& col_kinds() const { return col_kinds_; }

  ExtendedReal& at(std::size_t i, std::size_t j) {
    return data_[i * cols() + j];
  }
  ExtendedReal at(std::size_t i, std::size_t j) const {
    return data_[i * cols() + j];
  }

  bool operator==(const HybridMatrix& o) const = default;

 private:
  KindVector row_kinds_, col_kinds_;
  std::vector<ExtendedReal> data_;
};

/// Vector aligned with a column partition.
struct HybridVector {
  KindVector kinds;
  std::vector<ExtendedReal> entries;

  std::size_t size() const { return entries.size(); }
  bool operator==(const HybridVector& o) const = default;
};

/// Generalized sum: standard rows entrywise +, minplus rows entrywise min.
HybridMatrix hplus(const HybridMatrix& m1, const HybridMatrix& m2);

/// y = M boxtimes x: standard rows give sum_j M_ij * x_j, minplus rows
/// give min_j (M_ij + x_j).  Convention table resolves every infinite
/// combination; no NaN can appear.
std::vector<ExtendedReal> htimes_vec(const HybridMatrix& m,
                                     const std::vector<ExtendedReal>& x);

/// Matrix boxtimes per the block formula.  Provided for completeness:
/// composed dynamics are not reproduced by this product (boxtimes is not
/// associative), so simulation always goes through htimes_vec.
HybridMatrix htimes_mat(const HybridMatrix& m1, const HybridMatrix& m2);

/// True iff every standard row's finite coefficients sum to 1 within
/// 1e-12; such a matrix commutes with uniform additive shifts.
bool is_homogeneous(const HybridMatrix& m);

/// True iff every finite standard coefficient is >= 0.
bool is_monotone(const HybridMatrix& m);

std::ostream& operator<<(std::ostream& os, const HybridMatrix& m);

}  // namespace minplus
