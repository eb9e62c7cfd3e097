#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>

namespace minplus {

/// Scalar of the completed minplus semiring: a real number or one of the
/// two symbolic infinities.  +inf is the minplus zero (written eps below),
/// 0 is the minplus unit.  All arithmetic goes through explicit tag
/// dispatch so that the nonstandard conventions
///
///     0 * (+-inf) = (+-inf) * 0 = 0,     (+inf) + (-inf) = +inf
///
/// hold exactly and no NaN can ever be produced.
class ExtendedReal {
 public:
  enum class Kind : std::uint8_t { neg_inf, finite, pos_inf };

  constexpr ExtendedReal() : kind_(Kind::pos_inf), value_(0.0) {}
  constexpr ExtendedReal(double v) : kind_(Kind::finite), value_(v) {
    if (std::isinf(v)) {
      kind_ = v > 0 ? Kind::pos_inf : Kind::neg_inf;
      value_ = 0.0;
    }
  }

  /// Minplus zero (absorbing for otimes).
  static constexpr ExtendedReal eps() { return ExtendedReal(Kind::pos_inf); }
  /// Minplus unit.
  static constexpr ExtendedReal unit() { return ExtendedReal(0.0); }
  static constexpr ExtendedReal neg_infinity() {
    return ExtendedReal(Kind::neg_inf);
  }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_eps() const { return kind_ == Kind::pos_inf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::neg_inf; }
  constexpr bool is_finite() const { return kind_ == Kind::finite; }

  /// Finite value; calling this on an infinity is a programming error.
  constexpr double value() const { return value_; }

  /// Lossy view as a double (+-inf for the symbolic infinities).
  constexpr double as_double() const {
    switch (kind_) {
      case Kind::finite: return value_;
      case Kind::pos_inf: return kInf;
      case Kind::neg_inf: return -kInf;
    }
    return value_;
  }

  friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Kind::finite || a.value_ == b.value_;
  }
  friend constexpr bool operator!=(ExtendedReal a, ExtendedReal b) {
    return !(a == b);
  }
  friend constexpr bool operator<(ExtendedReal a, ExtendedReal b) {
    if (a.kind_ == b.kind_)
      return a.kind_ == Kind::finite && a.value_ < b.value_;
    if (a.kind_ == Kind::neg_inf) return true;
    if (b.kind_ == Kind::neg_inf) return false;
    return b.kind_ == Kind::pos_inf;
  }
  friend constexpr bool operator<=(ExtendedReal a, ExtendedReal b) {
    return a < b || a == b;
  }

  std::string str() const;

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  explicit constexpr ExtendedReal(Kind k) : kind_(k), value_(0.0) {}

  Kind kind_;
  double value_;
};

/// Minplus sum: min under the order -inf < finite < +inf.
constexpr ExtendedReal oplus(ExtendedReal a, ExtendedReal b) {
  return a < b ? a : b;
}

/// Minplus product (the standard addition) with +inf absorbing:
/// eps otimes x = eps for every x, including x = -inf.
constexpr ExtendedReal otimes(ExtendedReal a, ExtendedReal b) {
  using K = ExtendedReal::Kind;
  if (a.kind() == K::pos_inf || b.kind() == K::pos_inf)
    return ExtendedReal::eps();
  if (a.kind() == K::neg_inf || b.kind() == K::neg_inf)
    return ExtendedReal::neg_infinity();
  return ExtendedReal(a.value() + b.value());
}

/// Standard addition.  Same table as otimes: the paper specifies a single
/// addition on the extended reals, (+inf) + (-inf) = +inf.
constexpr ExtendedReal std_add(ExtendedReal a, ExtendedReal b) {
  return otimes(a, b);
}

/// Standard multiplication with 0 * (+-inf) = (+-inf) * 0 = 0, so that a
/// zero coefficient erases whatever it multiplies.
constexpr ExtendedReal std_mul(ExtendedReal a, ExtendedReal b) {
  if (a.is_finite() && b.is_finite()) return ExtendedReal(a.value() * b.value());
  if (a.is_finite() && a.value() == 0.0) return ExtendedReal(0.0);
  if (b.is_finite() && b.value() == 0.0) return ExtendedReal(0.0);
  // At least one infinite operand, the other nonzero: sign rules.
  const bool a_neg = a.is_neg_inf() || (a.is_finite() && a.value() < 0.0);
  const bool b_neg = b.is_neg_inf() || (b.is_finite() && b.value() < 0.0);
  return (a_neg != b_neg) ? ExtendedReal::neg_infinity() : ExtendedReal::eps();
}

/// Raised by the one scalar operation the paper leaves without a rule.
class UndefinedOperation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Minplus division a/b, i.e. the solution x of b otimes x = a where it is
/// determined: the standard subtraction a - b.  Both operands infinite of
/// the same kind is undefined and rejected.
inline ExtendedReal ominus(ExtendedReal a, ExtendedReal b) {
  using K = ExtendedReal::Kind;
  if (a.kind() == b.kind() && !a.is_finite())
    throw UndefinedOperation("minplus division of equal infinities");
  if (a.kind() == K::pos_inf || b.kind() == K::neg_inf)
    return ExtendedReal::eps();
  if (a.kind() == K::neg_inf || b.kind() == K::pos_inf)
    return ExtendedReal::neg_infinity();
  return ExtendedReal(a.value() - b.value());
}

std::ostream& operator<<(std::ostream& os, ExtendedReal x);

}  // namespace minplus
