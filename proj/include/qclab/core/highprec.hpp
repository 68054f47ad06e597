#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qclab {

/// Double-double real (about 106 significant bits) carrying a conservative
/// absolute error bound. Every arithmetic operation widens the bound by the
/// propagated input error plus its own rounding error, so `error_bound()` is
/// always an upper bound on |stored value - exact value|.
class HighPrec {
 public:
  /// Relative rounding error charged per double-double operation.
  static constexpr double kUnitRoundoff = 1.0e-31;

  constexpr HighPrec() = default;
  constexpr HighPrec(double v) : hi_(v) {}  // NOLINT: implicit by design of the arithmetic
  HighPrec(std::int64_t v);                 // NOLINT

  static HighPrec from_parts(double hi, double lo, double error_bound);

  double hi() const { return hi_; }
  double lo() const { return lo_; }
  double error_bound() const { return err_; }
  double to_double() const { return hi_ + lo_; }

  /// Returns a copy whose error bound is widened by `extra`.
  HighPrec with_extra_error(double extra) const;

  HighPrec operator-() const;
  HighPrec& operator+=(const HighPrec& o);
  HighPrec& operator-=(const HighPrec& o);
  HighPrec& operator*=(const HighPrec& o);
  HighPrec& operator/=(const HighPrec& o);

  friend HighPrec operator+(HighPrec a, const HighPrec& b) { return a += b; }
  friend HighPrec operator-(HighPrec a, const HighPrec& b) { return a -= b; }
  friend HighPrec operator*(HighPrec a, const HighPrec& b) { return a *= b; }
  friend HighPrec operator/(HighPrec a, const HighPrec& b) { return a /= b; }

  /// Ordering and equality compare stored values only (error bounds ignored).
  friend bool operator==(const HighPrec& a, const HighPrec& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend bool operator<(const HighPrec& a, const HighPrec& b) {
    return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_);
  }
  friend bool operator>(const HighPrec& a, const HighPrec& b) { return b < a; }
  friend bool operator<=(const HighPrec& a, const HighPrec& b) { return !(b < a); }
  friend bool operator>=(const HighPrec& a, const HighPrec& b) { return !(a < b); }

  /// Largest integer not above the stored value. Exact on the stored value.
  std::int64_t floor_int() const;
  std::int64_t round_int() const;

  /// Decimal rendering with `digits` significant digits (up to 32).
  std::string to_string(int digits = 32) const;

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
  double err_ = 0.0;
};

HighPrec abs(const HighPrec& x);
HighPrec sqrt(const HighPrec& x);
/// x - floor(x), with the error bound of x.
HighPrec frac(const HighPrec& x);
/// Distance to the nearest integer.
HighPrec dist_to_int(const HighPrec& x);

/// Parses the irrational-literal grammar used across the tools:
///   golden                 (sqrt(5) - 1) / 2
///   phi                    (1 + sqrt(5)) / 2
///   sqrt<D> | sqrt(D)      square root of a non-negative integer
///   (p+q*sqrt(D))/r        quadratic surd, p,q,r integers, r != 0
///   decimal literal        e.g. 0.4142135623730950488016887242097, -1.5e-3
/// Throws InputError on anything else.
HighPrec parse_real(std::string_view token);

std::ostream& operator<<(std::ostream& os, const HighPrec& x);

}  // namespace qclab
