#pragma once

#include <span>
#include <string>
#include <vector>

#include "arclift/scalar.hpp"

namespace arclift {

inline constexpr int kDefaultWorkingPrecision = 40;

/// The truncated base ring k[[x]] / x^n_work shared by every Series of one
/// computation.
struct BaseRing {
  Field field;
  int n_work = kDefaultWorkingPrecision;

  friend bool operator==(const BaseRing&, const BaseRing&) = default;
};

/// A power series in x known modulo x^prec().
///
/// Stored coefficients are exact; everything at or beyond prec() is unknown.
/// Trailing zeros are stripped, so size() <= prec().  Arithmetic follows the
/// valuation-ring precision rules: a product gains the order of each factor,
/// and dividing by a series of order k loses k digits.
class Series {
 public:
  /// Exact zero (known to n_work).
  explicit Series(const BaseRing& ring);
  Series(const BaseRing& ring, std::vector<Scalar> coeffs, int prec);

  static Series constant(const BaseRing& ring, const Scalar& value);
  static Series from_int(const BaseRing& ring, long value);
  /// value * x^exponent, known to n_work.
  static Series monomial(const BaseRing& ring, const Scalar& value, int exponent);
  static Series zero(const BaseRing& ring, int prec);

  const BaseRing& ring() const { return ring_; }
  const Field& field() const { return ring_.field; }
  int prec() const { return prec_; }
  /// Number of stored coefficients (one past the highest nonzero exponent).
  int size() const { return static_cast<int>(coeffs_.size()); }
  std::span<const Scalar> coeffs() const { return coeffs_; }

  /// Coefficient of x^k; throws PrecisionExhausted for k >= prec().
  Scalar coeff(int k) const;

  /// True when every coefficient below prec() vanishes.
  bool is_zero() const { return coeffs_.empty(); }
  /// Least exponent with a nonzero coefficient, or prec() when is_zero()
  /// (read as the sentinel ">= prec").
  int ord() const;

  Series truncated(int prec) const;
  /// Multiply by x^k (k >= 0); gains k digits of precision up to n_work.
  Series shifted_up(int k) const;

  Series operator-() const;
  Series& operator+=(const Series& rhs);
  Series& operator-=(const Series& rhs);
  Series& operator*=(const Series& rhs);
  Series& operator*=(const Scalar& rhs);

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(Series a, const Scalar& b) { return a *= b; }

  /// r with a * r == 1 mod x^prec(); throws NotAUnit unless ord() == 0.
  Series inv_unit() const;
  /// Exact quotient *this / divisor; throws NotDivisible when the order of
  /// the dividend is below the order of the divisor and PrecisionExhausted
  /// when nothing of the quotient would be known.
  Series div_exact(const Series& divisor) const;

  /// Coefficients agree below min(prec) of both.
  friend bool operator==(const Series& a, const Series& b);
  /// Both are known to at least k and agree below k.
  bool agrees_to(const Series& other, int k) const;

  /// `x^3 + 6*x^18 + O(x^37)`.
  std::string to_string(bool with_order = true) const;

 private:
  void normalize();
  void check_ring(const Series& rhs) const;

  BaseRing ring_;
  std::vector<Scalar> coeffs_;
  int prec_;
};

using SeriesVector = std::vector<Series>;

/// Smallest prec() over a vector; n_work of the ring for an empty one.
int min_prec(std::span<const Series> values, const BaseRing& ring);

}  // namespace arclift
