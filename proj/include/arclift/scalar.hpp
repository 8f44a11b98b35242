#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace arclift {

/// The coefficient field k: either the rationals or a prime field F_p.
struct Field {
  enum class Kind : std::uint8_t { Rational, Prime };

  Kind kind = Kind::Rational;
  std::uint32_t p = 0;  // only meaningful for Kind::Prime

  static Field rational() { return {}; }
  static Field prime(std::uint32_t p);

  bool is_prime() const { return kind == Kind::Prime; }
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;
};

/// An exact element of a Field.  Rationals are kept in lowest terms with a
/// positive denominator; residues are kept in [0, p).
class Scalar {
 public:
  struct Residue {
    std::uint32_t value;
    std::uint32_t p;
  };

  /// Zero of the rationals.
  Scalar() : value_(mpq_class(0)) {}

  static Scalar zero(const Field& field) { return from_int(field, 0); }
  static Scalar one(const Field& field) { return from_int(field, 1); }
  static Scalar from_int(const Field& field, long value);
  /// num/den mapped into the field; throws NotAUnit when den vanishes in k.
  static Scalar from_fraction(const Field& field, const mpz_class& num, const mpz_class& den);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;
  /// True for a negative rational; residues are never negative.
  bool is_negative() const;

  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  std::uint32_t residue() const { return std::get<Residue>(value_).value; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// `3`, `-3/4`; residues print as their canonical representative.
  std::string to_string() const;

 private:
  explicit Scalar(mpq_class q) : value_(std::move(q)) {}
  explicit Scalar(Residue r) : value_(r) {}

  void check_same_field(const Scalar& rhs) const;

  std::variant<mpq_class, Residue> value_;
};

}  // namespace arclift
