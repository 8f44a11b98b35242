#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arclift/series.hpp"

namespace arclift {

/// A polynomial variable: Y1..Yn or T1..Tn (1-based).  x is never a
/// variable; it lives in the Series coefficients.
struct Var {
  enum class Space : std::uint8_t { Y, T };

  Space space;
  int index;

  static Var y(int i) { return {Space::Y, i}; }
  static Var t(int i) { return {Space::T, i}; }

  std::string name() const;
  /// Position in an exponent vector of a Poly with n Y-variables.
  std::size_t slot(int n) const;

  friend bool operator==(const Var&, const Var&) = default;
};

/// Variable namespace of a Poly: n Y's and n T's, plus which of them (and x)
/// the text parser accepts.
struct VarSpace {
  int n = 1;
  bool allow_y = true;
  bool allow_t = true;
  bool allow_x = true;
};

/// Exponent vector laid out as (Y1..Yn, T1..Tn).
using Exponents = std::vector<std::uint32_t>;

/// Canonical term order: lexicographic on exponent vectors read from the last
/// slot (Tn) down to the first (Y1), ascending.  The constant term comes first.
struct TermOrder {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse polynomial in Y and T with Series coefficients.  Terms whose
/// coefficient is zero at its precision are never stored.
class Poly {
 public:
  using TermMap = std::map<Exponents, Series, TermOrder>;

  /// Zero polynomial in one variable over Q.
  Poly() : Poly(BaseRing{}, 1) {}
  Poly(const BaseRing& ring, int n);

  static Poly constant(const BaseRing& ring, int n, const Series& value);
  static Poly from_int(const BaseRing& ring, int n, long value);
  static Poly variable(const BaseRing& ring, int n, Var v);

  const BaseRing& ring() const { return ring_; }
  int n() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Adds coeff * monomial into the polynomial.
  void add_term(const Exponents& exponents, const Series& coeff);
  /// Coefficient of a monomial (exact zero when absent).
  Series coeff(const Exponents& exponents) const;
  /// Coefficient of the constant monomial.
  Series constant_term() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Series& s, const Poly& p);
  Poly pow(unsigned e) const;

  /// Evaluate at a point given per slot (size 2n); every variable that occurs
  /// must be supplied, otherwise MissingVariable.
  Series eval(std::span<const std::optional<Series>> point) const;
  /// Replace variables by polynomials (per slot, size 2n); unmapped slots
  /// stay as themselves.  Images must share this polynomial's namespace.
  Poly subst(std::span<const std::optional<Poly>> images) const;
  Poly diff(Var v) const;

  /// Divide every coefficient exactly by `divisor`.
  Poly div_exact(const Series& divisor) const;
  Poly truncated(int prec) const;
  /// Rename variables: slot i of this polynomial moves to new_slot[i].
  Poly remap(std::span<const std::size_t> new_slot) const;

  bool uses(Var v) const;
  bool uses_space(Var::Space space) const;
  /// Smallest total T-degree over the terms; 0 for the zero polynomial.
  unsigned min_t_degree() const;
  unsigned max_t_degree() const;
  /// Smallest coefficient precision; n_work for the zero polynomial.
  int min_coeff_prec() const;

  /// Identical coefficients below k, with every stored coefficient known to k.
  bool agrees_to(const Poly& other, int k) const;
  /// Coefficients agree up to their common precision.
  friend bool operator==(const Poly& a, const Poly& b);

  std::string to_string() const;

 private:
  void check_compatible(const Poly& rhs) const;

  BaseRing ring_;
  int n_;
  TermMap terms_;
};

std::string monomial_to_string(const Exponents& exponents, int n);

}  // namespace arclift
