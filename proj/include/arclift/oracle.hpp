#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "arclift/problem.hpp"
#include "arclift/series.hpp"

namespace arclift {

/// Free coefficients allowed per enumeration: n * (m - 2c - 1).
inline constexpr int kOracleMaxFreeCoefficients = 24;
/// Upper bound on the number of candidate jets q^(free coefficients).
inline constexpr std::uint64_t kOracleMaxCandidates = 50'000'000;

/// One m-jet: coefficients of x^0..x^(m-1) for each Y, as residues mod p.
using Jet = std::vector<std::vector<std::uint32_t>>;

struct JetSet {
  int m = 0;
  int c = 0;
  std::uint32_t p = 0;
  std::uint64_t candidates = 0;
  /// Sorted lexicographically by coefficient vectors.
  std::vector<Jet> jets;

  bool contains(const Jet& jet) const;
  /// One line per jet, `(x^3, x^2 + 4*x^9)`.
  std::vector<std::string> lines() const;
};

/// Every y in (F_p[x]/x^m)^n with y = y' mod x^(2c+1) and I(y) = 0 mod x^m,
/// found by exhaustive enumeration with machine-word arithmetic.
/// Throws BudgetExceeded beyond the limits above, InvalidProblem over Q.
JetSet oracle_enumerate(const Problem& problem, int c, int m);

/// Truncate an arc mod x^m; needs every coordinate known to x^m.
Jet truncate_arc(std::span<const Series> arc, int m);

std::string jet_to_string(const Jet& jet);

}  // namespace arclift
