#pragma once

#include <string>

#include "arclift/scalar.hpp"

namespace arclift::detail {

/// Appends `coeff * monomial` to a sum being printed, handling the sign
/// separator and unit coefficients.  An empty monomial prints the bare
/// coefficient.
inline void append_term(std::string& out, const Scalar& coeff, const std::string& monomial) {
  bool negative = coeff.is_negative();
  Scalar magnitude = negative ? -coeff : coeff;
  if (out.empty()) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  if (monomial.empty()) {
    out += magnitude.to_string();
  } else if (magnitude.is_one()) {
    out += monomial;
  } else {
    out += magnitude.to_string() + "*" + monomial;
  }
}

inline std::string x_power(int exponent) {
  if (exponent == 0) return {};
  if (exponent == 1) return "x";
  return "x^" + std::to_string(exponent);
}

}  // namespace arclift::detail
