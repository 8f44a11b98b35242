#pragma once

#include <string_view>
#include <vector>

#include "arclift/poly.hpp"
#include "arclift/series.hpp"

namespace arclift {

// Text grammar shared by problem files, CLI flags and reports:
//
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*' factor) | ('/' int))*
//   factor := int | var ('^' nat)?
//   var    := x | Y<i> | T<i>
//
// Whitespace is ignored and x exponents fold into the Series coefficient.
// A series may end with `+ O(x^k)` to declare its precision.

/// Throws Error(ParseError) with the byte offset, or UnknownVariable.
Poly parse_poly(std::string_view text, const BaseRing& ring, const VarSpace& space);

/// A polynomial in x alone.  Without an O-term the precision is n_work;
/// `default_prec` overrides that when given.
Series parse_series(std::string_view text, const BaseRing& ring, int default_prec = -1);

/// Comma-separated list of series.
std::vector<Series> parse_series_list(std::string_view text, const BaseRing& ring);

}  // namespace arclift
