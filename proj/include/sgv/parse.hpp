#pragma once

#include <string_view>

#include "sgv/counting.hpp"
#include "sgv/poly.hpp"

namespace sgv {

/// Parses an expression in x with integer coefficients, + - * ^ / and
/// parentheses, over F_p. At most one '/' may appear outside parentheses.
/// Throws ParseError with the offending offset, ZeroDenominator, NotPrime.
RationalFunc parse_poly_expr(std::string_view text, std::uint64_t p);
RationalFunc parse_poly_expr(std::string_view text, const FieldPtr& field);

/// Integer polynomial in x and y with + - * ^ and parentheses.
IntBiPoly parse_int_bipoly(std::string_view text);
std::string to_string(const IntBiPoly& F);

}  // namespace sgv
