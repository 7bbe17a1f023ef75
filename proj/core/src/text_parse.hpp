#pragma once

#include <map>
#include <string_view>

#include "relcone/cyclotomic.hpp"

namespace relcone::detail {

// Parses the shared textual syntax for field elements and series:
// sums of products of rational literals `p/q`, field symbols `zN^j` and the
// series variable `t^e`, with parentheses and unary minus. Returns the
// resulting polynomial in t (exponent -> nonzero coefficient).
std::map<long, Cyclotomic> parse_polynomial(std::string_view text);

}  // namespace relcone::detail
