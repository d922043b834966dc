#pragma once

#include <string>

#include "anticyc/arith.hpp"

namespace anticyc {

/// Exact decimal expansion of q rounded half away from zero to `places` digits.
std::string decimal_round(const Rat& q, int places);
/// Exact decimal expansion truncated toward zero.
std::string decimal_trunc(const Rat& q, int places);
/// Parse a plain decimal literal like "0.0413" into an exact rational.
Rat parse_decimal(const std::string& s);
/// Number of digits after the point in a decimal literal.
int decimal_places_of(const std::string& s);

}  // namespace anticyc
