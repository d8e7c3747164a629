#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace minibox {

using BigInt = boost::multiprecision::cpp_int;

// Quotient rounded toward negative infinity. b must be nonzero.
BigInt floor_div(const BigInt& a, const BigInt& b);
// Quotient rounded toward positive infinity. b must be nonzero.
BigInt ceil_div(const BigInt& a, const BigInt& b);
// Quotient truncated toward zero (C semantics). b must be nonzero.
BigInt trunc_div(const BigInt& a, const BigInt& b);

// Largest r with r*r <= a, for a >= 0.
BigInt isqrt_floor(const BigInt& a);
// Smallest r with r*r >= a, for a >= 0.
BigInt isqrt_ceil(const BigInt& a);

BigInt abs(const BigInt& a);
std::string to_string(const BigInt& a);

} // namespace minibox
