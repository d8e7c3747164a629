#include "minibox/bigint.hpp"

#include <stdexcept>

namespace minibox {

BigInt trunc_div(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) {
        throw std::domain_error("division by zero");
    }
    return a / b;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = trunc_div(a, b);
    if (q * b != a && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q = trunc_div(a, b);
    if (q * b != a && ((a < 0) == (b < 0))) {
        ++q;
    }
    return q;
}

BigInt isqrt_floor(const BigInt& a) {
    if (a < 0) {
        throw std::domain_error("square root of a negative number");
    }
    return boost::multiprecision::sqrt(a);
}

BigInt isqrt_ceil(const BigInt& a) {
    BigInt r = isqrt_floor(a);
    if (r * r < a) {
        ++r;
    }
    return r;
}

BigInt abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

std::string to_string(const BigInt& a) { return a.str(); }

} // namespace minibox
