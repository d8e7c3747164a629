#include "minibox/ext_int.hpp"

#include <stdexcept>

namespace minibox {

int ExtInt::sign() const {
    switch (kind_) {
    case Kind::neg_inf: return -1;
    case Kind::pos_inf: return 1;
    case Kind::finite: return value_.sign();
    }
    return 0;
}

const BigInt& ExtInt::value() const {
    if (!is_finite()) {
        throw std::logic_error("ExtInt::value on an infinite bound");
    }
    return value_;
}

std::string ExtInt::to_string() const {
    switch (kind_) {
    case Kind::neg_inf: return "-inf";
    case Kind::pos_inf: return "+inf";
    case Kind::finite: return value_.str();
    }
    return {};
}

bool operator==(const ExtInt& a, const ExtInt& b) {
    if (a.kind_ != b.kind_) {
        return false;
    }
    return !a.is_finite() || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
    if (a.kind_ != b.kind_) {
        return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    }
    if (!a.is_finite()) {
        return std::strong_ordering::equal;
    }
    const int c = a.value_.compare(b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

ExtInt operator-(const ExtInt& a) {
    switch (a.kind_) {
    case ExtInt::Kind::neg_inf: return ExtInt::pos_inf();
    case ExtInt::Kind::pos_inf: return ExtInt::neg_inf();
    case ExtInt::Kind::finite: return ExtInt(BigInt(-a.value_));
    }
    return a;
}

ExtInt operator+(const ExtInt& a, const ExtInt& b) {
    if (a.is_finite() && b.is_finite()) {
        return ExtInt(BigInt(a.value_ + b.value_));
    }
    if ((a.is_neg_inf() && b.is_pos_inf()) || (a.is_pos_inf() && b.is_neg_inf())) {
        throw std::domain_error("-inf + +inf is undefined");
    }
    return a.is_finite() ? b : a;
}

ExtInt operator-(const ExtInt& a, const ExtInt& b) { return a + (-b); }

ExtInt operator*(const ExtInt& a, const ExtInt& b) {
    if (a.is_finite() && b.is_finite()) {
        return ExtInt(BigInt(a.value_ * b.value_));
    }
    if (a.is_zero() || b.is_zero()) {
        return ExtInt(0);
    }
    return a.sign() * b.sign() > 0 ? ExtInt::pos_inf() : ExtInt::neg_inf();
}

std::ostream& operator<<(std::ostream& os, const ExtInt& v) { return os << v.to_string(); }

} // namespace minibox
