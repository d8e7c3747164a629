#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "minibox/bigint.hpp"

namespace minibox {

/// An integer extended with -inf and +inf, ordered -inf < n < +inf.
///
/// Addition of opposite infinities is undefined and throws std::domain_error.
/// Multiplication follows the interval convention 0 * (+/-inf) = 0.
class ExtInt {
  public:
    enum class Kind : std::uint8_t { neg_inf, finite, pos_inf };

    ExtInt() = default;
    ExtInt(BigInt value) : value_(std::move(value)) {}
    ExtInt(int value) : value_(value) {}
    ExtInt(long value) : value_(value) {}
    ExtInt(long long value) : value_(value) {}

    static ExtInt neg_inf() { return ExtInt(Kind::neg_inf); }
    static ExtInt pos_inf() { return ExtInt(Kind::pos_inf); }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_finite() const { return kind_ == Kind::finite; }
    [[nodiscard]] bool is_neg_inf() const { return kind_ == Kind::neg_inf; }
    [[nodiscard]] bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
    [[nodiscard]] bool is_zero() const { return is_finite() && value_.is_zero(); }
    // -1, 0 or 1.
    [[nodiscard]] int sign() const;

    // Precondition: is_finite().
    [[nodiscard]] const BigInt& value() const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const ExtInt& a, const ExtInt& b);
    friend std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b);

    friend ExtInt operator-(const ExtInt& a);
    friend ExtInt operator+(const ExtInt& a, const ExtInt& b);
    friend ExtInt operator-(const ExtInt& a, const ExtInt& b);
    friend ExtInt operator*(const ExtInt& a, const ExtInt& b);

  private:
    explicit ExtInt(Kind kind) : kind_(kind) {}

    Kind kind_ = Kind::finite;
    BigInt value_{0};
};

std::ostream& operator<<(std::ostream& os, const ExtInt& v);

inline const ExtInt& min(const ExtInt& a, const ExtInt& b) { return b < a ? b : a; }
inline const ExtInt& max(const ExtInt& a, const ExtInt& b) { return a < b ? b : a; }

} // namespace minibox
