#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "minibox/bigint.hpp"
#include "minibox/ext_int.hpp"
#include "minibox/truth3.hpp"

namespace minibox {

/// A closed integer interval [lo, hi] with possibly infinite endpoints, or bottom.
///
/// Constructed values are always normalized: a range with lo > hi, lo = +inf
/// or hi = -inf collapses to bottom.
class Interval {
  public:
    // Default is bottom.
    Interval() = default;
    Interval(ExtInt lo, ExtInt hi);

    static Interval bottom() { return {}; }
    static Interval top() { return {ExtInt::neg_inf(), ExtInt::pos_inf()}; }
    static Interval singleton(const BigInt& v) { return {ExtInt(v), ExtInt(v)}; }
    static Interval at_least(ExtInt lo) { return {std::move(lo), ExtInt::pos_inf()}; }
    static Interval at_most(ExtInt hi) { return {ExtInt::neg_inf(), std::move(hi)}; }

    [[nodiscard]] bool is_bottom() const { return bottom_; }
    [[nodiscard]] bool is_top() const;
    [[nodiscard]] bool is_singleton() const;
    [[nodiscard]] bool is_finite() const;
    [[nodiscard]] std::optional<BigInt> singleton_value() const;

    // Endpoints; precondition: !is_bottom().
    [[nodiscard]] const ExtInt& lo() const;
    [[nodiscard]] const ExtInt& hi() const;

    [[nodiscard]] bool contains(const BigInt& v) const;
    [[nodiscard]] bool contains_zero() const { return contains(BigInt(0)); }
    // Lattice order.
    [[nodiscard]] bool leq(const Interval& other) const;

    // "[lo,hi]" with -inf/+inf, or "bottom".
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Interval& a, const Interval& b);

  private:
    bool bottom_ = true;
    ExtInt lo_;
    ExtInt hi_;
};

std::ostream& operator<<(std::ostream& os, const Interval& v);

// Accepts "[lo,hi]" (lo/hi may be -inf, +inf or inf) and "bottom". Throws std::invalid_argument.
Interval parse_interval(std::string_view text);

enum class ArithOp : std::uint8_t { add, sub, mul, div };

/// Precise arithmetic, or extrapolate: any operation with a non-singleton operand goes to top.
enum class ArithMode : std::uint8_t { precise, extrapolate };

/// Smallest interval holding every x op y, x in a, y in b. Division truncates toward
/// zero and skips y = 0; a divisor of exactly [0,0] or a bottom operand gives bottom.
Interval interval_binop(ArithOp op, const Interval& a, const Interval& b, ArithMode mode = ArithMode::precise);
Interval negate(const Interval& a);

Interval join(const Interval& a, const Interval& b);
Interval meet(const Interval& a, const Interval& b);
Interval widen(const Interval& old_value, const Interval& new_value);
Interval narrow(const Interval& old_value, const Interval& new_value);

enum class CmpOp : std::uint8_t { eq, ne, lt, le, gt, ge };

// Truth of `a op b` over all pairs; maybe3 when either side is bottom.
Truth3 eval_cmp(CmpOp op, const Interval& a, const Interval& b);

CmpOp negate_cmp(CmpOp op);
CmpOp swap_cmp(CmpOp op);
bool holds(CmpOp op, const BigInt& a, const BigInt& b);
std::string_view to_string(CmpOp op);

} // namespace minibox
