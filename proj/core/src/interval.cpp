#include "minibox/interval.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <vector>

namespace minibox {

Interval::Interval(ExtInt lo, ExtInt hi) {
    if (lo.is_pos_inf() || hi.is_neg_inf() || hi < lo) {
        return;
    }
    bottom_ = false;
    lo_ = std::move(lo);
    hi_ = std::move(hi);
}

bool Interval::is_top() const { return !bottom_ && lo_.is_neg_inf() && hi_.is_pos_inf(); }

bool Interval::is_singleton() const { return !bottom_ && lo_.is_finite() && lo_ == hi_; }

bool Interval::is_finite() const { return !bottom_ && lo_.is_finite() && hi_.is_finite(); }

std::optional<BigInt> Interval::singleton_value() const {
    if (!is_singleton()) {
        return std::nullopt;
    }
    return lo_.value();
}

const ExtInt& Interval::lo() const {
    if (bottom_) {
        throw std::logic_error("Interval::lo on bottom");
    }
    return lo_;
}

const ExtInt& Interval::hi() const {
    if (bottom_) {
        throw std::logic_error("Interval::hi on bottom");
    }
    return hi_;
}

bool Interval::contains(const BigInt& v) const {
    if (bottom_) {
        return false;
    }
    const ExtInt x(v);
    return lo_ <= x && x <= hi_;
}

bool Interval::leq(const Interval& other) const {
    if (bottom_) {
        return true;
    }
    if (other.bottom_) {
        return false;
    }
    return other.lo_ <= lo_ && hi_ <= other.hi_;
}

std::string Interval::to_string() const {
    if (bottom_) {
        return "bottom";
    }
    return "[" + lo_.to_string() + "," + hi_.to_string() + "]";
}

bool operator==(const Interval& a, const Interval& b) {
    if (a.bottom_ || b.bottom_) {
        return a.bottom_ == b.bottom_;
    }
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
}

std::ostream& operator<<(std::ostream& os, const Interval& v) { return os << v.to_string(); }

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

ExtInt parse_bound(std::string_view s) {
    s = trim(s);
    if (s == "-inf") {
        return ExtInt::neg_inf();
    }
    if (s == "+inf" || s == "inf") {
        return ExtInt::pos_inf();
    }
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        digits.remove_prefix(1);
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw std::invalid_argument("malformed interval bound '" + std::string(s) + "'");
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    return ExtInt(BigInt(std::string(s)));
}

} // namespace

Interval parse_interval(std::string_view text) {
    text = trim(text);
    if (text == "bottom") {
        return Interval::bottom();
    }
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        throw std::invalid_argument("malformed interval '" + std::string(text) + "'");
    }
    const std::string_view body = text.substr(1, text.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) {
        throw std::invalid_argument("malformed interval '" + std::string(text) + "'");
    }
    ExtInt lo = parse_bound(body.substr(0, comma));
    ExtInt hi = parse_bound(body.substr(comma + 1));
    if (lo.is_pos_inf() || hi.is_neg_inf() || hi < lo) {
        throw std::invalid_argument("empty interval '" + std::string(text) + "'");
    }
    return {std::move(lo), std::move(hi)};
}

namespace {

Interval hull_of(const std::vector<ExtInt>& points) {
    if (points.empty()) {
        return Interval::bottom();
    }
    const auto [lo, hi] = std::minmax_element(points.begin(), points.end());
    return {*lo, *hi};
}

// Quotient of two bounds under truncating division, extended to limits.
// Returns nullopt for inf / inf, whose limit is not determined by the corners.
std::optional<ExtInt> corner_quotient(const ExtInt& n, const ExtInt& d) {
    if (n.is_finite() && d.is_finite()) {
        return ExtInt(trunc_div(n.value(), d.value()));
    }
    if (!n.is_finite() && !d.is_finite()) {
        return std::nullopt;
    }
    if (!n.is_finite()) {
        return n.sign() * d.sign() > 0 ? ExtInt::pos_inf() : ExtInt::neg_inf();
    }
    return ExtInt(0);
}

// Both operands sign-constant, divisor excludes zero: the quotient is monotone in
// each argument, so its extremes sit at the corners.
Interval divide_sign_constant(const Interval& a, const Interval& b) {
    std::vector<ExtInt> corners;
    for (const ExtInt* n : {&a.lo(), &a.hi()}) {
        for (const ExtInt* d : {&b.lo(), &b.hi()}) {
            if (auto q = corner_quotient(*n, *d)) {
                corners.push_back(std::move(*q));
            }
        }
    }
    return hull_of(corners);
}

Interval divide(const Interval& a, const Interval& b) {
    const Interval b_neg = meet(b, Interval::at_most(-1));
    const Interval b_pos = meet(b, Interval::at_least(1));
    const Interval a_neg = meet(a, Interval::at_most(-1));
    const Interval a_nonneg = meet(a, Interval::at_least(0));
    Interval out;
    for (const Interval* an : {&a_neg, &a_nonneg}) {
        for (const Interval* bn : {&b_neg, &b_pos}) {
            if (!an->is_bottom() && !bn->is_bottom()) {
                out = join(out, divide_sign_constant(*an, *bn));
            }
        }
    }
    return out;
}

} // namespace

Interval interval_binop(ArithOp op, const Interval& a, const Interval& b, ArithMode mode) {
    if (a.is_bottom() || b.is_bottom()) {
        return Interval::bottom();
    }
    if (op == ArithOp::div && b.is_singleton() && b.lo().is_zero()) {
        return Interval::bottom();
    }
    if (mode == ArithMode::extrapolate && !(a.is_singleton() && b.is_singleton())) {
        return Interval::top();
    }
    switch (op) {
    case ArithOp::add: return {a.lo() + b.lo(), a.hi() + b.hi()};
    case ArithOp::sub: return {a.lo() - b.hi(), a.hi() - b.lo()};
    case ArithOp::mul:
        return hull_of({a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()});
    case ArithOp::div: return divide(a, b);
    }
    return Interval::top();
}

Interval negate(const Interval& a) {
    if (a.is_bottom()) {
        return a;
    }
    return {-a.hi(), -a.lo()};
}

Interval join(const Interval& a, const Interval& b) {
    if (a.is_bottom()) {
        return b;
    }
    if (b.is_bottom()) {
        return a;
    }
    return {min(a.lo(), b.lo()), max(a.hi(), b.hi())};
}

Interval meet(const Interval& a, const Interval& b) {
    if (a.is_bottom() || b.is_bottom()) {
        return Interval::bottom();
    }
    return {max(a.lo(), b.lo()), min(a.hi(), b.hi())};
}

Interval widen(const Interval& old_value, const Interval& new_value) {
    if (old_value.is_bottom()) {
        return new_value;
    }
    if (new_value.is_bottom()) {
        return old_value;
    }
    ExtInt lo = new_value.lo() < old_value.lo() ? ExtInt::neg_inf() : old_value.lo();
    ExtInt hi = new_value.hi() > old_value.hi() ? ExtInt::pos_inf() : old_value.hi();
    return {std::move(lo), std::move(hi)};
}

Interval narrow(const Interval& old_value, const Interval& new_value) {
    if (old_value.is_bottom() || new_value.is_bottom()) {
        return Interval::bottom();
    }
    ExtInt lo = old_value.lo().is_neg_inf() ? new_value.lo() : old_value.lo();
    ExtInt hi = old_value.hi().is_pos_inf() ? new_value.hi() : old_value.hi();
    return {std::move(lo), std::move(hi)};
}

Truth3 eval_cmp(CmpOp op, const Interval& a, const Interval& b) {
    if (a.is_bottom() || b.is_bottom()) {
        return Truth3::maybe3;
    }
    switch (op) {
    case CmpOp::lt:
        if (a.hi() < b.lo()) return Truth3::true3;
        if (a.lo() >= b.hi()) return Truth3::false3;
        return Truth3::maybe3;
    case CmpOp::le:
        if (a.hi() <= b.lo()) return Truth3::true3;
        if (a.lo() > b.hi()) return Truth3::false3;
        return Truth3::maybe3;
    case CmpOp::gt: return eval_cmp(CmpOp::lt, b, a);
    case CmpOp::ge: return eval_cmp(CmpOp::le, b, a);
    case CmpOp::eq:
        if (a.is_singleton() && a == b) return Truth3::true3;
        if (meet(a, b).is_bottom()) return Truth3::false3;
        return Truth3::maybe3;
    case CmpOp::ne: return truth_not(eval_cmp(CmpOp::eq, a, b));
    }
    return Truth3::maybe3;
}

CmpOp negate_cmp(CmpOp op) {
    switch (op) {
    case CmpOp::eq: return CmpOp::ne;
    case CmpOp::ne: return CmpOp::eq;
    case CmpOp::lt: return CmpOp::ge;
    case CmpOp::le: return CmpOp::gt;
    case CmpOp::gt: return CmpOp::le;
    case CmpOp::ge: return CmpOp::lt;
    }
    return op;
}

CmpOp swap_cmp(CmpOp op) {
    switch (op) {
    case CmpOp::lt: return CmpOp::gt;
    case CmpOp::le: return CmpOp::ge;
    case CmpOp::gt: return CmpOp::lt;
    case CmpOp::ge: return CmpOp::le;
    default: return op;
    }
}

bool holds(CmpOp op, const BigInt& a, const BigInt& b) {
    switch (op) {
    case CmpOp::eq: return a == b;
    case CmpOp::ne: return a != b;
    case CmpOp::lt: return a < b;
    case CmpOp::le: return a <= b;
    case CmpOp::gt: return a > b;
    case CmpOp::ge: return a >= b;
    }
    return false;
}

std::string_view to_string(CmpOp op) {
    switch (op) {
    case CmpOp::eq: return "==";
    case CmpOp::ne: return "!=";
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::gt: return ">";
    case CmpOp::ge: return ">=";
    }
    return "?";
}

} // namespace minibox
