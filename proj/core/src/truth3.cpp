#include "minibox/truth3.hpp"

#include <stdexcept>

namespace minibox {

Truth3 truth_not(Truth3 a) {
    switch (a) {
    case Truth3::true3: return Truth3::false3;
    case Truth3::false3: return Truth3::true3;
    case Truth3::maybe3: return Truth3::maybe3;
    }
    return Truth3::maybe3;
}

Truth3 truth_and(Truth3 a, Truth3 b) {
    if (a == Truth3::false3 || b == Truth3::false3) {
        return Truth3::false3;
    }
    if (a == Truth3::true3 && b == Truth3::true3) {
        return Truth3::true3;
    }
    return Truth3::maybe3;
}

Truth3 truth_or(Truth3 a, Truth3 b) {
    if (a == Truth3::true3 || b == Truth3::true3) {
        return Truth3::true3;
    }
    if (a == Truth3::false3 && b == Truth3::false3) {
        return Truth3::false3;
    }
    return Truth3::maybe3;
}

Truth3 truth3_logic(LogicOp op, Truth3 a, std::optional<Truth3> b) {
    const bool binary = op != LogicOp::lnot;
    if (binary != b.has_value()) {
        throw std::invalid_argument("truth3_logic: operand count does not match operator");
    }
    switch (op) {
    case LogicOp::lnot: return truth_not(a);
    case LogicOp::land: return truth_and(a, *b);
    case LogicOp::lor: return truth_or(a, *b);
    }
    return Truth3::maybe3;
}

std::string_view to_string(Truth3 t) {
    switch (t) {
    case Truth3::true3: return "true";
    case Truth3::false3: return "false";
    case Truth3::maybe3: return "maybe";
    }
    return "?";
}

std::ostream& operator<<(std::ostream& os, Truth3 t) { return os << to_string(t); }

} // namespace minibox
