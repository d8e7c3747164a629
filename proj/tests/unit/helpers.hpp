#pragma once

#include <string>

#include "minibox/absint.hpp"
#include "minibox/box.hpp"
#include "minibox/interval.hpp"
#include "minibox/parser.hpp"

namespace minibox::testing {

inline Interval iv(long lo, long hi) { return {ExtInt(lo), ExtInt(hi)}; }
inline Interval iv(const char* text) { return parse_interval(text); }
inline Box bx(const char* text) { return parse_box(text); }

inline ExprPtr cond_in(const char* text, const Box& box) {
    const auto vars = box.vars();
    return parse_condition(text, {vars.begin(), vars.end()});
}

inline ExprPtr arith_in(const char* text, const Box& box) {
    const auto vars = box.vars();
    return parse_arith(text, {vars.begin(), vars.end()});
}

// Parses `body` as the body of main.
inline Program main_program(const std::string& body) { return parse_program("fn main() {\n" + body + "\n}\n"); }

} // namespace minibox::testing
