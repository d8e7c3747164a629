#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "minibox/ast.hpp"

namespace minibox {

enum class ParseErrorKind : std::uint8_t {
    syntax,
    undeclared,
    redeclared,
    unknown_function,
    arity,
    nondet_bounds,
    sort,
    recursion,
    entry,
};

class ParseError : public std::runtime_error {
  public:
    ParseError(ParseErrorKind kind, int line, int column, const std::string& message);

    [[nodiscard]] ParseErrorKind kind() const { return kind_; }
    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] int column() const { return column_; }

  private:
    ParseErrorKind kind_;
    int line_;
    int column_;
};

/// Parses a whole program. Declarations are hoisted into Function::locals; an
/// initialized declaration also yields an assignment at its position. Locals
/// without an initializer start at zero.
Program parse_program(std::string_view source);

/// Parses a condition (boolean sort) whose variables must all be in `vars`.
ExprPtr parse_condition(std::string_view text, const std::set<std::string>& vars);

/// Parses an arithmetic expression whose variables must all be in `vars`.
ExprPtr parse_arith(std::string_view text, const std::set<std::string>& vars);

} // namespace minibox
