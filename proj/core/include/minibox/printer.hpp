#pragma once

#include <string>

#include "minibox/ast.hpp"

namespace minibox {

// Concrete syntax that parse_program/parse_condition read back to an identical AST.
std::string to_source(const Expr& e);
std::string to_source(const Stmt& s, int indent = 0);
std::string to_source(const Function& f);
std::string to_source(const Program& p);

} // namespace minibox
