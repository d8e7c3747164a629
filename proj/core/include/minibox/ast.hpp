#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "minibox/bigint.hpp"
#include "minibox/interval.hpp"

namespace minibox {

class Expr;
class Stmt;
using ExprPtr = std::shared_ptr<const Expr>;
using StmtPtr = std::shared_ptr<const Stmt>;
using Block = std::vector<StmtPtr>;

enum class UnaryOp : std::uint8_t { neg, lnot };
enum class BinaryOp : std::uint8_t { add, sub, mul, div, eq, ne, lt, le, gt, ge, land, lor };

struct IntLit {
    BigInt value;
};
struct BoolLit {
    bool value;
};
struct VarRef {
    std::string name;
};
struct Unary {
    UnaryOp op;
    ExprPtr operand;
};
struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};
struct Nondet {
    std::optional<BigInt> lo;
    std::optional<BigInt> hi;
};

/// Immutable expression node. Arithmetic and boolean sorts are disjoint.
class Expr {
  public:
    using Node = std::variant<IntLit, BoolLit, VarRef, Unary, Binary, Nondet>;

    explicit Expr(Node node) : node_(std::move(node)) {}

    [[nodiscard]] const Node& node() const { return node_; }
    template <typename T>
    [[nodiscard]] const T* as() const {
        return std::get_if<T>(&node_);
    }
    [[nodiscard]] bool is_bool() const;

  private:
    Node node_;
};

bool operator==(const Expr& a, const Expr& b);
bool same_expr(const ExprPtr& a, const ExprPtr& b);

ExprPtr make_int(BigInt v);
ExprPtr make_bool(bool v);
ExprPtr make_var(std::string name);
ExprPtr make_unary(UnaryOp op, ExprPtr operand);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_nondet(std::optional<BigInt> lo = std::nullopt, std::optional<BigInt> hi = std::nullopt);
// Left-folded conjunction; returns nullptr for an empty list.
ExprPtr make_conjunction(const std::vector<ExprPtr>& parts);

bool is_arith_op(BinaryOp op);
bool is_cmp_op(BinaryOp op);
bool is_logic_op(BinaryOp op);
ArithOp to_arith_op(BinaryOp op);
CmpOp to_cmp_op(BinaryOp op);
BinaryOp from_cmp_op(CmpOp op);

std::set<std::string> free_vars(const Expr& e);
// True if some division in `e` has a divisor that is not a nonzero literal.
bool has_unguarded_division(const Expr& e);

struct Assign {
    std::string target;
    ExprPtr rhs;
};
struct Assume {
    ExprPtr cond;
};
struct Assert {
    ExprPtr cond;
};
struct If {
    ExprPtr cond;
    Block then_block;
    std::optional<Block> else_block;
};
struct While {
    ExprPtr cond;
    Block body;
};
struct Call {
    std::string callee;
    std::vector<ExprPtr> args;
    std::optional<std::string> result;
};
struct Return {
    ExprPtr value; // null for a bare `return;`
};
struct Skip {};

class Stmt {
  public:
    using Node = std::variant<Assign, Assume, Assert, If, While, Call, Return, Skip>;

    explicit Stmt(Node node) : node_(std::move(node)) {}

    [[nodiscard]] const Node& node() const { return node_; }
    template <typename T>
    [[nodiscard]] const T* as() const {
        return std::get_if<T>(&node_);
    }

  private:
    Node node_;
};

bool operator==(const Stmt& a, const Stmt& b);
bool same_block(const Block& a, const Block& b);

StmtPtr make_stmt(Stmt::Node node);

struct Function {
    std::string name;
    std::vector<std::string> params;
    std::vector<std::string> locals;
    Block body;

    [[nodiscard]] std::vector<std::string> variables() const;
    friend bool operator==(const Function& a, const Function& b);
};

struct Program {
    std::vector<Function> functions;
    std::string entry = "main";

    [[nodiscard]] const Function* find(std::string_view name) const;
    [[nodiscard]] const Function& entry_function() const;
    friend bool operator==(const Program& a, const Program& b);
};

} // namespace minibox
