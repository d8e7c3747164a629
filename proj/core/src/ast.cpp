#include "minibox/ast.hpp"

#include <stdexcept>

#include "overloaded.hpp"

namespace minibox {

using detail::overloaded;

namespace {

void collect_vars(const Expr& e, std::set<std::string>& out) {
    std::visit(overloaded{
                   [&](const VarRef& v) { out.insert(v.name); },
                   [&](const Unary& u) { collect_vars(*u.operand, out); },
                   [&](const Binary& b) {
                       collect_vars(*b.lhs, out);
                       collect_vars(*b.rhs, out);
                   },
                   [](const auto&) {},
               },
               e.node());
}

} // namespace

bool Expr::is_bool() const {
    return std::visit(overloaded{
                          [](const BoolLit&) { return true; },
                          [](const Unary& u) { return u.op == UnaryOp::lnot; },
                          [](const Binary& b) { return !is_arith_op(b.op); },
                          [](const auto&) { return false; },
                      },
                      node_);
}

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) {
        return true;
    }
    if (!a || !b) {
        return false;
    }
    return *a == *b;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node().index() != b.node().index()) {
        return false;
    }
    return std::visit(overloaded{
                          [&](const IntLit& x) { return x.value == b.as<IntLit>()->value; },
                          [&](const BoolLit& x) { return x.value == b.as<BoolLit>()->value; },
                          [&](const VarRef& x) { return x.name == b.as<VarRef>()->name; },
                          [&](const Unary& x) {
                              const auto* y = b.as<Unary>();
                              return x.op == y->op && same_expr(x.operand, y->operand);
                          },
                          [&](const Binary& x) {
                              const auto* y = b.as<Binary>();
                              return x.op == y->op && same_expr(x.lhs, y->lhs) && same_expr(x.rhs, y->rhs);
                          },
                          [&](const Nondet& x) {
                              const auto* y = b.as<Nondet>();
                              return x.lo == y->lo && x.hi == y->hi;
                          },
                      },
                      a.node());
}

ExprPtr make_int(BigInt v) { return std::make_shared<const Expr>(IntLit{std::move(v)}); }
ExprPtr make_bool(bool v) { return std::make_shared<const Expr>(BoolLit{v}); }
ExprPtr make_var(std::string name) { return std::make_shared<const Expr>(VarRef{std::move(name)}); }
ExprPtr make_unary(UnaryOp op, ExprPtr operand) { return std::make_shared<const Expr>(Unary{op, std::move(operand)}); }
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<const Expr>(Binary{op, std::move(lhs), std::move(rhs)});
}
ExprPtr make_nondet(std::optional<BigInt> lo, std::optional<BigInt> hi) {
    return std::make_shared<const Expr>(Nondet{std::move(lo), std::move(hi)});
}

ExprPtr make_conjunction(const std::vector<ExprPtr>& parts) {
    ExprPtr out;
    for (const auto& p : parts) {
        out = out ? make_binary(BinaryOp::land, out, p) : p;
    }
    return out;
}

bool is_arith_op(BinaryOp op) {
    return op == BinaryOp::add || op == BinaryOp::sub || op == BinaryOp::mul || op == BinaryOp::div;
}
bool is_logic_op(BinaryOp op) { return op == BinaryOp::land || op == BinaryOp::lor; }
bool is_cmp_op(BinaryOp op) { return !is_arith_op(op) && !is_logic_op(op); }

ArithOp to_arith_op(BinaryOp op) {
    switch (op) {
    case BinaryOp::add: return ArithOp::add;
    case BinaryOp::sub: return ArithOp::sub;
    case BinaryOp::mul: return ArithOp::mul;
    case BinaryOp::div: return ArithOp::div;
    default: throw std::logic_error("not an arithmetic operator");
    }
}

CmpOp to_cmp_op(BinaryOp op) {
    switch (op) {
    case BinaryOp::eq: return CmpOp::eq;
    case BinaryOp::ne: return CmpOp::ne;
    case BinaryOp::lt: return CmpOp::lt;
    case BinaryOp::le: return CmpOp::le;
    case BinaryOp::gt: return CmpOp::gt;
    case BinaryOp::ge: return CmpOp::ge;
    default: throw std::logic_error("not a comparison operator");
    }
}

BinaryOp from_cmp_op(CmpOp op) {
    switch (op) {
    case CmpOp::eq: return BinaryOp::eq;
    case CmpOp::ne: return BinaryOp::ne;
    case CmpOp::lt: return BinaryOp::lt;
    case CmpOp::le: return BinaryOp::le;
    case CmpOp::gt: return BinaryOp::gt;
    case CmpOp::ge: return BinaryOp::ge;
    }
    return BinaryOp::eq;
}

std::set<std::string> free_vars(const Expr& e) {
    std::set<std::string> out;
    collect_vars(e, out);
    return out;
}

bool has_unguarded_division(const Expr& e) {
    return std::visit(overloaded{
                          [](const Unary& u) { return has_unguarded_division(*u.operand); },
                          [](const Binary& b) {
                              if (b.op == BinaryOp::div) {
                                  const auto* lit = b.rhs->as<IntLit>();
                                  if (lit == nullptr || lit->value.is_zero()) {
                                      return true;
                                  }
                              }
                              return has_unguarded_division(*b.lhs) || has_unguarded_division(*b.rhs);
                          },
                          [](const auto&) { return false; },
                      },
                      e.node());
}

bool same_block(const Block& a, const Block& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i] && !(*a[i] == *b[i])) {
            return false;
        }
    }
    return true;
}

bool operator==(const Stmt& a, const Stmt& b) {
    if (a.node().index() != b.node().index()) {
        return false;
    }
    return std::visit(overloaded{
                          [&](const Assign& x) {
                              const auto* y = b.as<Assign>();
                              return x.target == y->target && same_expr(x.rhs, y->rhs);
                          },
                          [&](const Assume& x) { return same_expr(x.cond, b.as<Assume>()->cond); },
                          [&](const Assert& x) { return same_expr(x.cond, b.as<Assert>()->cond); },
                          [&](const If& x) {
                              const auto* y = b.as<If>();
                              if (!same_expr(x.cond, y->cond) || !same_block(x.then_block, y->then_block)) {
                                  return false;
                              }
                              if (x.else_block.has_value() != y->else_block.has_value()) {
                                  return false;
                              }
                              return !x.else_block || same_block(*x.else_block, *y->else_block);
                          },
                          [&](const While& x) {
                              const auto* y = b.as<While>();
                              return same_expr(x.cond, y->cond) && same_block(x.body, y->body);
                          },
                          [&](const Call& x) {
                              const auto* y = b.as<Call>();
                              if (x.callee != y->callee || x.result != y->result || x.args.size() != y->args.size()) {
                                  return false;
                              }
                              for (std::size_t i = 0; i < x.args.size(); ++i) {
                                  if (!same_expr(x.args[i], y->args[i])) {
                                      return false;
                                  }
                              }
                              return true;
                          },
                          [&](const Return& x) { return same_expr(x.value, b.as<Return>()->value); },
                          [](const Skip&) { return true; },
                      },
                      a.node());
}

StmtPtr make_stmt(Stmt::Node node) { return std::make_shared<const Stmt>(std::move(node)); }

std::vector<std::string> Function::variables() const {
    std::vector<std::string> out = params;
    out.insert(out.end(), locals.begin(), locals.end());
    return out;
}

bool operator==(const Function& a, const Function& b) {
    return a.name == b.name && a.params == b.params && a.locals == b.locals && same_block(a.body, b.body);
}

const Function* Program::find(std::string_view name) const {
    for (const auto& f : functions) {
        if (f.name == name) {
            return &f;
        }
    }
    return nullptr;
}

const Function& Program::entry_function() const {
    const Function* f = find(entry);
    if (f == nullptr) {
        throw std::logic_error("program has no entry function '" + entry + "'");
    }
    return *f;
}

bool operator==(const Program& a, const Program& b) { return a.entry == b.entry && a.functions == b.functions; }

} // namespace minibox
