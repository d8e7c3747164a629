#include "minibox/printer.hpp"

#include <sstream>

#include "overloaded.hpp"

namespace minibox {

using detail::overloaded;

namespace {

int precedence(BinaryOp op) {
    switch (op) {
    case BinaryOp::lor: return 1;
    case BinaryOp::land: return 2;
    case BinaryOp::add:
    case BinaryOp::sub: return 4;
    case BinaryOp::mul:
    case BinaryOp::div: return 5;
    default: return 3;
    }
}

constexpr int unary_prec = 6;
constexpr int atom_prec = 7;

std::string_view symbol(BinaryOp op) {
    switch (op) {
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    case BinaryOp::mul: return "*";
    case BinaryOp::div: return "/";
    case BinaryOp::land: return "&&";
    case BinaryOp::lor: return "||";
    default: return to_string(to_cmp_op(op));
    }
}

int precedence(const Expr& e) {
    if (const auto* b = e.as<Binary>()) {
        return precedence(b->op);
    }
    if (e.as<Unary>() != nullptr) {
        return unary_prec;
    }
    if (const auto* lit = e.as<IntLit>(); lit != nullptr && lit->value < 0) {
        return unary_prec;
    }
    return atom_prec;
}

void print(std::ostream& os, const Expr& e, int min_prec);

void print_operand(std::ostream& os, const Expr& e, int min_prec) {
    if (precedence(e) < min_prec) {
        os << '(';
        print(os, e, 0);
        os << ')';
    } else {
        print(os, e, min_prec);
    }
}

void print(std::ostream& os, const Expr& e, int /*min_prec*/) {
    std::visit(overloaded{
                   [&](const IntLit& x) { os << x.value; },
                   [&](const BoolLit& x) { os << (x.value ? "true" : "false"); },
                   [&](const VarRef& x) { os << x.name; },
                   [&](const Unary& x) {
                       os << (x.op == UnaryOp::neg ? "-" : "!");
                       // "-(3)" keeps a negated literal distinct from the literal -3.
                       if (x.op == UnaryOp::neg && x.operand->as<IntLit>() != nullptr) {
                           os << '(';
                           print(os, *x.operand, 0);
                           os << ')';
                       } else {
                           print_operand(os, *x.operand, unary_prec);
                       }
                   },
                   [&](const Binary& x) {
                       const int p = precedence(x.op);
                       const bool cmp = is_cmp_op(x.op);
                       print_operand(os, *x.lhs, cmp ? p + 1 : p);
                       os << ' ' << symbol(x.op) << ' ';
                       print_operand(os, *x.rhs, p + 1);
                   },
                   [&](const Nondet& x) {
                       os << "nondet(";
                       if (x.lo) {
                           os << *x.lo << ", " << *x.hi;
                       }
                       os << ')';
                   },
               },
               e.node());
}

void indent_to(std::ostream& os, int indent) {
    for (int i = 0; i < indent; ++i) {
        os << "    ";
    }
}

void print_block(std::ostream& os, const Block& b, int indent) {
    os << "{\n";
    for (const auto& s : b) {
        os << to_source(*s, indent + 1);
    }
    indent_to(os, indent);
    os << '}';
}

} // namespace

std::string to_source(const Expr& e) {
    std::ostringstream os;
    print(os, e, 0);
    return os.str();
}

std::string to_source(const Stmt& s, int indent) {
    std::ostringstream os;
    indent_to(os, indent);
    std::visit(overloaded{
                   [&](const Assign& x) { os << x.target << " = " << to_source(*x.rhs) << ';'; },
                   [&](const Assume& x) { os << "assume(" << to_source(*x.cond) << ");"; },
                   [&](const Assert& x) { os << "assert(" << to_source(*x.cond) << ");"; },
                   [&](const If& x) {
                       os << "if (" << to_source(*x.cond) << ") ";
                       print_block(os, x.then_block, indent);
                       if (x.else_block) {
                           os << " else ";
                           print_block(os, *x.else_block, indent);
                       }
                   },
                   [&](const While& x) {
                       os << "while (" << to_source(*x.cond) << ") ";
                       print_block(os, x.body, indent);
                   },
                   [&](const Call& x) {
                       if (x.result) {
                           os << *x.result << " = ";
                       }
                       os << x.callee << '(';
                       for (std::size_t i = 0; i < x.args.size(); ++i) {
                           os << (i == 0 ? "" : ", ") << to_source(*x.args[i]);
                       }
                       os << ");";
                   },
                   [&](const Return& x) {
                       os << "return";
                       if (x.value) {
                           os << ' ' << to_source(*x.value);
                       }
                       os << ';';
                   },
                   [&](const Skip&) { os << "skip;"; },
               },
               s.node());
    os << '\n';
    return os.str();
}

std::string to_source(const Function& f) {
    std::ostringstream os;
    os << "fn " << f.name << '(';
    for (std::size_t i = 0; i < f.params.size(); ++i) {
        os << (i == 0 ? "" : ", ") << f.params[i];
    }
    os << ") {\n";
    for (const auto& l : f.locals) {
        os << "    int " << l << ";\n";
    }
    for (const auto& s : f.body) {
        os << to_source(*s, 1);
    }
    os << "}\n";
    return os.str();
}

std::string to_source(const Program& p) {
    std::string out;
    for (std::size_t i = 0; i < p.functions.size(); ++i) {
        if (i != 0) {
            out += '\n';
        }
        out += to_source(p.functions[i]);
    }
    return out;
}

} // namespace minibox
