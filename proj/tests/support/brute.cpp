#include "brute.hpp"

#include <vector>

namespace minibox::testing {

std::optional<BigInt> eval_arith(const Expr& e, const Point& p) {
    if (const auto* x = e.as<IntLit>()) {
        return x->value;
    }
    if (const auto* x = e.as<VarRef>()) {
        return p.find(x->name)->second;
    }
    if (const auto* x = e.as<Unary>()) {
        auto v = eval_arith(*x->operand, p);
        return v ? std::optional<BigInt>(-*v) : std::nullopt;
    }
    const auto* b = e.as<Binary>();
    auto l = eval_arith(*b->lhs, p);
    auto r = eval_arith(*b->rhs, p);
    if (!l || !r) {
        return std::nullopt;
    }
    switch (b->op) {
    case BinaryOp::add: return *l + *r;
    case BinaryOp::sub: return *l - *r;
    case BinaryOp::mul: return *l * *r;
    default:
        if (*r == 0) {
            return std::nullopt;
        }
        return BigInt(*l / *r);
    }
}

std::optional<bool> eval_cond(const Expr& e, const Point& p) {
    if (const auto* x = e.as<BoolLit>()) {
        return x->value;
    }
    if (const auto* x = e.as<Unary>()) {
        auto v = eval_cond(*x->operand, p);
        return v ? std::optional<bool>(!*v) : std::nullopt;
    }
    const auto* b = e.as<Binary>();
    if (b->op == BinaryOp::land || b->op == BinaryOp::lor) {
        auto l = eval_cond(*b->lhs, p);
        auto r = eval_cond(*b->rhs, p);
        if (!l || !r) {
            return std::nullopt;
        }
        return b->op == BinaryOp::land ? (*l && *r) : (*l || *r);
    }
    auto l = eval_arith(*b->lhs, p);
    auto r = eval_arith(*b->rhs, p);
    if (!l || !r) {
        return std::nullopt;
    }
    switch (b->op) {
    case BinaryOp::eq: return *l == *r;
    case BinaryOp::ne: return *l != *r;
    case BinaryOp::lt: return *l < *r;
    case BinaryOp::le: return *l <= *r;
    case BinaryOp::gt: return *l > *r;
    default: return *l >= *r;
    }
}

Interval brute_binop(ArithOp op, long alo, long ahi, long blo, long bhi) {
    std::optional<long> lo;
    std::optional<long> hi;
    for (long x = alo; x <= ahi; ++x) {
        for (long y = blo; y <= bhi; ++y) {
            long v = 0;
            switch (op) {
            case ArithOp::add: v = x + y; break;
            case ArithOp::sub: v = x - y; break;
            case ArithOp::mul: v = x * y; break;
            case ArithOp::div:
                if (y == 0) {
                    continue;
                }
                v = x / y;
                break;
            }
            lo = lo ? std::min(*lo, v) : v;
            hi = hi ? std::max(*hi, v) : v;
        }
    }
    return lo ? Interval(BigInt(*lo), BigInt(*hi)) : Interval::bottom();
}

Truth3 brute_cmp(CmpOp op, long alo, long ahi, long blo, long bhi) {
    bool some_true = false;
    bool some_false = false;
    for (long x = alo; x <= ahi; ++x) {
        for (long y = blo; y <= bhi; ++y) {
            (holds(op, BigInt(x), BigInt(y)) ? some_true : some_false) = true;
        }
    }
    if (some_true && !some_false) {
        return Truth3::true3;
    }
    if (some_false && !some_true) {
        return Truth3::false3;
    }
    return Truth3::maybe3;
}

void for_each_point(const Box& box, const std::function<void(const Point&)>& visit) {
    if (box.empty()) {
        return;
    }
    std::vector<std::string> vars = box.vars();
    Point p;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == vars.size()) {
            visit(p);
            return;
        }
        const Interval& r = box.at(vars[i]);
        for (BigInt v = r.lo().value(); v <= r.hi().value(); ++v) {
            p[vars[i]] = v;
            rec(i + 1);
        }
    };
    rec(0);
}

Box solution_hull(const Expr& cond, const Box& box) {
    std::map<std::string, Interval> hull;
    for (const auto& v : box.vars()) {
        hull[v] = Interval::bottom();
    }
    bool any = false;
    for_each_point(box, [&](const Point& p) {
        if (eval_cond(cond, p).value_or(false)) {
            any = true;
            for (const auto& [k, v] : p) {
                hull[k] = join(hull[k], Interval::singleton(v));
            }
        }
    });
    if (!any) {
        Box out = box;
        out.set_empty();
        return out;
    }
    return Box(hull);
}

} // namespace minibox::testing
