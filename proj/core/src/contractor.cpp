#include "minibox/contractor.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <stdexcept>

#include "overloaded.hpp"

namespace minibox {

using detail::overloaded;

namespace {

Interval nondet_range(const Nondet& n) {
    return {n.lo ? ExtInt(*n.lo) : ExtInt::neg_inf(), n.hi ? ExtInt(*n.hi) : ExtInt::pos_inf()};
}

// {x : x * y in v for some y in b}, hulled over the integers.
Interval mul_inverse(const Interval& v, const Interval& b) {
    if (v.is_bottom() || b.is_bottom()) {
        return Interval::bottom();
    }
    if (b.contains_zero() && v.contains_zero()) {
        return Interval::top();
    }
    Interval out;
    for (const Interval& part : {meet(b, Interval::at_most(-1)), meet(b, Interval::at_least(1))}) {
        if (part.is_bottom()) {
            continue;
        }
        std::optional<ExtInt> lo;
        std::optional<ExtInt> hi;
        for (const ExtInt* n : {&v.lo(), &v.hi()}) {
            for (const ExtInt* d : {&part.lo(), &part.hi()}) {
                ExtInt c;
                ExtInt f;
                if (n->is_finite() && d->is_finite()) {
                    c = ExtInt(ceil_div(n->value(), d->value()));
                    f = ExtInt(floor_div(n->value(), d->value()));
                } else if (!n->is_finite() && d->is_finite()) {
                    c = f = n->sign() * d->sign() > 0 ? ExtInt::pos_inf() : ExtInt::neg_inf();
                } else if (n->is_finite()) {
                    c = f = ExtInt(0);
                } else {
                    continue;
                }
                lo = lo ? min(*lo, c) : c;
                hi = hi ? max(*hi, f) : f;
            }
        }
        if (lo && hi) {
            out = join(out, Interval(*lo, *hi));
        }
    }
    return out;
}

// Projection of x * x in v onto x.
Interval square_inverse(const Interval& v, const Interval& x) {
    const Interval nonneg = meet(v, Interval::at_least(0));
    if (nonneg.is_bottom()) {
        return Interval::bottom();
    }
    const ExtInt root_lo(isqrt_ceil(nonneg.lo().value()));
    const ExtInt root_hi = nonneg.hi().is_finite() ? ExtInt(isqrt_floor(nonneg.hi().value())) : ExtInt::pos_inf();
    if (root_hi < root_lo) {
        return Interval::bottom();
    }
    return join(meet(x, Interval(-root_hi, -root_lo)), meet(x, Interval(root_lo, root_hi)));
}

// A divisor never takes the value 0 on a path that survives the division.
Interval shave_zero(const Interval& v) {
    if (v.is_bottom()) {
        return v;
    }
    ExtInt lo = v.lo().is_zero() ? ExtInt(1) : v.lo();
    ExtInt hi = v.hi().is_zero() ? ExtInt(-1) : v.hi();
    return {std::move(lo), std::move(hi)};
}

// Numerators a >= 0 or < 0 with trunc(a / p) in q, for divisors p in `pos` (all >= 1).
Interval div_numerator_pos(const Interval& q, const Interval& pos) {
    const ExtInt& p1 = pos.lo();
    const ExtInt& p2 = pos.hi();
    const ExtInt slack = p2 - ExtInt(1);
    Interval out;
    if (const Interval up = meet(q, Interval::at_least(1)); !up.is_bottom()) {
        out = join(out, Interval(up.lo() * p1, up.hi() * p2 + slack));
    }
    if (const Interval down = meet(q, Interval::at_most(-1)); !down.is_bottom()) {
        out = join(out, Interval(down.lo() * p2 - slack, down.hi() * p1));
    }
    if (q.contains_zero()) {
        out = join(out, Interval(-slack, slack));
    }
    return out;
}

// Numerator a with trunc(a / b) in v for some b in b_range. The remainder takes
// the sign of a, so each quotient sign is bounded separately.
Interval div_numerator_inverse(const Interval& v, const Interval& b_range) {
    if (v.is_bottom()) {
        return Interval::bottom();
    }
    Interval out;
    if (const Interval pos = meet(b_range, Interval::at_least(1)); !pos.is_bottom()) {
        out = join(out, div_numerator_pos(v, pos));
    }
    if (const Interval neg = meet(b_range, Interval::at_most(-1)); !neg.is_bottom()) {
        out = join(out, div_numerator_pos(negate(v), negate(neg)));
    }
    return out;
}

// Divisor b with trunc(a / b) in v for some a in a_range. With |q| >= 1,
// |a| / (|q| + 1) < |b| <= |a| / |q|.
Interval div_divisor_inverse(const Interval& v, const Interval& a_range) {
    if (v.is_bottom() || a_range.is_bottom()) {
        return Interval::bottom();
    }
    if (v.contains_zero()) {
        return Interval::top();
    }
    Interval out;
    for (const int sa : {1, -1}) {
        const Interval mag_a = sa > 0 ? meet(a_range, Interval::at_least(1)) : negate(meet(a_range, Interval::at_most(-1)));
        if (mag_a.is_bottom()) {
            continue;
        }
        for (const int sb : {1, -1}) {
            const Interval q = meet(sa * sb > 0 ? v : negate(v), Interval::at_least(1));
            if (q.is_bottom()) {
                continue;
            }
            const ExtInt lo =
                q.hi().is_finite() ? ExtInt(BigInt(floor_div(mag_a.lo().value(), BigInt(q.hi().value() + 1)) + 1)) : ExtInt(1);
            const ExtInt hi =
                mag_a.hi().is_finite() ? ExtInt(floor_div(mag_a.hi().value(), q.lo().value())) : ExtInt::pos_inf();
            const Interval mag_b(lo, hi);
            out = join(out, sb > 0 ? mag_b : negate(mag_b));
        }
    }
    return out;
}

void backward(const AnnotatedExpr& node, const Interval& required, Box& box) {
    if (box.empty()) {
        return;
    }
    const Interval v = meet(node.value, required);
    if (v.is_bottom()) {
        box.set_empty();
        return;
    }
    std::visit(overloaded{
                   [&](const VarRef& x) { box.refine(x.name, v); },
                   [&](const Unary& u) {
                       if (u.op != UnaryOp::neg) {
                           throw std::logic_error("backward_prop over a boolean expression");
                       }
                       backward(node.children[0], negate(v), box);
                   },
                   [&](const Binary& b) {
                       const AnnotatedExpr& lhs = node.children[0];
                       const AnnotatedExpr& rhs = node.children[1];
                       const Interval& a = lhs.value;
                       const Interval& c = rhs.value;
                       switch (b.op) {
                       case BinaryOp::add:
                           backward(lhs, interval_binop(ArithOp::sub, v, c), box);
                           backward(rhs, interval_binop(ArithOp::sub, v, a), box);
                           return;
                       case BinaryOp::sub:
                           backward(lhs, interval_binop(ArithOp::add, v, c), box);
                           backward(rhs, interval_binop(ArithOp::sub, a, v), box);
                           return;
                       case BinaryOp::mul: {
                           const auto* x = b.lhs->as<VarRef>();
                           const auto* y = b.rhs->as<VarRef>();
                           if (x != nullptr && y != nullptr && x->name == y->name) {
                               box.refine(x->name, square_inverse(v, box.at(x->name)));
                               return;
                           }
                           backward(lhs, mul_inverse(v, c), box);
                           backward(rhs, mul_inverse(v, a), box);
                           return;
                       }
                       case BinaryOp::div:
                           backward(lhs, div_numerator_inverse(v, c), box);
                           backward(rhs, shave_zero(meet(c, div_divisor_inverse(v, a))), box);
                           return;
                       default: throw std::logic_error("backward_prop over a boolean expression");
                       }
                   },
                   [](const auto&) {},
               },
               node.expr->node());
}

// Negation-normal form of a condition.
struct Nnf {
    enum class Kind : std::uint8_t { constant, atom, conj, disj };
    Kind kind = Kind::constant;
    bool value = true;
    Constraint atom{};
    std::vector<Nnf> children;
};

Nnf to_nnf(const Expr& cond, bool negated) {
    return std::visit(
        overloaded{
            [&](const BoolLit& b) {
                Nnf n;
                n.value = b.value != negated;
                return n;
            },
            [&](const Unary& u) {
                if (u.op != UnaryOp::lnot) {
                    throw std::logic_error("condition expected");
                }
                return to_nnf(*u.operand, !negated);
            },
            [&](const Binary& b) {
                Nnf n;
                if (is_logic_op(b.op)) {
                    const bool conj = (b.op == BinaryOp::land) != negated;
                    n.kind = conj ? Nnf::Kind::conj : Nnf::Kind::disj;
                    for (const ExprPtr* side : {&b.lhs, &b.rhs}) {
                        Nnf child = to_nnf(**side, negated);
                        if (child.kind == n.kind) {
                            for (auto& grandchild : child.children) {
                                n.children.push_back(std::move(grandchild));
                            }
                        } else {
                            n.children.push_back(std::move(child));
                        }
                    }
                    return n;
                }
                if (!is_cmp_op(b.op)) {
                    throw std::logic_error("condition expected");
                }
                const CmpOp op = to_cmp_op(b.op);
                n.kind = Nnf::Kind::atom;
                n.atom = Constraint{negated ? negate_cmp(op) : op, b.lhs, b.rhs};
                return n;
            },
            [](const auto&) -> Nnf { throw std::logic_error("condition expected"); },
        },
        cond.node());
}

Box contract_nnf(const Nnf& n, const Box& box, ArithMode mode) {
    if (box.empty()) {
        return box;
    }
    switch (n.kind) {
    case Nnf::Kind::constant: {
        if (n.value) {
            return box;
        }
        Box out = box;
        out.set_empty();
        return out;
    }
    case Nnf::Kind::atom: return hc4_revise(n.atom, box, mode);
    case Nnf::Kind::disj: {
        Box out = box;
        out.set_empty();
        for (const auto& child : n.children) {
            out = join(out, contract_nnf(child, box, mode));
        }
        return out;
    }
    case Nnf::Kind::conj: {
        std::vector<Constraint> atoms;
        for (const auto& child : n.children) {
            if (child.kind == Nnf::Kind::atom) {
                atoms.push_back(child.atom);
            }
        }
        if (atoms.size() == n.children.size()) {
            return contract_fixpoint(atoms, box, default_contract_rounds, mode);
        }
        Box current = box;
        for (std::size_t round = 0; round < default_contract_rounds; ++round) {
            const Box before = current;
            for (const auto& child : n.children) {
                current = contract_nnf(child, current, mode);
                if (current.empty()) {
                    return current;
                }
            }
            if (current == before) {
                break;
            }
        }
        return current;
    }
    }
    return box;
}

// Exact finite-set propagation for small boxes. Interval hulls lose the holes in
// integer images such as {x * y}, so HC4 alone cannot reach the solution hull.
namespace exact {

constexpr std::int64_t magnitude_limit = std::int64_t{1} << 31;
constexpr std::size_t set_limit = 4096;
constexpr std::size_t pair_limit = std::size_t{1} << 16;

using Values = std::vector<std::int64_t>;

struct Node {
    const Expr* expr;
    Values values;
    std::vector<Node> children;
};

void normalize(Values& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::optional<Values> range_values(const Interval& r) {
    if (r.is_bottom()) {
        return Values{};
    }
    if (!r.lo().is_finite() || !r.hi().is_finite()) {
        return std::nullopt;
    }
    const BigInt& lo = r.lo().value();
    const BigInt& hi = r.hi().value();
    if (hi - lo >= set_limit || abs(lo) >= magnitude_limit || abs(hi) >= magnitude_limit) {
        return std::nullopt;
    }
    Values out;
    for (auto x = lo.convert_to<std::int64_t>(); x <= hi.convert_to<std::int64_t>(); ++x) {
        out.push_back(x);
    }
    return out;
}

std::optional<std::int64_t> apply(BinaryOp op, std::int64_t a, std::int64_t b) {
    switch (op) {
    case BinaryOp::add: return a + b;
    case BinaryOp::sub: return a - b;
    case BinaryOp::mul: return a * b;
    case BinaryOp::div:
        if (b == 0) {
            return std::nullopt;
        }
        return a / b;
    default: throw std::logic_error("exact propagation over a boolean expression");
    }
}

std::optional<Node> forward(const Expr& e, const Box& box) {
    Node node{&e, {}, {}};
    bool ok = true;
    std::visit(overloaded{[&](const IntLit& x) {
                              if (abs(x.value) >= magnitude_limit) {
                                  ok = false;
                              } else {
                                  node.values = {x.value.convert_to<std::int64_t>()};
                              }
                          },
                          [&](const BoolLit&) { throw std::logic_error("exact propagation over a boolean expression"); },
                          [&](const VarRef& x) {
                              auto v = range_values(box.at(x.name));
                              ok = v.has_value();
                              if (ok) {
                                  node.values = std::move(*v);
                              }
                          },
                          [&](const Nondet& x) {
                              auto v = range_values(nondet_range(x));
                              ok = v.has_value();
                              if (ok) {
                                  node.values = std::move(*v);
                              }
                          },
                          [&](const Unary& u) {
                              if (u.op != UnaryOp::neg) {
                                  throw std::logic_error("exact propagation over a boolean expression");
                              }
                              auto child = forward(*u.operand, box);
                              if (!child) {
                                  ok = false;
                                  return;
                              }
                              for (const std::int64_t x : child->values) {
                                  node.values.push_back(-x);
                              }
                              normalize(node.values);
                              node.children.push_back(std::move(*child));
                          },
                          [&](const Binary& b) {
                              auto lhs = forward(*b.lhs, box);
                              auto rhs = lhs ? forward(*b.rhs, box) : std::nullopt;
                              if (!rhs || lhs->values.size() * rhs->values.size() > pair_limit) {
                                  ok = false;
                                  return;
                              }
                              for (const std::int64_t x : lhs->values) {
                                  for (const std::int64_t y : rhs->values) {
                                      const auto v = apply(b.op, x, y);
                                      if (v && (*v >= magnitude_limit || *v <= -magnitude_limit)) {
                                          ok = false;
                                          return;
                                      }
                                      if (v) {
                                          node.values.push_back(*v);
                                      }
                                  }
                              }
                              normalize(node.values);
                              if (node.values.size() > set_limit) {
                                  ok = false;
                                  return;
                              }
                              node.children.push_back(std::move(*lhs));
                              node.children.push_back(std::move(*rhs));
                          }},
               e.node());
    if (!ok) {
        return std::nullopt;
    }
    return node;
}

bool member(const Values& v, std::int64_t x) { return std::binary_search(v.begin(), v.end(), x); }

// Restricts every node to values that take part in some allowed root value.
void backward(const Node& node, const Values& allowed, Box& box) {
    Values kept;
    std::set_intersection(node.values.begin(), node.values.end(), allowed.begin(), allowed.end(),
                          std::back_inserter(kept));
    if (kept.empty()) {
        box.set_empty();
        return;
    }
    std::visit(overloaded{[&](const VarRef& x) {
                              box.refine(x.name, Interval(BigInt(kept.front()), BigInt(kept.back())));
                          },
                          [&](const Unary&) {
                              Values child;
                              for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
                                  child.push_back(-*it);
                              }
                              backward(node.children[0], child, box);
                          },
                          [&](const Binary& b) {
                              Values lhs;
                              Values rhs;
                              for (const std::int64_t x : node.children[0].values) {
                                  for (const std::int64_t y : node.children[1].values) {
                                      const auto v = apply(b.op, x, y);
                                      if (v && member(kept, *v)) {
                                          lhs.push_back(x);
                                          rhs.push_back(y);
                                      }
                                  }
                              }
                              normalize(lhs);
                              normalize(rhs);
                              backward(node.children[0], lhs, box);
                              if (!box.empty()) {
                                  backward(node.children[1], rhs, box);
                              }
                          },
                          [](const auto&) {}},
               node.expr->node());
}

bool satisfies(CmpOp rel, std::int64_t d) {
    switch (rel) {
    case CmpOp::eq: return d == 0;
    case CmpOp::ne: return d != 0;
    case CmpOp::lt: return d < 0;
    case CmpOp::le: return d <= 0;
    case CmpOp::gt: return d > 0;
    case CmpOp::ge: return d >= 0;
    }
    return false;
}

// Returns nullopt when the box is too large for exact propagation.
std::optional<Box> revise(const Expr& difference, CmpOp rel, const Box& box) {
    const auto root = forward(difference, box);
    if (!root) {
        return std::nullopt;
    }
    Values allowed;
    for (const std::int64_t d : root->values) {
        if (satisfies(rel, d)) {
            allowed.push_back(d);
        }
    }
    Box out = box;
    backward(*root, allowed, out);
    return out;
}

} // namespace exact

} // namespace

AnnotatedExpr forward_eval(const Expr& e, const Box& box, ArithMode mode) {
    AnnotatedExpr node;
    node.expr = &e;
    std::visit(overloaded{
                   [&](const IntLit& x) { node.value = Interval::singleton(x.value); },
                   [&](const VarRef& x) { node.value = box.at(x.name); },
                   [&](const Nondet& x) { node.value = nondet_range(x); },
                   [&](const Unary& u) {
                       if (u.op != UnaryOp::neg) {
                           throw std::logic_error("forward_eval over a boolean expression");
                       }
                       node.children.push_back(forward_eval(*u.operand, box, mode));
                       node.value = negate(node.children[0].value);
                   },
                   [&](const Binary& b) {
                       if (!is_arith_op(b.op)) {
                           throw std::logic_error("forward_eval over a boolean expression");
                       }
                       node.children.push_back(forward_eval(*b.lhs, box, mode));
                       node.children.push_back(forward_eval(*b.rhs, box, mode));
                       node.value =
                           interval_binop(to_arith_op(b.op), node.children[0].value, node.children[1].value, mode);
                   },
                   [](const BoolLit&) { throw std::logic_error("forward_eval over a boolean expression"); },
               },
               e.node());
    return node;
}

Interval evaluate(const Expr& e, const Box& box, ArithMode mode) {
    return std::visit(overloaded{
                          [&](const IntLit& x) { return Interval::singleton(x.value); },
                          [&](const VarRef& x) { return box.at(x.name); },
                          [&](const Nondet& x) { return nondet_range(x); },
                          [&](const Unary& u) {
                              if (u.op != UnaryOp::neg) {
                                  throw std::logic_error("evaluate over a boolean expression");
                              }
                              return negate(evaluate(*u.operand, box, mode));
                          },
                          [&](const Binary& b) {
                              if (!is_arith_op(b.op)) {
                                  throw std::logic_error("evaluate over a boolean expression");
                              }
                              return interval_binop(to_arith_op(b.op), evaluate(*b.lhs, box, mode),
                                                    evaluate(*b.rhs, box, mode), mode);
                          },
                          [](const BoolLit&) -> Interval { throw std::logic_error("evaluate over a boolean expression"); },
                      },
                      e.node());
}

Box backward_prop(const AnnotatedExpr& tree, const Interval& required, Box box) {
    backward(tree, required, box);
    return box;
}

namespace {

// A pass that only moves the finite end of a half-infinite range can repeat
// forever with growing bounds, so iteration continues only on finite progress.
bool finite_progress(const Box& from, const Box& to) {
    if (to.empty()) {
        return true;
    }
    for (const auto& [name, before] : from.ranges()) {
        const Interval& after = to.at(name);
        if (before == after) {
            continue;
        }
        if (before.lo().is_finite() != after.lo().is_finite() || before.hi().is_finite() != after.hi().is_finite()) {
            return true;
        }
        if (before.is_finite()) {
            return true;
        }
    }
    return false;
}

} // namespace

Box hc4_revise(const Constraint& c, const Box& box, ArithMode mode) {
    if (box.empty()) {
        return box;
    }
    const Expr difference(Binary{BinaryOp::sub, c.lhs, c.rhs});
    Box current = box;
    for (std::size_t pass = 0; pass < max_revise_passes; ++pass) {
        const AnnotatedExpr tree = forward_eval(difference, current, mode);
        const Interval& d = tree.value;
        Interval required;
        switch (c.relation) {
        case CmpOp::eq: required = Interval::singleton(0); break;
        case CmpOp::le: required = Interval::at_most(0); break;
        case CmpOp::lt: required = Interval::at_most(-1); break;
        case CmpOp::ge: required = Interval::at_least(0); break;
        case CmpOp::gt: required = Interval::at_least(1); break;
        case CmpOp::ne:
            // Only a zero endpoint can be cut off a box.
            if (d.is_bottom() || (d.is_singleton() && d.lo().is_zero())) {
                required = Interval::bottom();
            } else if (d.lo().is_zero()) {
                required = Interval::at_least(1);
            } else if (d.hi().is_zero()) {
                required = Interval::at_most(-1);
            } else {
                required = Interval::top();
            }
            break;
        }
        Box next = backward_prop(tree, required, current);
        if (next == current) {
            auto refined = exact::revise(difference, c.relation, current);
            if (!refined || *refined == current) {
                break;
            }
            next = std::move(*refined);
        }
        const bool progress = finite_progress(current, next);
        current = std::move(next);
        if (current.empty() || !progress) {
            break;
        }
    }
    return current;
}

Box contract_fixpoint(std::span<const Constraint> cs, const Box& box, std::size_t max_rounds, ArithMode mode) {
    if (max_rounds == 0) {
        throw std::invalid_argument("contract_fixpoint: max_rounds must be at least 1");
    }
    Box current = box;
    for (std::size_t round = 0; round < max_rounds && !current.empty(); ++round) {
        const Box before = current;
        for (const auto& c : cs) {
            current = hc4_revise(c, current, mode);
            if (current.empty()) {
                break;
            }
        }
        if (current == before) {
            break;
        }
    }
    return current;
}

Box contract_condition(const Expr& cond, bool polarity, const Box& box, ArithMode mode) {
    return contract_nnf(to_nnf(cond, !polarity), box, mode);
}

Classification classify_condition(const Expr& cond, const Box& box, ArithMode mode) {
    Classification out;
    out.box_in = contract_condition(cond, true, box, mode);
    out.box_out = contract_condition(cond, false, box, mode);
    if (box.empty() || may_divide_by_zero(cond, box, mode)) {
        out.verdict = Truth3::maybe3;
    } else if (out.box_out.empty() && !out.box_in.empty()) {
        out.verdict = Truth3::true3;
    } else if (out.box_in.empty() && !out.box_out.empty()) {
        out.verdict = Truth3::false3;
    }
    return out;
}

Truth3 eval_condition(const Expr& cond, const Box& box, ArithMode mode) {
    return std::visit(overloaded{
                          [&](const BoolLit& b) { return to_truth3(b.value); },
                          [&](const Unary& u) {
                              if (u.op != UnaryOp::lnot) {
                                  throw std::logic_error("condition expected");
                              }
                              return truth_not(eval_condition(*u.operand, box, mode));
                          },
                          [&](const Binary& b) {
                              if (b.op == BinaryOp::land) {
                                  return truth_and(eval_condition(*b.lhs, box, mode), eval_condition(*b.rhs, box, mode));
                              }
                              if (b.op == BinaryOp::lor) {
                                  return truth_or(eval_condition(*b.lhs, box, mode), eval_condition(*b.rhs, box, mode));
                              }
                              return eval_cmp(to_cmp_op(b.op), evaluate(*b.lhs, box, mode), evaluate(*b.rhs, box, mode));
                          },
                          [](const auto&) -> Truth3 { throw std::logic_error("condition expected"); },
                      },
                      cond.node());
}

bool may_divide_by_zero(const Expr& e, const Box& box, ArithMode mode) {
    return std::visit(overloaded{
                          [&](const Unary& u) { return may_divide_by_zero(*u.operand, box, mode); },
                          [&](const Binary& b) {
                              if (b.op == BinaryOp::div && evaluate(*b.rhs, box, mode).contains_zero()) {
                                  return true;
                              }
                              return may_divide_by_zero(*b.lhs, box, mode) || may_divide_by_zero(*b.rhs, box, mode);
                          },
                          [](const auto&) { return false; },
                      },
                      e.node());
}

} // namespace minibox
