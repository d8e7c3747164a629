#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "minibox/ast.hpp"
#include "minibox/box.hpp"
#include "minibox/interval.hpp"
#include "minibox/truth3.hpp"

namespace minibox {

/// lhs `relation` rhs over arithmetic expressions.
struct Constraint {
    CmpOp relation;
    ExprPtr lhs;
    ExprPtr rhs;
};

/// An expression tree annotated bottom-up with interval values.
struct AnnotatedExpr {
    const Expr* expr = nullptr;
    Interval value;
    std::vector<AnnotatedExpr> children;
};

inline constexpr std::size_t default_contract_rounds = 10;
// Forward/backward passes one hc4_revise call may take before giving up on a fixpoint.
inline constexpr std::size_t max_revise_passes = 100;

AnnotatedExpr forward_eval(const Expr& e, const Box& box, ArithMode mode = ArithMode::precise);

// Root value of forward_eval without keeping the tree. Nondet evaluates to its range.
Interval evaluate(const Expr& e, const Box& box, ArithMode mode = ArithMode::precise);

/// Meets the root with `required` and projects the result down to the leaves.
/// Multiple occurrences of a variable meet their projections.
Box backward_prop(const AnnotatedExpr& tree, const Interval& required, Box box);

/// Forward-backward contraction of `box` by `c`, repeated until the box is stable
/// (or max_revise_passes). Keeps every integer point of `box` that satisfies `c`.
Box hc4_revise(const Constraint& c, const Box& box, ArithMode mode = ArithMode::precise);

/// Round-robin hc4_revise over `cs` until no range changes or `max_rounds` rounds ran.
Box contract_fixpoint(std::span<const Constraint> cs, const Box& box, std::size_t max_rounds = default_contract_rounds,
                      ArithMode mode = ArithMode::precise);

/// Contraction by a whole condition (polarity false contracts by its negation).
/// Conjunctions run to a joint fixpoint; disjunctions join the per-disjunct boxes.
Box contract_condition(const Expr& cond, bool polarity, const Box& box, ArithMode mode = ArithMode::precise);

struct Classification {
    Truth3 verdict = Truth3::maybe3;
    Box box_in;
    Box box_out;
};

/// box_in contracts under the condition, box_out under its negation. The verdict is
/// true3 when box_out is empty, false3 when box_in is empty, and maybe3 otherwise,
/// including for an empty input box and whenever a divisor may be zero.
Classification classify_condition(const Expr& cond, const Box& box, ArithMode mode = ArithMode::precise);

// Kleene evaluation of a condition from eval_cmp on the operands' intervals.
Truth3 eval_condition(const Expr& cond, const Box& box, ArithMode mode = ArithMode::precise);

// True if some divisor in `e` can evaluate to 0 over `box`.
bool may_divide_by_zero(const Expr& e, const Box& box, ArithMode mode = ArithMode::precise);

} // namespace minibox
