#include "minibox/optimize.hpp"

#include <functional>

#include "minibox/contractor.hpp"
#include "minibox/printer.hpp"
#include "overloaded.hpp"

namespace minibox {

using detail::overloaded;

bool RewriteReport::changed() const {
    return singletons_propagated + guards_eliminated() + constants_folded + dead_branches_removed > 0;
}

RewriteReport& RewriteReport::operator+=(const RewriteReport& other) {
    singletons_propagated += other.singletons_propagated;
    guards_resolved_true += other.guards_resolved_true;
    guards_resolved_false += other.guards_resolved_false;
    constants_folded += other.constants_folded;
    dead_branches_removed += other.dead_branches_removed;
    definite_violations.insert(definite_violations.end(), other.definite_violations.begin(),
                               other.definite_violations.end());
    return *this;
}

namespace {

const BoolLit* as_literal(const ExprPtr& e) { return e ? e->as<BoolLit>() : nullptr; }

bool same_ptrs(const Block& a, const Block& b) { return a == b; }

/// Shared block walker. Subclasses rewrite the expressions of one statement;
/// the walker rebuilds compound statements and flattens literal control flow.
class Rewriter {
  public:
    explicit Rewriter(RewriteReport& report) : report_(report) {}
    virtual ~Rewriter() = default;

    Program program(const Program& prog) {
        Program out = prog;
        for (auto& f : out.functions) {
            function_ = f.name;
            f.body = block(f.body);
        }
        return out;
    }

  protected:
    // `cond` belongs to `owner` (If, While, Assert or Assume).
    virtual ExprPtr condition(const StmtPtr& owner, const ExprPtr& cond) = 0;
    virtual ExprPtr value(const StmtPtr& owner, const ExprPtr& e) = 0;
    virtual void on_assert(const StmtPtr&, const ExprPtr&) {}

    RewriteReport& report_;
    std::string function_;

  private:
    Block block(const Block& b) {
        Block out;
        out.reserve(b.size());
        for (const auto& s : b) {
            statement(s, out);
        }
        return out;
    }

    void statement(const StmtPtr& s, Block& out) {
        std::visit(overloaded{
                       [&](const Assign& x) {
                           ExprPtr rhs = value(s, x.rhs);
                           out.push_back(rhs == x.rhs ? s : make_stmt(Assign{x.target, rhs}));
                       },
                       [&](const Assume& x) {
                           ExprPtr c = condition(s, x.cond);
                           out.push_back(c == x.cond ? s : make_stmt(Assume{c}));
                       },
                       [&](const Assert& x) {
                           ExprPtr c = condition(s, x.cond);
                           on_assert(s, c);
                           out.push_back(c == x.cond ? s : make_stmt(Assert{c}));
                       },
                       [&](const Call& x) {
                           std::vector<ExprPtr> args;
                           bool changed = false;
                           for (const auto& a : x.args) {
                               args.push_back(value(s, a));
                               changed = changed || args.back() != a;
                           }
                           out.push_back(changed ? make_stmt(Call{x.callee, std::move(args), x.result}) : s);
                       },
                       [&](const Return& x) {
                           ExprPtr v = x.value ? value(s, x.value) : nullptr;
                           out.push_back(v == x.value ? s : make_stmt(Return{v}));
                       },
                       [&](const If& x) {
                           ExprPtr c = condition(s, x.cond);
                           Block then_block = block(x.then_block);
                           std::optional<Block> else_block;
                           if (x.else_block) {
                               else_block = block(*x.else_block);
                           }
                           if (const auto* lit = as_literal(c)) {
                               ++report_.dead_branches_removed;
                               const Block& live = lit->value ? then_block : else_block ? *else_block : Block{};
                               out.insert(out.end(), live.begin(), live.end());
                               return;
                           }
                           const bool same = c == x.cond && same_ptrs(then_block, x.then_block) &&
                                             (!x.else_block || same_ptrs(*else_block, *x.else_block));
                           out.push_back(same ? s : make_stmt(If{c, std::move(then_block), std::move(else_block)}));
                       },
                       [&](const While& x) {
                           ExprPtr c = condition(s, x.cond);
                           if (const auto* lit = as_literal(c); lit != nullptr && !lit->value) {
                               ++report_.dead_branches_removed;
                               return;
                           }
                           Block body = block(x.body);
                           const bool same = c == x.cond && same_ptrs(body, x.body);
                           out.push_back(same ? s : make_stmt(While{c, std::move(body)}));
                       },
                       [&](const Skip&) { out.push_back(s); },
                   },
                   s->node());
    }
};

ExprPtr substitute(const ExprPtr& e, const Box& env, std::size_t& count) {
    return std::visit(overloaded{
                          [&](const VarRef& v) -> ExprPtr {
                              if (auto c = env.at(v.name).singleton_value()) {
                                  ++count;
                                  return make_int(*c);
                              }
                              return e;
                          },
                          [&](const Unary& u) -> ExprPtr {
                              ExprPtr o = substitute(u.operand, env, count);
                              return o == u.operand ? e : make_unary(u.op, o);
                          },
                          [&](const Binary& b) -> ExprPtr {
                              ExprPtr l = substitute(b.lhs, env, count);
                              ExprPtr r = substitute(b.rhs, env, count);
                              return l == b.lhs && r == b.rhs ? e : make_binary(b.op, l, r);
                          },
                          [&](const auto&) { return e; },
                      },
                      e->node());
}

class SingletonPropagator final : public Rewriter {
  public:
    SingletonPropagator(const ProgramAnalysis& analysis, RewriteReport& report)
        : Rewriter(report), analysis_(analysis) {}

  protected:
    ExprPtr condition(const StmtPtr& owner, const ExprPtr& cond) override { return value(owner, cond); }

    ExprPtr value(const StmtPtr& owner, const ExprPtr& e) override {
        const AbstractState* state = analysis_.before(function_, owner.get());
        if (state == nullptr || !state->reachable()) {
            return e;
        }
        return substitute(e, state->env, report_.singletons_propagated);
    }

  private:
    const ProgramAnalysis& analysis_;
};

class GuardEliminator final : public Rewriter {
  public:
    GuardEliminator(const ProgramAnalysis& analysis, RewriteReport& report) : Rewriter(report), analysis_(analysis) {}

  protected:
    ExprPtr condition(const StmtPtr& owner, const ExprPtr& cond) override {
        const AbstractState* state = analysis_.before(function_, owner.get());
        if (state == nullptr || !state->reachable()) {
            return cond;
        }
        return resolve(cond, state->env);
    }

    ExprPtr value(const StmtPtr&, const ExprPtr& e) override { return e; }

    void on_assert(const StmtPtr& owner, const ExprPtr& cond) override {
        const AbstractState* state = analysis_.before(function_, owner.get());
        const auto* lit = as_literal(cond);
        if (state != nullptr && state->reachable() && lit != nullptr && !lit->value) {
            report_.definite_violations.push_back(function_ + ": " + to_source(*owner->as<Assert>()->cond));
        }
    }

  private:
    Truth3 decide(const Expr& cond, const Box& env) const {
        const AnalysisConfig& config = analysis_.config;
        if (may_divide_by_zero(cond, env, config.arith)) {
            return Truth3::maybe3;
        }
        if (config.use_contractors) {
            return classify_condition(cond, env, config.arith).verdict;
        }
        return eval_condition(cond, env, config.arith);
    }

    ExprPtr literal_for(const ExprPtr& cond, Truth3 t) {
        if (t == Truth3::maybe3) {
            return nullptr;
        }
        const bool value = t == Truth3::true3;
        if (const auto* lit = as_literal(cond); lit != nullptr && lit->value == value) {
            return nullptr;
        }
        ++(value ? report_.guards_resolved_true : report_.guards_resolved_false);
        return make_bool(value);
    }

    ExprPtr resolve(const ExprPtr& cond, const Box& env) {
        if (ExprPtr lit = literal_for(cond, decide(*cond, env))) {
            return lit;
        }
        ExprPtr rewritten = cond;
        if (const auto* b = cond->as<Binary>(); b != nullptr && is_logic_op(b->op)) {
            ExprPtr l = resolve(b->lhs, env);
            ExprPtr r = resolve(b->rhs, env);
            if (l != b->lhs || r != b->rhs) {
                rewritten = make_binary(b->op, l, r);
            }
        } else if (const auto* u = cond->as<Unary>(); u != nullptr && u->op == UnaryOp::lnot) {
            ExprPtr o = resolve(u->operand, env);
            if (o != u->operand) {
                rewritten = make_unary(UnaryOp::lnot, o);
            }
        }
        if (rewritten != cond) {
            // One more look at the parent now that operands are literals.
            if (ExprPtr lit = literal_for(rewritten, decide(*rewritten, env))) {
                return lit;
            }
        }
        return rewritten;
    }

    const ProgramAnalysis& analysis_;
};

std::optional<BigInt> int_of(const ExprPtr& e) {
    if (const auto* lit = e->as<IntLit>()) {
        return lit->value;
    }
    return std::nullopt;
}

ExprPtr fold(const ExprPtr& e, std::size_t& count) {
    return std::visit(
        overloaded{
            [&](const Unary& u) -> ExprPtr {
                ExprPtr o = fold(u.operand, count);
                if (u.op == UnaryOp::neg) {
                    if (auto v = int_of(o)) {
                        ++count;
                        return make_int(BigInt(-*v));
                    }
                } else if (const auto* lit = as_literal(o)) {
                    ++count;
                    return make_bool(!lit->value);
                }
                return o == u.operand ? e : make_unary(u.op, o);
            },
            [&](const Binary& b) -> ExprPtr {
                ExprPtr l = fold(b.lhs, count);
                ExprPtr r = fold(b.rhs, count);
                const auto lv = int_of(l);
                const auto rv = int_of(r);
                if (lv && rv) {
                    if (is_arith_op(b.op)) {
                        if (b.op == BinaryOp::div && *rv == 0) {
                            return l == b.lhs && r == b.rhs ? e : make_binary(b.op, l, r);
                        }
                        ++count;
                        switch (b.op) {
                        case BinaryOp::add: return make_int(BigInt(*lv + *rv));
                        case BinaryOp::sub: return make_int(BigInt(*lv - *rv));
                        case BinaryOp::mul: return make_int(BigInt(*lv * *rv));
                        default: return make_int(trunc_div(*lv, *rv));
                        }
                    }
                    ++count;
                    return make_bool(holds(to_cmp_op(b.op), *lv, *rv));
                }
                if (is_logic_op(b.op)) {
                    // The absorbing literal wins only if the dropped side cannot fault.
                    const bool absorbing = b.op == BinaryOp::lor;
                    const auto* ll = as_literal(l);
                    const auto* rl = as_literal(r);
                    if (ll != nullptr) {
                        if (ll->value != absorbing) {
                            ++count;
                            return r;
                        }
                        if (!has_unguarded_division(*r)) {
                            ++count;
                            return l;
                        }
                    }
                    if (rl != nullptr) {
                        if (rl->value != absorbing) {
                            ++count;
                            return l;
                        }
                        if (!has_unguarded_division(*l)) {
                            ++count;
                            return r;
                        }
                    }
                }
                return l == b.lhs && r == b.rhs ? e : make_binary(b.op, l, r);
            },
            [&](const auto&) { return e; },
        },
        e->node());
}

class ConstFolder final : public Rewriter {
  public:
    explicit ConstFolder(RewriteReport& report) : Rewriter(report) {}

  protected:
    ExprPtr condition(const StmtPtr&, const ExprPtr& cond) override { return fold(cond, report_.constants_folded); }
    ExprPtr value(const StmtPtr&, const ExprPtr& e) override { return fold(e, report_.constants_folded); }
};

} // namespace

Rewrite singleton_propagate(const Program& prog, const ProgramAnalysis& analysis) {
    Rewrite out;
    SingletonPropagator pass(analysis, out.report);
    out.program = pass.program(prog);
    return out;
}

Rewrite guard_eliminate(const Program& prog, const ProgramAnalysis& analysis) {
    Rewrite out;
    GuardEliminator pass(analysis, out.report);
    out.program = pass.program(prog);
    return out;
}

Rewrite const_fold(const Program& prog) {
    Rewrite out{prog, {}};
    while (true) {
        RewriteReport round;
        ConstFolder pass(round);
        out.program = pass.program(out.program);
        if (!round.changed()) {
            break;
        }
        out.report += round;
    }
    return out;
}

Rewrite optimize_program(const Program& prog, const AnalysisConfig& config) {
    Rewrite propagated = singleton_propagate(prog, analyze_program(prog, config));
    Rewrite guarded = guard_eliminate(propagated.program, analyze_program(propagated.program, config));
    Rewrite folded = const_fold(guarded.program);
    folded.report += propagated.report;
    folded.report += guarded.report;
    return folded;
}

} // namespace minibox
