#include "minibox/oracle.hpp"

#include <set>
#include <sstream>
#include <tuple>

#include "overloaded.hpp"

namespace minibox {

using detail::overloaded;

std::string to_string(VerdictKind kind) {
    switch (kind) {
    case VerdictKind::ok: return "ok";
    case VerdictKind::assert_failed: return "assert-failed";
    case VerdictKind::assume_infeasible: return "assume-infeasible";
    case VerdictKind::div_by_zero: return "div-by-zero";
    case VerdictKind::step_limit: return "step-limit";
    }
    return "?";
}

std::string Verdict::to_string() const {
    std::string out = minibox::to_string(kind);
    if (node) {
        out += "(" + function + "#" + std::to_string(node->index) + ")";
    }
    return out;
}

std::string SoundnessViolation::to_string() const {
    std::ostringstream out;
    out << function << "#" << node.index << " " << where << ": " << var << " = " << value << " not in "
        << claimed.to_string();
    return out.str();
}

namespace {

void require_bounded(const Expr& e) {
    std::visit(overloaded{
                   [](const Nondet& n) {
                       if (!n.lo || !n.hi) {
                           throw OracleError("unbounded nondet");
                       }
                   },
                   [](const Unary& u) { require_bounded(*u.operand); },
                   [](const Binary& b) {
                       require_bounded(*b.lhs);
                       require_bounded(*b.rhs);
                   },
                   [](const auto&) {},
               },
               e.node());
}

void require_bounded(const Block& block) {
    for (const auto& s : block) {
        std::visit(overloaded{
                       [](const Assign& x) { require_bounded(*x.rhs); },
                       [](const If& x) {
                           require_bounded(x.then_block);
                           if (x.else_block) {
                               require_bounded(*x.else_block);
                           }
                       },
                       [](const While& x) { require_bounded(x.body); },
                       [](const auto&) {},
                   },
                   s->node());
    }
}

struct Choice {
    BigInt value;
    BigInt lo;
    BigInt hi;
};

struct Halt {
    Verdict verdict;
};

struct ReturnSignal {
    BigInt value;
};

class Machine {
  public:
    Machine(const Program& prog, const std::map<std::string, Cfg, std::less<>>& cfgs, const OracleOptions& options,
            const TraceObserver& on_point)
        : prog_(prog), cfgs_(cfgs), options_(options), on_point_(on_point) {}

    // Uses `prefix` for the first choices and lower bounds after that.
    ConcreteState run(std::span<const BigInt> prefix, std::span<const Choice> expected = {}) {
        prefix_ = prefix;
        expected_ = expected;
        choices_.clear();
        steps_ = 0;
        state_ = ConcreteState{};
        const Function& main = prog_.entry_function();
        Env env = fresh_env(main, {});
        try {
            call_function(main, env);
        } catch (const Halt& h) {
            state_.verdict = h.verdict;
        }
        state_.env = env;
        for (const auto& c : choices_) {
            state_.choices.push_back(c.value);
        }
        return std::move(state_);
    }

    [[nodiscard]] const std::vector<Choice>& choices() const { return choices_; }

  private:
    static Env fresh_env(const Function& f, const std::vector<BigInt>& args) {
        Env env;
        for (std::size_t i = 0; i < f.params.size(); ++i) {
            env.emplace(f.params[i], args[i]);
        }
        for (const auto& v : f.locals) {
            env.emplace(v, BigInt(0));
        }
        return env;
    }

    struct Frame {
        const Function* function;
        const Cfg* cfg;
        Env* env;
    };

    BigInt call_function(const Function& f, Env& env) {
        Frame frame{&f, &cfgs_.find(f.name)->second, &env};
        BigInt result = 0;
        try {
            block(frame, f.body);
        } catch (ReturnSignal& r) {
            result = std::move(r.value);
        }
        if (!frame.cfg->exits().empty()) {
            point(frame, *frame.cfg->exits().begin(), std::nullopt);
        }
        return result;
    }

    void point(const Frame& frame, NodeId node, std::optional<bool> branch) {
        if (on_point_) {
            on_point_(TracePoint{frame.function->name, node, *frame.env, branch});
        }
        if (options_.record_trace && !branch) {
            state_.trace.push_back({frame.function->name, node, *frame.env});
        }
    }

    [[noreturn]] static void halt(VerdictKind kind, const Frame& frame, NodeId node) {
        throw Halt{{kind, frame.function->name, node}};
    }

    BigInt choose(const Nondet& n) {
        const std::size_t index = choices_.size();
        const BigInt& lo = *n.lo;
        const BigInt& hi = *n.hi;
        if (!expected_.empty()) {
            if (index >= expected_.size() || expected_[index].lo != lo || expected_[index].hi != hi) {
                throw OracleError("mismatched nondet structure at choice " + std::to_string(index));
            }
        }
        BigInt value = index < prefix_.size() ? prefix_[index] : lo;
        if (value < lo || value > hi) {
            throw OracleError("mismatched nondet structure at choice " + std::to_string(index));
        }
        choices_.push_back({value, lo, hi});
        return value;
    }

    BigInt arith(const Frame& frame, NodeId node, const Expr& e) {
        return std::visit(overloaded{
                              [](const IntLit& x) -> BigInt { return x.value; },
                              [&](const VarRef& x) -> BigInt { return frame.env->find(x.name)->second; },
                              [&](const Unary& x) -> BigInt { return -arith(frame, node, *x.operand); },
                              [&](const Binary& x) -> BigInt {
                                  BigInt l = arith(frame, node, *x.lhs);
                                  BigInt r = arith(frame, node, *x.rhs);
                                  switch (x.op) {
                                  case BinaryOp::add: return l + r;
                                  case BinaryOp::sub: return l - r;
                                  case BinaryOp::mul: return l * r;
                                  default:
                                      if (r == 0) {
                                          halt(VerdictKind::div_by_zero, frame, node);
                                      }
                                      return trunc_div(l, r);
                                  }
                              },
                              [&](const Nondet& x) -> BigInt { return choose(x); },
                              [](const BoolLit&) -> BigInt { throw std::logic_error("boolean in arithmetic"); },
                          },
                          e.node());
    }

    // && and || evaluate both operands.
    bool boolean(const Frame& frame, NodeId node, const Expr& e) {
        return std::visit(overloaded{
                              [](const BoolLit& x) { return x.value; },
                              [&](const Unary& x) { return !boolean(frame, node, *x.operand); },
                              [&](const Binary& x) {
                                  if (is_logic_op(x.op)) {
                                      const bool l = boolean(frame, node, *x.lhs);
                                      const bool r = boolean(frame, node, *x.rhs);
                                      return x.op == BinaryOp::land ? l && r : l || r;
                                  }
                                  BigInt l = arith(frame, node, *x.lhs);
                                  BigInt r = arith(frame, node, *x.rhs);
                                  return holds(to_cmp_op(x.op), l, r);
                              },
                              [](const auto&) -> bool { throw std::logic_error("arithmetic in condition"); },
                          },
                          e.node());
    }

    bool branch(const Frame& frame, NodeId node, const Expr& cond) {
        bool taken = false;
        try {
            taken = boolean(frame, node, cond);
        } catch (const Halt&) {
            point(frame, node, std::nullopt);
            throw;
        }
        point(frame, node, std::nullopt);
        point(frame, node, taken);
        return taken;
    }

    void block(const Frame& frame, const Block& b) {
        for (const auto& s : b) {
            statement(frame, *s);
        }
    }

    void statement(const Frame& frame, const Stmt& s) {
        const NodeId node = *frame.cfg->node_of(&s);
        std::visit(overloaded{
                       [&](const Assign& x) {
                           point(frame, node, std::nullopt);
                           BigInt v = arith(frame, node, *x.rhs);
                           frame.env->find(x.target)->second = std::move(v);
                       },
                       [&](const Assume& x) {
                           point(frame, node, std::nullopt);
                           if (!boolean(frame, node, *x.cond)) {
                               halt(VerdictKind::assume_infeasible, frame, node);
                           }
                       },
                       [&](const Assert& x) {
                           point(frame, node, std::nullopt);
                           if (!boolean(frame, node, *x.cond)) {
                               halt(VerdictKind::assert_failed, frame, node);
                           }
                       },
                       [&](const If& x) {
                           if (branch(frame, node, *x.cond)) {
                               block(frame, x.then_block);
                           } else if (x.else_block) {
                               block(frame, *x.else_block);
                           }
                       },
                       [&](const While& x) {
                           while (branch(frame, node, *x.cond)) {
                               if (++steps_ > options_.step_limit) {
                                   throw Halt{{VerdictKind::step_limit, {}, std::nullopt}};
                               }
                               block(frame, x.body);
                           }
                       },
                       [&](const Call& x) {
                           point(frame, node, std::nullopt);
                           std::vector<BigInt> args;
                           for (const auto& a : x.args) {
                               args.push_back(arith(frame, node, *a));
                           }
                           const Function& callee = *prog_.find(x.callee);
                           Env callee_env = fresh_env(callee, args);
                           BigInt result = call_function(callee, callee_env);
                           if (x.result) {
                               frame.env->find(*x.result)->second = std::move(result);
                           }
                       },
                       [&](const Return& x) {
                           point(frame, node, std::nullopt);
                           BigInt v = x.value ? arith(frame, node, *x.value) : BigInt(0);
                           throw ReturnSignal{std::move(v)};
                       },
                       [&](const Skip&) { point(frame, node, std::nullopt); },
                   },
                   s.node());
    }

    const Program& prog_;
    const std::map<std::string, Cfg, std::less<>>& cfgs_;
    const OracleOptions& options_;
    const TraceObserver& on_point_;
    std::span<const BigInt> prefix_;
    std::span<const Choice> expected_;
    std::vector<Choice> choices_;
    std::size_t steps_ = 0;
    ConcreteState state_;
};

std::map<std::string, Cfg, std::less<>> build_cfgs(const Program& prog) {
    std::map<std::string, Cfg, std::less<>> cfgs;
    for (const auto& f : prog.functions) {
        require_bounded(f.body);
        cfgs.emplace(f.name, build_cfg(f));
    }
    return cfgs;
}

// Advances the choice odometer; false once every assignment has been visited.
bool next_prefix(const std::vector<Choice>& used, std::vector<BigInt>& prefix) {
    for (std::size_t i = used.size(); i-- > 0;) {
        if (used[i].value < used[i].hi) {
            prefix.clear();
            for (std::size_t j = 0; j < i; ++j) {
                prefix.push_back(used[j].value);
            }
            prefix.push_back(used[i].value + 1);
            return true;
        }
    }
    return false;
}

} // namespace

void for_each_execution(const Program& prog, const OracleOptions& options, const ExecutionObserver& on_execution,
                        const TraceObserver& on_point) {
    const auto cfgs = build_cfgs(prog);
    Machine machine(prog, cfgs, options, on_point);
    std::vector<BigInt> prefix;
    std::size_t count = 0;
    while (true) {
        if (++count > options.max_executions) {
            throw OracleError("enumeration exceeds " + std::to_string(options.max_executions) + " executions");
        }
        ConcreteState state = machine.run(prefix);
        if (on_execution) {
            on_execution(state);
        }
        if (!next_prefix(machine.choices(), prefix)) {
            return;
        }
    }
}

std::vector<ConcreteState> enumerate_executions(const Program& prog, const OracleOptions& options) {
    std::vector<ConcreteState> out;
    for_each_execution(prog, options, [&](const ConcreteState& s) { out.push_back(s); });
    return out;
}

ConcreteState run_with_choices(const Program& prog, std::span<const BigInt> choices, const OracleOptions& options) {
    const auto cfgs = build_cfgs(prog);
    const TraceObserver none;
    Machine machine(prog, cfgs, options, none);
    return machine.run(choices);
}

std::vector<std::vector<SoundnessViolation>> check_soundness(const Program& prog,
                                                             std::span<const ProgramAnalysis* const> analyses,
                                                             const OracleOptions& options) {
    std::vector<std::vector<SoundnessViolation>> out(analyses.size());
    std::vector<std::set<std::tuple<std::string, std::uint32_t, std::string, std::string>>> seen(analyses.size());
    auto check = [&](std::size_t k, const TracePoint& p, const AbstractState& claimed, const char* where) {
        for (const auto& [var, value] : p.env) {
            const Interval range = claimed.reachable() ? claimed.at(var) : Interval::bottom();
            if (range.contains(value)) {
                continue;
            }
            if (seen[k].emplace(p.function, p.node.index, where, var).second) {
                out[k].push_back({p.function, p.node, where, var, value, range});
            }
        }
    };
    for_each_execution(prog, options, {}, [&](const TracePoint& p) {
        for (std::size_t k = 0; k < analyses.size(); ++k) {
            const AnalysisResult& result = analyses[k]->at(p.function).result;
            if (p.branch) {
                check(k, p, branch_state(result, p.node, *p.branch), *p.branch ? "true" : "false");
            } else {
                check(k, p, state_at(result, p.node, Position::before), "before");
            }
        }
    });
    return out;
}

std::vector<SoundnessViolation> check_soundness(const Program& prog, const ProgramAnalysis& analysis,
                                                const OracleOptions& options) {
    const ProgramAnalysis* one[] = {&analysis};
    return std::move(check_soundness(prog, one, options).front());
}

namespace {

std::string describe(const ConcreteState& s) {
    std::ostringstream out;
    out << s.verdict.to_string() << " {";
    const char* sep = "";
    for (const auto& [k, v] : s.env) {
        out << sep << k << "=" << v;
        sep = ", ";
    }
    out << "}";
    return out.str();
}

bool same_outcome(const ConcreteState& a, const ConcreteState& b) {
    if (a.verdict.kind != b.verdict.kind) {
        return false;
    }
    for (const auto& [var, value] : a.env) {
        auto it = b.env.find(var);
        if (it != b.env.end() && it->second != value) {
            return false;
        }
    }
    return true;
}

} // namespace

EquivalenceResult check_equivalence(const Program& a, const Program& b, const OracleOptions& options) {
    const auto cfgs_a = build_cfgs(a);
    const auto cfgs_b = build_cfgs(b);
    const TraceObserver none;
    Machine ma(a, cfgs_a, options, none);
    Machine mb(b, cfgs_b, options, none);
    EquivalenceResult result;
    std::vector<BigInt> prefix;
    while (true) {
        if (++result.executions > options.max_executions) {
            throw OracleError("enumeration exceeds " + std::to_string(options.max_executions) + " executions");
        }
        ConcreteState sa = ma.run(prefix);
        ConcreteState sb = mb.run(sa.choices, ma.choices());
        if (sb.choices.size() != sa.choices.size()) {
            throw OracleError("mismatched nondet structure: " + std::to_string(sa.choices.size()) + " vs " +
                              std::to_string(sb.choices.size()) + " choices");
        }
        if (!same_outcome(sa, sb)) {
            result.equivalent = false;
            result.counterexample = sa.choices;
            result.detail = describe(sa) + " vs " + describe(sb);
            return result;
        }
        if (!next_prefix(ma.choices(), prefix)) {
            return result;
        }
    }
}

} // namespace minibox
