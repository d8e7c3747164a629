#include "minibox/instrument.hpp"

#include "overloaded.hpp"

namespace minibox {

using detail::overloaded;

std::string to_string(PointKind kind) {
    switch (kind) {
    case PointKind::loop_before: return "loop-before";
    case PointKind::loop_inside: return "loop-inside";
    case PointKind::conditional: return "conditional";
    case PointKind::assertion: return "assertion";
    case PointKind::call: return "call";
    }
    return "?";
}

ExprPtr intervals_to_assume_expr(const std::set<std::string>& vars, const AbstractState& state) {
    if (vars.empty()) {
        return nullptr;
    }
    if (!state.reachable()) {
        return make_bool(false);
    }
    std::vector<ExprPtr> parts;
    for (const auto& v : vars) {
        const Interval& range = state.at(v);
        if (range.lo().is_finite()) {
            parts.push_back(make_binary(BinaryOp::ge, make_var(v), make_int(range.lo().value())));
        }
        if (range.hi().is_finite()) {
            parts.push_back(make_binary(BinaryOp::le, make_var(v), make_int(range.hi().value())));
        }
    }
    return make_conjunction(parts);
}

namespace {

class Instrumenter {
  public:
    Instrumenter(const FunctionAnalysis& analysis, std::string function, std::vector<InstrumentationPoint>& points)
        : analysis_(analysis), function_(std::move(function)), points_(points) {}

    Block block(const Block& b) {
        Block out;
        for (const auto& s : b) {
            statement(s, out);
        }
        return out;
    }

  private:
    void emit(Block& out, NodeId node, PointKind kind, const std::set<std::string>& vars,
              const AbstractState& state) {
        if (ExprPtr cond = intervals_to_assume_expr(vars, state)) {
            out.push_back(make_stmt(Assume{cond}));
            points_.push_back({function_, node, kind, vars, cond});
        }
    }

    void statement(const StmtPtr& s, Block& out) {
        const auto node = analysis_.cfg.node_of(s.get());
        if (!node) {
            out.push_back(s);
            return;
        }
        const AbstractState& before = state_at(analysis_.result, *node, Position::before);
        std::visit(overloaded{
                       [&](const If& x) {
                           emit(out, *node, PointKind::conditional, free_vars(*x.cond), before);
                           std::optional<Block> else_block;
                           if (x.else_block) {
                               else_block = block(*x.else_block);
                           }
                           out.push_back(make_stmt(If{x.cond, block(x.then_block), std::move(else_block)}));
                       },
                       [&](const While& x) {
                           const auto vars = free_vars(*x.cond);
                           emit(out, *node, PointKind::loop_before, vars, before);
                           Block body;
                           emit(body, *node, PointKind::loop_inside, vars,
                                branch_state(analysis_.result, *node, true));
                           Block rest = block(x.body);
                           body.insert(body.end(), rest.begin(), rest.end());
                           out.push_back(make_stmt(While{x.cond, std::move(body)}));
                       },
                       [&](const Assert& x) {
                           emit(out, *node, PointKind::assertion, free_vars(*x.cond), before);
                           out.push_back(s);
                       },
                       [&](const Call& x) {
                           std::set<std::string> vars;
                           for (const auto& a : x.args) {
                               vars.merge(free_vars(*a));
                           }
                           emit(out, *node, PointKind::call, vars, before);
                           out.push_back(s);
                       },
                       [&](const auto&) { out.push_back(s); },
                   },
                   s->node());
    }

    const FunctionAnalysis& analysis_;
    std::string function_;
    std::vector<InstrumentationPoint>& points_;
};

} // namespace

Instrumentation instrument_program(const Program& prog, const ProgramAnalysis& analysis) {
    Instrumentation out{prog, {}};
    for (auto& f : out.program.functions) {
        Instrumenter pass(analysis.at(f.name), f.name, out.points);
        f.body = pass.block(f.body);
    }
    return out;
}

} // namespace minibox
