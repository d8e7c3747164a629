#include "minibox/absint.hpp"

#include <stdexcept>

#include "minibox/contractor.hpp"
#include "overloaded.hpp"

namespace minibox {

using detail::overloaded;

AbstractState AbstractState::unreachable(const std::vector<std::string>& vars) {
    return {Box::uniform(vars, Interval::bottom())};
}

const AbstractState& state_at(const AnalysisResult& result, NodeId node, Position position) {
    const auto& states = position == Position::before ? result.before : result.after;
    if (node.index >= states.size()) {
        throw std::out_of_range("no analysis state for node " + std::to_string(node.index));
    }
    return states[node.index];
}

const AbstractState& branch_state(const AnalysisResult& result, NodeId node, bool polarity) {
    const auto& states = polarity ? result.after_true : result.after_false;
    const auto it = states.find(node);
    if (it == states.end()) {
        throw std::out_of_range("node " + std::to_string(node.index) + " is not a branch");
    }
    return it->second;
}

AbstractState initial_state(const Cfg& cfg) {
    std::map<std::string, Interval> env;
    for (const auto& v : cfg.variables()) {
        env.emplace(v, Interval::singleton(0));
    }
    for (const auto& p : cfg.params()) {
        env[p] = Interval::top();
    }
    return {Box(std::move(env))};
}

AbstractState transfer_assign(const AbstractState& state, std::string_view target, const Expr& rhs, ArithMode mode) {
    if (!state.reachable()) {
        return state;
    }
    AbstractState out = state;
    out.env.set(target, evaluate(rhs, state.env, mode));
    return out;
}

AbstractState transfer_assume(const AbstractState& state, const Expr& cond, bool polarity,
                              const AnalysisConfig& config) {
    if (!state.reachable()) {
        return state;
    }
    if (config.use_contractors) {
        return {contract_condition(cond, polarity, state.env, config.arith)};
    }
    Truth3 t = eval_condition(cond, state.env, config.arith);
    if (!polarity) {
        t = truth_not(t);
    }
    if (t == Truth3::false3) {
        return AbstractState::unreachable(state.env.vars());
    }
    return state;
}

AbstractState transfer_node(const CfgNode& node, const AbstractState& before, const AnalysisConfig& config) {
    if (node.kind != NodeKind::statement || !before.reachable()) {
        return before;
    }
    return std::visit(overloaded{
                          [&](const Assign& s) { return transfer_assign(before, s.target, *s.rhs, config.arith); },
                          [&](const Assume& s) { return transfer_assume(before, *s.cond, true, config); },
                          [&](const Call& s) {
                              AbstractState out = before;
                              if (s.result) {
                                  out.env.set(*s.result, Interval::top());
                              }
                              return out;
                          },
                          [&](const auto&) { return before; },
                      },
                      node.stmt->node());
}

namespace {

class Engine {
  public:
    Engine(const Cfg& cfg, const AbstractState& init, const AnalysisConfig& config)
        : cfg_(cfg), init_(init), config_(config) {
        const AbstractState bottom = AbstractState::unreachable(cfg.variables());
        result_.before.assign(cfg.size(), bottom);
        result_.after.assign(cfg.size(), bottom);
        for (const auto& n : cfg.nodes()) {
            if (n.kind == NodeKind::branch) {
                result_.after_true.emplace(n.id, bottom);
                result_.after_false.emplace(n.id, bottom);
            }
        }
        rpo_ = cfg.reverse_postorder();
        order_.assign(cfg.size(), 0);
        for (std::size_t i = 0; i < rpo_.size(); ++i) {
            order_[rpo_[i].index] = i;
        }
    }

    AnalysisResult run() {
        ascend();
        for (std::size_t pass = 0; pass < config_.narrowing_passes; ++pass) {
            descend();
        }
        return std::move(result_);
    }

    AbstractState incoming(NodeId n) const {
        AbstractState s = n == cfg_.entry() ? init_ : AbstractState::unreachable(cfg_.variables());
        for (const CfgEdge& e : cfg_.predecessors(n)) {
            s.env = join(s.env, edge_state(e).env);
        }
        return s;
    }

  private:
    const AbstractState& edge_state(const CfgEdge& e) const {
        switch (e.kind) {
        case EdgeKind::branch_true: return result_.after_true.at(e.from);
        case EdgeKind::branch_false: return result_.after_false.at(e.from);
        case EdgeKind::fallthrough: break;
        }
        return result_.after[e.from.index];
    }

    void propagate(NodeId n) {
        const CfgNode& node = cfg_.node(n);
        const AbstractState& in = result_.before[n.index];
        if (node.kind == NodeKind::branch) {
            AbstractState t = transfer_assume(in, *node.cond, true, config_);
            AbstractState f = transfer_assume(in, *node.cond, false, config_);
            result_.after[n.index] = {join(t.env, f.env)};
            result_.after_true[n] = std::move(t);
            result_.after_false[n] = std::move(f);
        } else {
            result_.after[n.index] = transfer_node(node, in, config_);
        }
    }

    void ascend() {
        std::set<std::size_t> worklist{order_[cfg_.entry().index]};
        std::vector<std::size_t> visits(cfg_.size(), 0);
        std::vector<bool> seen(cfg_.size(), false);
        while (!worklist.empty()) {
            const NodeId n = rpo_[*worklist.begin()];
            worklist.erase(worklist.begin());
            ++result_.iterations;
            AbstractState in = incoming(n);
            AbstractState& current = result_.before[n.index];
            if (cfg_.is_loop_head(n)) {
                if (visits[n.index] >= config_.widening_delay) {
                    in.env = widen(current.env, join(current.env, in.env));
                    result_.widened_nodes.insert(n);
                }
                ++visits[n.index];
            }
            if (seen[n.index] && in == current) {
                continue;
            }
            seen[n.index] = true;
            current = std::move(in);
            ++result_.ascending_updates;
            propagate(n);
            for (const CfgEdge& e : cfg_.successors(n)) {
                worklist.insert(order_[e.to.index]);
            }
        }
    }

    void descend() {
        for (const NodeId n : rpo_) {
            AbstractState in = incoming(n);
            AbstractState& current = result_.before[n.index];
            if (cfg_.is_loop_head(n)) {
                current.env = narrow(current.env, in.env);
            } else {
                current = std::move(in);
            }
            propagate(n);
        }
    }

    const Cfg& cfg_;
    const AbstractState& init_;
    const AnalysisConfig& config_;
    AnalysisResult result_;
    std::vector<NodeId> rpo_;
    std::vector<std::size_t> order_;
};

} // namespace

AnalysisResult analyze(const Cfg& cfg, const AbstractState& init, const AnalysisConfig& config) {
    return Engine(cfg, init, config).run();
}

bool is_post_fixpoint(const Cfg& cfg, const AbstractState& init, const AnalysisResult& result,
                      const AnalysisConfig& config) {
    for (const auto& node : cfg.nodes()) {
        const NodeId n = node.id;
        AbstractState in = n == cfg.entry() ? init : AbstractState::unreachable(cfg.variables());
        for (const CfgEdge& e : cfg.predecessors(n)) {
            const AbstractState& s = e.kind == EdgeKind::fallthrough  ? result.after[e.from.index]
                                     : e.kind == EdgeKind::branch_true ? result.after_true.at(e.from)
                                                                       : result.after_false.at(e.from);
            in.env = join(in.env, s.env);
        }
        const AbstractState& before = result.before[n.index];
        if (!in.leq(before)) {
            return false;
        }
        if (node.kind == NodeKind::branch) {
            const AbstractState t = transfer_assume(before, *node.cond, true, config);
            const AbstractState f = transfer_assume(before, *node.cond, false, config);
            if (!(t == result.after_true.at(n)) || !(f == result.after_false.at(n))) {
                return false;
            }
        } else if (!(transfer_node(node, before, config) == result.after[n.index])) {
            return false;
        }
    }
    return true;
}

const FunctionAnalysis& ProgramAnalysis::at(std::string_view function) const {
    const auto it = functions.find(function);
    if (it == functions.end()) {
        throw std::out_of_range("no analysis for function '" + std::string(function) + "'");
    }
    return it->second;
}

const AbstractState* ProgramAnalysis::before(std::string_view function, const Stmt* stmt) const {
    const FunctionAnalysis& fa = at(function);
    const auto node = fa.cfg.node_of(stmt);
    if (!node) {
        return nullptr;
    }
    return &fa.result.before[node->index];
}

ProgramAnalysis analyze_program(const Program& prog, const AnalysisConfig& config) {
    ProgramAnalysis out;
    out.config = config;
    for (const auto& f : prog.functions) {
        Cfg cfg = build_cfg(f);
        AnalysisResult result = analyze(cfg, initial_state(cfg), config);
        out.functions.emplace(f.name, FunctionAnalysis{std::move(cfg), std::move(result)});
    }
    return out;
}

} // namespace minibox
