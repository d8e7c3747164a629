#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "minibox/ast.hpp"
#include "minibox/box.hpp"
#include "minibox/cfg.hpp"
#include "minibox/interval.hpp"

namespace minibox {

struct AnalysisConfig {
    // Plain joins at a loop head before widening kicks in.
    std::size_t widening_delay = 2;
    // Descending passes after the ascending phase stabilizes.
    std::size_t narrowing_passes = 2;
    ArithMode arith = ArithMode::precise;
    bool use_contractors = true;
};

/// One interval per variable of the enclosing function. Unreachable states are
/// the empty box.
struct AbstractState {
    Box env;

    [[nodiscard]] bool reachable() const { return !env.empty(); }
    [[nodiscard]] const Interval& at(std::string_view var) const { return env.at(var); }
    [[nodiscard]] bool leq(const AbstractState& other) const { return env.leq(other.env); }
    [[nodiscard]] std::string to_string() const { return env.to_string(); }

    static AbstractState unreachable(const std::vector<std::string>& vars);

    friend bool operator==(const AbstractState&, const AbstractState&) = default;
};

enum class Position : std::uint8_t { before, after };

struct AnalysisResult {
    std::vector<AbstractState> before;
    std::vector<AbstractState> after;
    // Refined successor states of branch nodes; `after` holds their join.
    std::map<NodeId, AbstractState> after_true;
    std::map<NodeId, AbstractState> after_false;
    // Nodes popped from the worklist, and before-states that changed while ascending.
    std::size_t iterations = 0;
    std::size_t ascending_updates = 0;
    std::set<NodeId> widened_nodes;
};

// Throws std::out_of_range for a node outside the analyzed CFG.
const AbstractState& state_at(const AnalysisResult& result, NodeId node, Position position);
// State flowing along the true/false edge of a branch node.
const AbstractState& branch_state(const AnalysisResult& result, NodeId node, bool polarity);

// Parameters at top, locals at zero.
AbstractState initial_state(const Cfg& cfg);

AbstractState transfer_assign(const AbstractState& state, std::string_view target, const Expr& rhs,
                              ArithMode mode = ArithMode::precise);
AbstractState transfer_assume(const AbstractState& state, const Expr& cond, bool polarity,
                              const AnalysisConfig& config = {});
// After-state of a non-branch node.
AbstractState transfer_node(const CfgNode& node, const AbstractState& before, const AnalysisConfig& config);

AnalysisResult analyze(const Cfg& cfg, const AbstractState& init, const AnalysisConfig& config = {});

// Re-applies every transfer function: the join of incoming states must be below each
// stored before-state and each stored after-state must equal the transfer of its before-state.
bool is_post_fixpoint(const Cfg& cfg, const AbstractState& init, const AnalysisResult& result,
                      const AnalysisConfig& config = {});

struct FunctionAnalysis {
    Cfg cfg;
    AnalysisResult result;
};

/// Every function analyzed on its own: parameters start at top and call results are top.
struct ProgramAnalysis {
    AnalysisConfig config;
    std::map<std::string, FunctionAnalysis, std::less<>> functions;

    [[nodiscard]] const FunctionAnalysis& at(std::string_view function) const;
    // Before-state of the node lowered from `stmt`, or nullptr when `stmt` is dead code.
    [[nodiscard]] const AbstractState* before(std::string_view function, const Stmt* stmt) const;
};

ProgramAnalysis analyze_program(const Program& prog, const AnalysisConfig& config = {});

} // namespace minibox
