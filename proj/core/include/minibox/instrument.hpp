#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "minibox/absint.hpp"
#include "minibox/ast.hpp"
#include "minibox/cfg.hpp"

namespace minibox {

enum class PointKind : std::uint8_t { loop_before, loop_inside, conditional, assertion, call };

std::string to_string(PointKind kind);

struct InstrumentationPoint {
    std::string function;
    NodeId node;  // anchor node in the original program's CFG
    PointKind kind;
    std::set<std::string> vars;
    ExprPtr emitted;
};

struct Instrumentation {
    Program program;
    std::vector<InstrumentationPoint> points;
};

/// `v >= lo && v <= hi` over `vars`, skipping infinite bounds. Returns nullptr when
/// nothing is known and the false literal for an unreachable state.
ExprPtr intervals_to_assume_expr(const std::set<std::string>& vars, const AbstractState& state);

/// Inserts assumptions before loops, at the top of loop bodies, and before
/// conditionals, assertions and calls, each over the anchor statement's own variables.
Instrumentation instrument_program(const Program& prog, const ProgramAnalysis& analysis);

} // namespace minibox
