#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "minibox/absint.hpp"
#include "minibox/ast.hpp"

namespace minibox {

struct RewriteReport {
    std::size_t singletons_propagated = 0;
    std::size_t guards_resolved_true = 0;
    std::size_t guards_resolved_false = 0;
    std::size_t constants_folded = 0;
    std::size_t dead_branches_removed = 0;
    // Assertions whose condition was proven false at a reachable point. They are
    // kept in the program as assert(false); this is not a rewrite count.
    std::vector<std::string> definite_violations;

    [[nodiscard]] std::size_t guards_eliminated() const { return guards_resolved_true + guards_resolved_false; }
    [[nodiscard]] bool changed() const;

    RewriteReport& operator+=(const RewriteReport& other);
};

struct Rewrite {
    Program program;
    RewriteReport report;
};

/// Replaces every variable read whose before-state interval is a singleton by that
/// constant. Assignment targets are left alone.
Rewrite singleton_propagate(const Program& prog, const ProgramAnalysis& analysis);

/// Resolves If/While/Assert/Assume conditions to literals where the before-state
/// decides them, trying the whole condition first and then its boolean operands.
/// Literal ifs are flattened and while(false) loops dropped. Conditions with a
/// divisor that may be zero are never replaced.
Rewrite guard_eliminate(const Program& prog, const ProgramAnalysis& analysis);

/// Folds literal subexpressions and boolean identities to a fixpoint. Division by a
/// literal zero is left in place, and no subterm that might divide by zero is dropped.
Rewrite const_fold(const Program& prog);

/// analyze, singleton_propagate, re-analyze, guard_eliminate, const_fold.
Rewrite optimize_program(const Program& prog, const AnalysisConfig& config = {});

} // namespace minibox
