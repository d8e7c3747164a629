#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "minibox/absint.hpp"
#include "minibox/ast.hpp"
#include "minibox/bigint.hpp"
#include "minibox/cfg.hpp"

namespace minibox {

using Env = std::map<std::string, BigInt, std::less<>>;

enum class VerdictKind : std::uint8_t { ok, assert_failed, assume_infeasible, div_by_zero, step_limit };

std::string to_string(VerdictKind kind);

struct Verdict {
    VerdictKind kind = VerdictKind::ok;
    std::string function;  // where assert_failed / div_by_zero happened
    std::optional<NodeId> node;

    [[nodiscard]] std::string to_string() const;
};

struct TraceEntry {
    std::string function;
    NodeId node;
    Env env;
};

/// One complete execution. `env` is the entry function's environment when it stopped.
struct ConcreteState {
    Env env;
    std::vector<TraceEntry> trace;
    Verdict verdict;
    std::vector<BigInt> choices;
};

/// A program point reached during execution. `branch` is set at a branch node once
/// its condition has been evaluated.
struct TracePoint {
    const std::string& function;
    NodeId node;
    const Env& env;
    std::optional<bool> branch;
};

struct OracleOptions {
    std::size_t step_limit = 10'000;     // loop-body entries per execution
    std::size_t max_executions = 1'000'000;
    bool record_trace = false;
};

class OracleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using ExecutionObserver = std::function<void(const ConcreteState&)>;
using TraceObserver = std::function<void(const TracePoint&)>;

/// Runs every assignment of nondet choices in lexicographic order. Throws OracleError
/// for an unbounded nondet or when the enumeration exceeds max_executions.
void for_each_execution(const Program& prog, const OracleOptions& options, const ExecutionObserver& on_execution,
                        const TraceObserver& on_point = {});

std::vector<ConcreteState> enumerate_executions(const Program& prog, const OracleOptions& options = {});

/// Runs one execution; choices past the end of `choices` take the lower bound.
ConcreteState run_with_choices(const Program& prog, std::span<const BigInt> choices,
                               const OracleOptions& options = {});

struct SoundnessViolation {
    std::string function;
    NodeId node;
    std::string where;  // "before", "true" or "false"
    std::string var;
    BigInt value;
    Interval claimed;

    [[nodiscard]] std::string to_string() const;
};

/// Every reached (node, env) must lie in the before-state of that node, and at a
/// branch also in the state of the taken edge. One violation per distinct
/// (function, node, where, var).
std::vector<SoundnessViolation> check_soundness(const Program& prog, const ProgramAnalysis& analysis,
                                                const OracleOptions& options = {});

/// Same check against several analyses with a single enumeration.
std::vector<std::vector<SoundnessViolation>> check_soundness(const Program& prog,
                                                             std::span<const ProgramAnalysis* const> analyses,
                                                             const OracleOptions& options = {});

struct EquivalenceResult {
    bool equivalent = true;
    std::size_t executions = 0;
    std::optional<std::vector<BigInt>> counterexample;
    std::string detail;
};

/// Runs both programs on every nondet assignment of `a` and compares the final
/// environments on common entry-function variables and the verdict kinds. Throws
/// OracleError when `b` consumes a different nondet sequence.
EquivalenceResult check_equivalence(const Program& a, const Program& b, const OracleOptions& options = {});

} // namespace minibox
