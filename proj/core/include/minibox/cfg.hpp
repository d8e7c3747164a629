#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "minibox/ast.hpp"

namespace minibox {

struct NodeId {
    std::uint32_t index = 0;
    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

enum class NodeKind : std::uint8_t { statement, branch, exit };
enum class EdgeKind : std::uint8_t { fallthrough, branch_true, branch_false };

struct CfgEdge {
    NodeId from;
    NodeId to;
    EdgeKind kind;
};

/// A statement node carries its statement; a branch node carries the If/While it
/// was lowered from plus that statement's condition. The single exit node carries neither.
struct CfgNode {
    NodeId id;
    NodeKind kind = NodeKind::statement;
    StmtPtr stmt;
    ExprPtr cond;
};

class Cfg {
  public:
    [[nodiscard]] const std::string& function() const { return function_; }
    // Parameters followed by locals.
    [[nodiscard]] const std::vector<std::string>& variables() const { return variables_; }
    [[nodiscard]] const std::vector<std::string>& params() const { return params_; }

    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] const std::vector<CfgNode>& nodes() const { return nodes_; }
    [[nodiscard]] const CfgNode& node(NodeId id) const;
    [[nodiscard]] std::span<const CfgEdge> successors(NodeId id) const;
    [[nodiscard]] std::span<const CfgEdge> predecessors(NodeId id) const;

    [[nodiscard]] NodeId entry() const { return entry_; }
    [[nodiscard]] const std::set<NodeId>& exits() const { return exits_; }
    [[nodiscard]] const std::set<NodeId>& loop_heads() const { return loop_heads_; }
    [[nodiscard]] bool is_loop_head(NodeId id) const { return loop_heads_.count(id) != 0; }

    // The node lowered from `stmt` (the branch node for If/While); nullopt for dead code.
    [[nodiscard]] std::optional<NodeId> node_of(const Stmt* stmt) const;
    [[nodiscard]] std::vector<NodeId> reverse_postorder() const { return rpo_; }

    // One-line rendering used in dumps: "x = 1;", "branch (i < 10)", "exit".
    [[nodiscard]] std::string describe(NodeId id) const;

  private:
    friend Cfg build_cfg(const Function& func);
    friend class CfgBuilder;

    std::string function_;
    std::vector<std::string> variables_;
    std::vector<std::string> params_;
    std::vector<CfgNode> nodes_;
    std::vector<std::vector<CfgEdge>> succ_;
    std::vector<std::vector<CfgEdge>> pred_;
    NodeId entry_;
    std::set<NodeId> exits_;
    std::set<NodeId> loop_heads_;
    std::vector<NodeId> rpo_;
    std::unordered_map<const Stmt*, NodeId> by_stmt_;
};

/// Lowers structured control flow. While loops get a back edge from the end of the
/// body to their condition node; `return` jumps to the exit node; statements after
/// an unconditional return are dead and get no node.
Cfg build_cfg(const Function& func);

} // namespace minibox
