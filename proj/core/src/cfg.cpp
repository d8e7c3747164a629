#include "minibox/cfg.hpp"

#include <algorithm>
#include <stdexcept>

#include "minibox/printer.hpp"
#include "overloaded.hpp"

namespace minibox {

const CfgNode& Cfg::node(NodeId id) const {
    if (id.index >= nodes_.size()) {
        throw std::out_of_range("unknown CFG node " + std::to_string(id.index));
    }
    return nodes_[id.index];
}

std::span<const CfgEdge> Cfg::successors(NodeId id) const {
    static_cast<void>(node(id));
    return succ_[id.index];
}

std::span<const CfgEdge> Cfg::predecessors(NodeId id) const {
    static_cast<void>(node(id));
    return pred_[id.index];
}

std::optional<NodeId> Cfg::node_of(const Stmt* stmt) const {
    const auto it = by_stmt_.find(stmt);
    if (it == by_stmt_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string Cfg::describe(NodeId id) const {
    const CfgNode& n = node(id);
    switch (n.kind) {
    case NodeKind::exit: return "exit";
    case NodeKind::branch: return "branch (" + to_source(*n.cond) + ")";
    case NodeKind::statement: {
        std::string s = to_source(*n.stmt);
        while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) {
            s.pop_back();
        }
        return s;
    }
    }
    return {};
}

class CfgBuilder {
  public:
    explicit CfgBuilder(const Function& f) {
        cfg_.function_ = f.name;
        cfg_.variables_ = f.variables();
        cfg_.params_ = f.params;
    }

    Cfg build(const Block& body) {
        std::vector<Dangling> out = lower(body, {Dangling{std::nullopt, EdgeKind::fallthrough}});
        const NodeId exit = add_node(NodeKind::exit, nullptr, nullptr);
        connect(out, exit);
        for (const NodeId r : returns_) {
            add_edge(r, exit, EdgeKind::fallthrough);
        }
        cfg_.exits_.insert(exit);
        compute_dfs();
        return std::move(cfg_);
    }

  private:
    // An outgoing edge whose target is not known yet; from = nullopt is the function entry.
    struct Dangling {
        std::optional<NodeId> from;
        EdgeKind kind;
    };

    NodeId add_node(NodeKind kind, StmtPtr stmt, ExprPtr cond) {
        const NodeId id{static_cast<std::uint32_t>(cfg_.nodes_.size())};
        if (stmt) {
            cfg_.by_stmt_.emplace(stmt.get(), id);
        }
        cfg_.nodes_.push_back({id, kind, std::move(stmt), std::move(cond)});
        cfg_.succ_.emplace_back();
        cfg_.pred_.emplace_back();
        return id;
    }

    void add_edge(NodeId from, NodeId to, EdgeKind kind) {
        const CfgEdge e{from, to, kind};
        cfg_.succ_[from.index].push_back(e);
        cfg_.pred_[to.index].push_back(e);
    }

    void connect(const std::vector<Dangling>& preds, NodeId to) {
        for (const auto& d : preds) {
            if (d.from) {
                add_edge(*d.from, to, d.kind);
            } else {
                cfg_.entry_ = to;
            }
        }
    }

    std::vector<Dangling> lower(const Block& block, std::vector<Dangling> preds) {
        for (const auto& stmt : block) {
            if (preds.empty()) {
                break;
            }
            std::visit(detail::overloaded{
                           [&](const If& s) {
                               const NodeId c = add_node(NodeKind::branch, stmt, s.cond);
                               connect(preds, c);
                               std::vector<Dangling> out = lower(s.then_block, {Dangling{c, EdgeKind::branch_true}});
                               std::vector<Dangling> other = s.else_block
                                                                 ? lower(*s.else_block, {Dangling{c, EdgeKind::branch_false}})
                                                                 : std::vector<Dangling>{Dangling{c, EdgeKind::branch_false}};
                               out.insert(out.end(), other.begin(), other.end());
                               preds = std::move(out);
                           },
                           [&](const While& s) {
                               const NodeId c = add_node(NodeKind::branch, stmt, s.cond);
                               connect(preds, c);
                               connect(lower(s.body, {Dangling{c, EdgeKind::branch_true}}), c);
                               preds = {Dangling{c, EdgeKind::branch_false}};
                           },
                           [&](const Return&) {
                               const NodeId n = add_node(NodeKind::statement, stmt, nullptr);
                               connect(preds, n);
                               returns_.push_back(n);
                               preds.clear();
                           },
                           [&](const auto&) {
                               const NodeId n = add_node(NodeKind::statement, stmt, nullptr);
                               connect(preds, n);
                               preds = {Dangling{n, EdgeKind::fallthrough}};
                           },
                       },
                       stmt->node());
        }
        return preds;
    }

    void compute_dfs() {
        const std::size_t n = cfg_.nodes_.size();
        // 0 = white, 1 = grey (on stack), 2 = black
        std::vector<int> color(n, 0);
        std::vector<NodeId> postorder;
        std::vector<std::pair<NodeId, std::size_t>> stack{{cfg_.entry_, 0}};
        color[cfg_.entry_.index] = 1;
        while (!stack.empty()) {
            auto& [node, next_edge] = stack.back();
            const auto& succ = cfg_.succ_[node.index];
            if (next_edge < succ.size()) {
                const NodeId to = succ[next_edge++].to;
                if (color[to.index] == 1) {
                    cfg_.loop_heads_.insert(to);
                } else if (color[to.index] == 0) {
                    color[to.index] = 1;
                    stack.emplace_back(to, 0);
                }
            } else {
                color[node.index] = 2;
                postorder.push_back(node);
                stack.pop_back();
            }
        }
        cfg_.rpo_.assign(postorder.rbegin(), postorder.rend());
    }

    Cfg cfg_;
    std::vector<NodeId> returns_;
};

Cfg build_cfg(const Function& func) { return CfgBuilder(func).build(func.body); }

} // namespace minibox
