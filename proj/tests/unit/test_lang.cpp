#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "../support/generator.hpp"
#include "helpers.hpp"
#include "minibox/cfg.hpp"
#include "minibox/printer.hpp"

using namespace minibox;
using namespace minibox::testing;

namespace {

ParseErrorKind error_kind(const std::string& source) {
    try {
        parse_program(source);
    } catch (const ParseError& e) {
        return e.kind();
    }
    FAIL("expected a parse error for: " << source);
    return ParseErrorKind::syntax;
}

} // namespace

TEST_SUITE("lang") {

TEST_CASE("assignments and nondet") {
    const Program p = main_program("int x; x = 1 + 2;");
    const Function& f = p.entry_function();
    CHECK(f.locals == std::vector<std::string>{"x"});
    REQUIRE(f.body.size() == 1);
    const auto* a = f.body[0]->as<Assign>();
    REQUIRE(a);
    CHECK(a->target == "x");
    CHECK(*a->rhs == *make_binary(BinaryOp::add, make_int(1), make_int(2)));

    const Program q = main_program("int x; x = nondet(0, 3);");
    const auto* n = q.entry_function().body[0]->as<Assign>()->rhs->as<Nondet>();
    REQUIRE(n);
    CHECK(*n->lo == 0);
    CHECK(*n->hi == 3);
    CHECK_FALSE(main_program("int x = nondet();").entry_function().body[0]->as<Assign>()->rhs->as<Nondet>()->lo);
}

TEST_CASE("parse errors carry a kind and a location") {
    CHECK(error_kind("fn main() { x = 1; }") == ParseErrorKind::undeclared);
    CHECK(error_kind("fn main() { int x; int x; }") == ParseErrorKind::redeclared);
    CHECK(error_kind("fn main() { int x = nondet(3, 0); }") == ParseErrorKind::nondet_bounds);
    CHECK(error_kind("fn f(a) { } fn main() { f(1, 2); }") == ParseErrorKind::arity);
    CHECK(error_kind("fn main() { g(); }") == ParseErrorKind::unknown_function);
    CHECK(error_kind("fn main() { int x; x = 1 < 2; }") == ParseErrorKind::sort);
    CHECK(error_kind("fn main() { int x; if (x + 1) { } }") == ParseErrorKind::sort);
    CHECK(error_kind("fn f() { g(); } fn g() { f(); } fn main() { f(); }") == ParseErrorKind::recursion);
    CHECK(error_kind("fn f() { }") == ParseErrorKind::entry);
    CHECK(error_kind("fn main() { int x; x = 1 }") == ParseErrorKind::syntax);
    try {
        parse_program("fn main() {\n  int x;\n  y = 2;\n}");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 3);
        CHECK(std::string(e.what()).starts_with("3:3:"));
    }
}

TEST_CASE("comments, else-if and negative literals") {
    const Program p = parse_program(R"(// leading comment
fn main() {
    int x = -3; // trailing
    if (x < 0) { x = 1; } else if (x == 0) { x = 2; } else { skip; }
    assert(true);
})");
    const auto& body = p.entry_function().body;
    REQUIRE(body.size() == 3);
    CHECK(*body[0]->as<Assign>()->rhs == *make_int(-3));
    const auto* outer = body[1]->as<If>();
    REQUIRE(outer->else_block);
    REQUIRE(outer->else_block->size() == 1);
    CHECK((*outer->else_block)[0]->as<If>() != nullptr);
}

TEST_CASE("functions, calls and returns") {
    const Program p = parse_program(R"(
fn add(a, b) { return a + b; }
fn main() {
    int s = add(1, 2);
    add(s, s);
})");
    const auto& body = p.entry_function().body;
    const auto* c = body[0]->as<Call>();
    REQUIRE(c);
    CHECK(c->callee == "add");
    CHECK(c->result == std::optional<std::string>("s"));
    CHECK_FALSE(body[1]->as<Call>()->result);
    CHECK(p.find("add")->params == std::vector<std::string>{"a", "b"});
}

TEST_CASE("free_vars") {
    const Box b = bx("x:[0,1], y:[0,1]");
    CHECK(free_vars(*cond_in("x < 10", b)) == std::set<std::string>{"x"});
    CHECK(free_vars(*make_int(5)).empty());
    CHECK(free_vars(*cond_in("x > 3 && y < 10", b)) == std::set<std::string>{"x", "y"});
}

TEST_CASE("printing round-trips") {
    const char* sources[] = {
        "fn main() { int x; x = 1 + 2 * 3 - (4 - 5); }",
        "fn main() { int x; x = -(3) - -4 / (2 * -(x)); }",
        "fn main() { int x; if (!(x < 1 || x > 2) && x != 0) { x = 1; } else { skip; } }",
        "fn main() { int x; int y; while (x < 10) { assume(y >= 0); x = x + 1; } assert(x == 10); }",
        "fn f(a) { return; } fn main() { int x = nondet(-4, 4); f(x); x = nondet(); }",
    };
    for (const char* src : sources) {
        const Program p = parse_program(src);
        const std::string printed = to_source(p);
        CHECK_MESSAGE(parse_program(printed) == p, printed);
        CHECK(to_source(parse_program(printed)) == printed);
    }
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Program p = parse_program(generate_program(seed));
        CHECK(parse_program(to_source(p)) == p);
    }
}

TEST_CASE("cfg of a single statement") {
    const Program p = main_program("int x; x = 1;");
    const Cfg cfg = build_cfg(p.entry_function());
    CHECK(cfg.size() == 2);
    const NodeId entry = cfg.entry();
    CHECK(cfg.node(entry).kind == NodeKind::statement);
    REQUIRE(cfg.successors(entry).size() == 1);
    CHECK(cfg.exits().contains(cfg.successors(entry)[0].to));
    CHECK(cfg.loop_heads().empty());
    CHECK_THROWS_AS(std::ignore = cfg.node(NodeId{99}), std::out_of_range);
}

TEST_CASE("cfg of a while loop") {
    const Program p = main_program("int x; while (x < 10) { x = x + 1; }");
    const Cfg cfg = build_cfg(p.entry_function());
    const NodeId head = cfg.entry();
    CHECK(cfg.node(head).kind == NodeKind::branch);
    CHECK(cfg.loop_heads() == std::set<NodeId>{head});
    NodeId body{};
    for (const auto& e : cfg.successors(head)) {
        if (e.kind == EdgeKind::branch_true) {
            body = e.to;
        }
    }
    REQUIRE(cfg.successors(body).size() == 1);
    CHECK(cfg.successors(body)[0].to == head);
    CHECK(cfg.describe(head) == "branch (x < 10)");
}

TEST_CASE("cfg of an if-else joins at a common successor") {
    const Program p = main_program("int x; if (x > 0) { x = 1; } else { x = 2; } x = 3;");
    const Cfg cfg = build_cfg(p.entry_function());
    const NodeId cond = cfg.entry();
    std::set<NodeId> joins;
    for (const auto& e : cfg.successors(cond)) {
        REQUIRE(cfg.successors(e.to).size() == 1);
        joins.insert(cfg.successors(e.to)[0].to);
    }
    CHECK(joins.size() == 1);
    CHECK(cfg.node(*joins.begin()).stmt == p.entry_function().body[1]);
    CHECK(cfg.loop_heads().empty());
}

TEST_CASE("return jumps to the exit and dead code gets no node") {
    const Program p = parse_program("fn f(a) { return a; a = 1; } fn main() { }");
    const Function& f = *p.find("f");
    const Cfg cfg = build_cfg(f);
    CHECK(cfg.node_of(f.body[0].get()).has_value());
    CHECK_FALSE(cfg.node_of(f.body[1].get()).has_value());
    CHECK(cfg.size() == 2);
}

TEST_CASE("cfg invariants hold on generated programs") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Program p = parse_program(generate_program(seed));
        for (const auto& f : p.functions) {
            const Cfg cfg = build_cfg(f);
            std::set<NodeId> reached;
            std::set<NodeId> back_targets;
            std::map<NodeId, int> color;
            std::function<void(NodeId)> dfs = [&](NodeId n) {
                color[n] = 1;
                reached.insert(n);
                for (const auto& e : cfg.successors(n)) {
                    if (color[e.to] == 1) {
                        back_targets.insert(e.to);
                    } else if (color[e.to] == 0) {
                        dfs(e.to);
                    }
                }
                color[n] = 2;
            };
            dfs(cfg.entry());
            CHECK(reached.size() == cfg.size());
            CHECK(back_targets == cfg.loop_heads());
            for (const auto& node : cfg.nodes()) {
                const auto succ = cfg.successors(node.id);
                if (node.kind == NodeKind::branch) {
                    REQUIRE(succ.size() == 2);
                    CHECK(succ[0].kind != succ[1].kind);
                    for (const auto& e : succ) {
                        CHECK(e.kind != EdgeKind::fallthrough);
                    }
                } else {
                    CHECK(succ.size() <= 1);
                }
                for (const auto& e : succ) {
                    const auto pred = cfg.predecessors(e.to);
                    CHECK(std::any_of(pred.begin(), pred.end(), [&](const CfgEdge& x) { return x.from == node.id; }));
                }
            }
        }
    }
}

}
