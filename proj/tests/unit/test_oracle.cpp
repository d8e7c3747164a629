#include <doctest.h>

#include "helpers.hpp"
#include "minibox/oracle.hpp"

using namespace minibox;
using namespace minibox::testing;

namespace {

std::size_t count(const std::vector<ConcreteState>& runs, VerdictKind kind) {
    return static_cast<std::size_t>(
        std::count_if(runs.begin(), runs.end(), [&](const ConcreteState& s) { return s.verdict.kind == kind; }));
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("enumeration examples") {
    auto runs = enumerate_executions(main_program("int x = nondet(0, 3); assert(x <= 3);"));
    CHECK(runs.size() == 4);
    CHECK(count(runs, VerdictKind::ok) == 4);

    runs = enumerate_executions(main_program("int x = nondet(0, 3); assert(x < 3);"));
    CHECK(runs.size() == 4);
    CHECK(count(runs, VerdictKind::ok) == 3);
    CHECK(count(runs, VerdictKind::assert_failed) == 1);
    CHECK(runs.back().env.at("x") == 3);

    CHECK_THROWS_AS(enumerate_executions(main_program("int x = nondet();")), OracleError);
}

TEST_CASE("choices nest in lexicographic order") {
    const auto runs = enumerate_executions(main_program("int x = nondet(0, 1); int y = nondet(5, 7);"));
    REQUIRE(runs.size() == 6);
    CHECK(runs[0].choices == std::vector<BigInt>{0, 5});
    CHECK(runs[2].choices == std::vector<BigInt>{0, 7});
    CHECK(runs[5].choices == std::vector<BigInt>{1, 7});
}

TEST_CASE("path-dependent nondet") {
    const auto runs =
        enumerate_executions(main_program("int x = nondet(0, 1); int y; if (x == 1) { y = nondet(1, 3); }"));
    CHECK(runs.size() == 4);
}

TEST_CASE("verdicts") {
    auto runs = enumerate_executions(main_program("int x = nondet(-1, 1); int y; y = 6 / x;"));
    CHECK(count(runs, VerdictKind::div_by_zero) == 1);
    runs = enumerate_executions(main_program("int x = nondet(0, 3); assume(x > 1);"));
    CHECK(count(runs, VerdictKind::assume_infeasible) == 2);
    runs = enumerate_executions(main_program("int x; while (true) { x = x + 1; }"), {.step_limit = 50});
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].verdict.kind == VerdictKind::step_limit);
    CHECK(runs[0].env.at("x") == 50);
    runs = enumerate_executions(main_program("int x; x = 7 / -2; assert(x == -3);"));
    CHECK(runs[0].verdict.kind == VerdictKind::ok);
    CHECK(enumerate_executions(main_program("int x = nondet(0, 99);"), {.max_executions = 100}).size() == 100);
    CHECK_THROWS_AS(enumerate_executions(main_program("int x = nondet(0, 100);"), {.max_executions = 100}),
                    OracleError);
}

TEST_CASE("calls run the callee with fresh locals") {
    const Program p = parse_program(R"(
fn twice(a) { int t; t = t + a; return t * 2; }
fn main() { int r = 4; r = twice(r); r = twice(r); })");
    const auto runs = enumerate_executions(p);
    CHECK(runs[0].env.at("r") == 16);
}

TEST_CASE("soundness check reports injected faults") {
    const Program p = main_program("int i = 0; while (i < 10) { i = i + 1; }");
    ProgramAnalysis a = analyze_program(p);
    CHECK(check_soundness(p, a).empty());

    const Program line = main_program("int x = 1; int y; y = x + 2; x = y * y;");
    CHECK(check_soundness(line, analyze_program(line)).empty());

    FunctionAnalysis& fa = a.functions.at("main");
    const NodeId body = *fa.cfg.node_of(p.entry_function().body[1]->as<While>()->body[0].get());
    fa.result.before[body.index].env.set("i", iv(0, 0));
    const auto v = check_soundness(p, a);
    REQUIRE(v.size() == 1);
    CHECK(v[0].node == body);
    CHECK(v[0].var == "i");
    CHECK(v[0].value == 1);
}

TEST_CASE("equivalence") {
    const Program p = main_program("int x = nondet(0, 3); int y; y = x + 1;");
    CHECK(check_equivalence(p, p).equivalent);
    const Program q = main_program("int x = nondet(0, 3); int y; y = x + 2;");
    const EquivalenceResult r = check_equivalence(p, q);
    CHECK_FALSE(r.equivalent);
    CHECK(r.counterexample == std::vector<BigInt>{0});

    const Program empty = main_program("");
    CHECK(check_equivalence(empty, empty).equivalent);
    CHECK_THROWS_AS(check_equivalence(p, main_program("int x = nondet(0, 4); int y;")), OracleError);

    const Program extra = main_program("int x = nondet(0, 3); int y; int z; y = x + 1; z = 9;");
    CHECK(check_equivalence(p, extra).equivalent);
}

}
