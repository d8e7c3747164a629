#include <doctest.h>

#include <random>

#include "../support/brute.hpp"
#include "helpers.hpp"
#include "minibox/ext_int.hpp"
#include "minibox/truth3.hpp"

using namespace minibox;
using namespace minibox::testing;

TEST_SUITE("interval") {

TEST_CASE("extended integers order infinities around finite values") {
    CHECK(ExtInt::neg_inf() < ExtInt(-1000000));
    CHECK(ExtInt(1000000) < ExtInt::pos_inf());
    CHECK(ExtInt(3) < ExtInt(4));
    CHECK(ExtInt(0) * ExtInt::pos_inf() == ExtInt(0));
    CHECK(ExtInt(-2) * ExtInt::pos_inf() == ExtInt::neg_inf());
    CHECK(ExtInt::neg_inf() + ExtInt(5) == ExtInt::neg_inf());
    CHECK_THROWS(ExtInt::neg_inf() + ExtInt::pos_inf());
    CHECK(ExtInt::neg_inf().to_string() == "-inf");
    CHECK(ExtInt::pos_inf().to_string() == "+inf");
}

TEST_CASE("big integers do not overflow") {
    const Interval big = interval_binop(ArithOp::mul, iv("[1000000000000,1000000000000]"),
                                        iv("[1000000000000,1000000000000]"));
    CHECK(big.to_string() == "[1000000000000000000000000,1000000000000000000000000]");
}

TEST_CASE("construction normalizes") {
    CHECK(Interval(ExtInt(3), ExtInt(2)).is_bottom());
    CHECK(Interval(ExtInt::pos_inf(), ExtInt::pos_inf()).is_bottom());
    CHECK(Interval(ExtInt::neg_inf(), ExtInt::neg_inf()).is_bottom());
    CHECK(Interval::top().is_top());
    CHECK(iv(4, 4).is_singleton());
    CHECK_FALSE(Interval::at_least(ExtInt(4)).is_singleton());
    CHECK(iv("[-inf,3]") == Interval::at_most(ExtInt(3)));
    CHECK(iv("[2,inf]") == Interval::at_least(ExtInt(2)));
    CHECK(iv("bottom").is_bottom());
    CHECK(Interval::bottom().to_string() == "bottom");
    CHECK(Interval::top().to_string() == "[-inf,+inf]");
    CHECK_THROWS_AS(parse_interval("[1,"), std::invalid_argument);
}

TEST_CASE("binop examples") {
    CHECK(interval_binop(ArithOp::add, iv(1, 2), iv(3, 4)) == iv(4, 6));
    CHECK(interval_binop(ArithOp::mul, iv(-1, 2), iv(3, 4)) == iv(-4, 8));
    CHECK(interval_binop(ArithOp::add, iv(0, 0), iv(-7, 12)) == iv(-7, 12));
    CHECK(interval_binop(ArithOp::div, iv(1, 10), iv(-2, 3)) == iv(-10, 10));
    CHECK(interval_binop(ArithOp::div, iv(1, 10), iv(0, 0)).is_bottom());
    CHECK(interval_binop(ArithOp::add, Interval::bottom(), iv(0, 1)).is_bottom());
}

TEST_CASE("binop examples agree with enumeration") {
    CHECK(brute_binop(ArithOp::add, 1, 2, 3, 4) == iv(4, 6));
    CHECK(brute_binop(ArithOp::mul, -1, 2, 3, 4) == iv(-4, 8));
    CHECK(brute_binop(ArithOp::div, 1, 10, -2, 3) == iv(-10, 10));
}

TEST_CASE("binop is the exact hull on small finite intervals") {
    for (ArithOp op : {ArithOp::add, ArithOp::sub, ArithOp::mul, ArithOp::div}) {
        for (long alo = -4; alo <= 4; ++alo) {
            for (long ahi = alo; ahi <= 4; ++ahi) {
                for (long blo = -4; blo <= 4; ++blo) {
                    for (long bhi = blo; bhi <= 4; ++bhi) {
                        const Interval got = interval_binop(op, iv(alo, ahi), iv(blo, bhi));
                        const Interval want = brute_binop(op, alo, ahi, blo, bhi);
                        if (got != want) {
                            FAIL_CHECK("op " << int(op) << " [" << alo << "," << ahi << "] [" << blo << "," << bhi
                                             << "] got " << got << " want " << want);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("binop with infinite endpoints contains every sampled result") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-30, 30);
    const Interval shapes[] = {Interval::top(), iv("[-inf,3]"), iv("[-2,inf]"), iv("[0,inf]"), iv("[-inf,0]"),
                               iv(-3, 5), iv(0, 0), iv(2, 2), iv("[1,inf]"), iv("[-inf,-1]")};
    for (ArithOp op : {ArithOp::add, ArithOp::sub, ArithOp::mul, ArithOp::div}) {
        for (const auto& a : shapes) {
            for (const auto& b : shapes) {
                const Interval r = interval_binop(op, a, b);
                for (int k = 0; k < 200; ++k) {
                    const BigInt x = d(rng);
                    const BigInt y = d(rng);
                    if (!a.contains(x) || !b.contains(y) || (op == ArithOp::div && y == 0)) {
                        continue;
                    }
                    const BigInt v = op == ArithOp::add   ? BigInt(x + y)
                                     : op == ArithOp::sub ? BigInt(x - y)
                                     : op == ArithOp::mul ? BigInt(x * y)
                                                          : BigInt(x / y);
                    CHECK_MESSAGE(r.contains(v), a << " op" << int(op) << " " << b << " = " << r << " misses " << v);
                }
            }
        }
    }
    CHECK(interval_binop(ArithOp::mul, iv(0, 0), Interval::top()) == iv(0, 0));
    CHECK(interval_binop(ArithOp::div, iv("[1,inf]"), iv("[1,inf]")) == iv("[0,inf]"));
    CHECK(interval_binop(ArithOp::div, iv(5, 5), Interval::top()) == iv(-5, 5));
}

TEST_CASE("extrapolate mode goes to top on non-singleton operands") {
    CHECK(interval_binop(ArithOp::add, iv(0, 3), iv(1, 1), ArithMode::extrapolate).is_top());
    CHECK(interval_binop(ArithOp::add, iv(2, 2), iv(1, 1), ArithMode::extrapolate) == iv(3, 3));
    CHECK(interval_binop(ArithOp::div, iv(2, 2), iv(0, 0), ArithMode::extrapolate).is_bottom());
}

TEST_CASE("join and meet examples") {
    CHECK(join(iv(0, 1), iv(5, 6)) == iv(0, 6));
    CHECK(join(Interval::bottom(), iv(2, 3)) == iv(2, 3));
    CHECK(join(iv("[-inf,0]"), iv("[0,inf]")).is_top());
    CHECK(meet(iv(0, 5), iv(3, 9)) == iv(3, 5));
    CHECK(meet(iv(0, 1), iv(2, 3)).is_bottom());
    CHECK(meet(Interval::top(), iv(-4, 8)) == iv(-4, 8));
}

TEST_CASE("widen and narrow examples") {
    CHECK(widen(iv(0, 5), iv(0, 7)) == iv("[0,+inf]"));
    CHECK(widen(iv(0, 5), iv(-1, 5)) == iv("[-inf,5]"));
    CHECK(widen(iv(0, 5), iv(1, 4)) == iv(0, 5));
    CHECK(widen(Interval::bottom(), iv(1, 4)) == iv(1, 4));
    CHECK(narrow(iv("[0,+inf]"), iv(0, 10)) == iv(0, 10));
    CHECK(narrow(iv(0, 5), iv(1, 4)) == iv(0, 5));
    CHECK(narrow(Interval::top(), iv(3, 7)) == iv(3, 7));
    CHECK(narrow(Interval::bottom(), iv(3, 7)).is_bottom());
    CHECK(narrow(iv(3, 7), Interval::bottom()).is_bottom());
}

namespace {

Interval random_interval(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-6, 6);
    std::uniform_int_distribution<int> shape(0, 9);
    switch (shape(rng)) {
    case 0: return Interval::bottom();
    case 1: return Interval::top();
    case 2: return Interval::at_least(ExtInt(d(rng)));
    case 3: return Interval::at_most(ExtInt(d(rng)));
    default: {
        int a = d(rng);
        int b = d(rng);
        return iv(std::min(a, b), std::max(a, b));
    }
    }
}

} // namespace

TEST_CASE("join and meet form a lattice") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 3000; ++k) {
        const Interval a = random_interval(rng);
        const Interval b = random_interval(rng);
        const Interval c = random_interval(rng);
        CHECK(join(a, b) == join(b, a));
        CHECK(meet(a, b) == meet(b, a));
        CHECK(join(join(a, b), c) == join(a, join(b, c)));
        CHECK(meet(meet(a, b), c) == meet(a, meet(b, c)));
        CHECK(join(a, meet(a, b)) == a);
        CHECK(meet(a, join(a, b)) == a);
        CHECK(meet(a, b).leq(a));
        CHECK(a.leq(join(a, b)));
        CHECK(a.leq(widen(a, b)));
        CHECK(join(a, b).leq(widen(a, join(a, b))));
    }
}

TEST_CASE("widening stabilizes ascending chains quickly") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> step(0, 3);
    for (int k = 0; k < 500; ++k) {
        Interval chain = iv(0, 0);
        Interval w = chain;
        int changes = 0;
        for (int i = 0; i < 50; ++i) {
            chain = join(chain, iv(-step(rng) * i, step(rng) * i));
            const Interval next = widen(w, chain);
            changes += next != w;
            w = next;
            CHECK(chain.leq(w));
        }
        CHECK(changes <= 2);
    }
}

TEST_CASE("eval_cmp examples") {
    CHECK(eval_cmp(CmpOp::gt, iv(4, 9), iv(3, 3)) == Truth3::true3);
    CHECK(eval_cmp(CmpOp::lt, iv(4, 9), iv(10, 10)) == Truth3::true3);
    CHECK(eval_cmp(CmpOp::eq, iv(5, 5), iv(5, 5)) == Truth3::true3);
    CHECK(eval_cmp(CmpOp::lt, iv(0, 10), iv(5, 5)) == Truth3::maybe3);
    CHECK(eval_cmp(CmpOp::lt, Interval::bottom(), iv(5, 5)) == Truth3::maybe3);
    CHECK(brute_cmp(CmpOp::lt, 0, 10, 5, 5) == Truth3::maybe3);
}

TEST_CASE("eval_cmp agrees with pairwise enumeration") {
    for (CmpOp op : {CmpOp::eq, CmpOp::ne, CmpOp::lt, CmpOp::le, CmpOp::gt, CmpOp::ge}) {
        for (long alo = -3; alo <= 3; ++alo) {
            for (long ahi = alo; ahi <= alo + 5; ++ahi) {
                for (long blo = -3; blo <= 3; ++blo) {
                    for (long bhi = blo; bhi <= blo + 5; ++bhi) {
                        CHECK(eval_cmp(op, iv(alo, ahi), iv(blo, bhi)) == brute_cmp(op, alo, ahi, blo, bhi));
                    }
                }
            }
        }
    }
    CHECK(eval_cmp(CmpOp::lt, iv("[-inf,3]"), iv("[4,+inf]")) == Truth3::true3);
    CHECK(eval_cmp(CmpOp::ne, iv("[-inf,3]"), iv("[4,+inf]")) == Truth3::true3);
    CHECK(eval_cmp(CmpOp::eq, Interval::top(), iv(0, 0)) == Truth3::maybe3);
}

TEST_CASE("Kleene tables") {
    using enum Truth3;
    CHECK(truth3_logic(LogicOp::land, true3, maybe3) == maybe3);
    CHECK(truth3_logic(LogicOp::lor, true3, maybe3) == true3);
    CHECK(truth3_logic(LogicOp::lnot, false3) == true3);
    CHECK(truth3_logic(LogicOp::lnot, maybe3) == maybe3);
    CHECK(truth3_logic(LogicOp::land, false3, maybe3) == false3);
    CHECK(truth3_logic(LogicOp::lor, false3, false3) == false3);
    CHECK_THROWS_AS(truth3_logic(LogicOp::land, true3), std::invalid_argument);
    CHECK_THROWS_AS(truth3_logic(LogicOp::lnot, true3, true3), std::invalid_argument);
    CHECK(to_string(maybe3) == "maybe");
}

TEST_CASE("negated and swapped comparisons") {
    for (CmpOp op : {CmpOp::eq, CmpOp::ne, CmpOp::lt, CmpOp::le, CmpOp::gt, CmpOp::ge}) {
        for (int a = -2; a <= 2; ++a) {
            for (int b = -2; b <= 2; ++b) {
                CHECK(holds(negate_cmp(op), a, b) == !holds(op, a, b));
                CHECK(holds(swap_cmp(op), b, a) == holds(op, a, b));
            }
        }
    }
}

}
