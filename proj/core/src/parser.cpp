#include "minibox/parser.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace minibox {

ParseError::ParseError(ParseErrorKind kind, int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), kind_(kind),
      line_(line), column_(column) {}

namespace {

enum class Tok : std::uint8_t {
    ident,
    integer,
    kw_fn,
    kw_int,
    kw_if,
    kw_else,
    kw_while,
    kw_assert,
    kw_assume,
    kw_nondet,
    kw_return,
    kw_true,
    kw_false,
    kw_skip,
    lparen,
    rparen,
    lbrace,
    rbrace,
    comma,
    semi,
    assign,
    plus,
    minus,
    star,
    slash,
    eq,
    ne,
    lt,
    le,
    gt,
    ge,
    land,
    lor,
    bang,
    eof,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

const std::map<std::string, Tok, std::less<>>& keywords() {
    static const std::map<std::string, Tok, std::less<>> table{
        {"fn", Tok::kw_fn},         {"int", Tok::kw_int},       {"if", Tok::kw_if},
        {"else", Tok::kw_else},     {"while", Tok::kw_while},   {"assert", Tok::kw_assert},
        {"assume", Tok::kw_assume}, {"nondet", Tok::kw_nondet}, {"return", Tok::kw_return},
        {"true", Tok::kw_true},     {"false", Tok::kw_false},   {"skip", Tok::kw_skip},
    };
    return table;
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    const auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') {
                advance(1);
            }
            continue;
        }
        const int tl = line;
        const int tc = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
                ++j;
            }
            std::string word(src.substr(i, j - i));
            const auto kw = keywords().find(word);
            out.push_back({kw == keywords().end() ? Tok::ident : kw->second, word, tl, tc});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
                ++j;
            }
            out.push_back({Tok::integer, std::string(src.substr(i, j - i)), tl, tc});
            advance(j - i);
            continue;
        }
        const auto two = src.substr(i, 2);
        std::optional<Tok> two_tok;
        if (two == "==") two_tok = Tok::eq;
        else if (two == "!=") two_tok = Tok::ne;
        else if (two == "<=") two_tok = Tok::le;
        else if (two == ">=") two_tok = Tok::ge;
        else if (two == "&&") two_tok = Tok::land;
        else if (two == "||") two_tok = Tok::lor;
        if (two_tok) {
            out.push_back({*two_tok, std::string(two), tl, tc});
            advance(2);
            continue;
        }
        Tok one;
        switch (c) {
        case '(': one = Tok::lparen; break;
        case ')': one = Tok::rparen; break;
        case '{': one = Tok::lbrace; break;
        case '}': one = Tok::rbrace; break;
        case ',': one = Tok::comma; break;
        case ';': one = Tok::semi; break;
        case '=': one = Tok::assign; break;
        case '+': one = Tok::plus; break;
        case '-': one = Tok::minus; break;
        case '*': one = Tok::star; break;
        case '/': one = Tok::slash; break;
        case '<': one = Tok::lt; break;
        case '>': one = Tok::gt; break;
        case '!': one = Tok::bang; break;
        default:
            throw ParseError(ParseErrorKind::syntax, tl, tc, std::string("unexpected character '") + c + "'");
        }
        out.push_back({one, std::string(1, c), tl, tc});
        advance(1);
    }
    out.push_back({Tok::eof, "<end of input>", line, col});
    return out;
}

struct CallSite {
    std::string caller;
    std::string callee;
    std::size_t arity;
    int line;
    int column;
};

class Parser {
  public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    Program program() {
        Program prog;
        std::map<std::string, Token> seen;
        while (peek().kind != Tok::eof) {
            const Token& at = peek();
            Function f = function();
            if (!seen.emplace(f.name, at).second) {
                fail(ParseErrorKind::redeclared, at, "function '" + f.name + "' defined twice");
            }
            prog.functions.push_back(std::move(f));
        }
        check_calls(prog);
        const Function* entry = prog.find(prog.entry);
        if (entry == nullptr) {
            fail(ParseErrorKind::entry, peek(), "no entry function 'main'");
        }
        if (!entry->params.empty()) {
            fail(ParseErrorKind::entry, seen.at(prog.entry), "entry function 'main' must not take parameters");
        }
        return prog;
    }

    ExprPtr standalone(const std::set<std::string>& vars, bool want_bool) {
        declared_ = vars;
        const Token& start = peek();
        ExprPtr e = disjunction();
        expect_sort(e, want_bool, start);
        if (peek().kind != Tok::eof) {
            fail(ParseErrorKind::syntax, peek(), "unexpected '" + peek().text + "' after expression");
        }
        return e;
    }

  private:
    [[noreturn]] static void fail(ParseErrorKind kind, const Token& at, const std::string& msg) {
        throw ParseError(kind, at.line, at.column, msg);
    }

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& next() {
        const Token& t = peek();
        if (pos_ < toks_.size() - 1) {
            ++pos_;
        }
        return t;
    }
    bool accept(Tok k) {
        if (peek().kind == k) {
            next();
            return true;
        }
        return false;
    }
    const Token& expect(Tok k, std::string_view what) {
        if (peek().kind != k) {
            fail(ParseErrorKind::syntax, peek(), "expected " + std::string(what) + ", found '" + peek().text + "'");
        }
        return next();
    }

    void declare(const Token& name) {
        if (!declared_.insert(name.text).second) {
            fail(ParseErrorKind::redeclared, name, "'" + name.text + "' is already declared");
        }
    }
    void require_declared(const Token& name) const {
        if (declared_.count(name.text) == 0) {
            fail(ParseErrorKind::undeclared, name, "use of undeclared variable '" + name.text + "'");
        }
    }

    Function function() {
        expect(Tok::kw_fn, "'fn'");
        Function f;
        f.name = expect(Tok::ident, "function name").text;
        current_ = f.name;
        declared_.clear();
        expect(Tok::lparen, "'('");
        if (peek().kind != Tok::rparen) {
            do {
                const Token& p = expect(Tok::ident, "parameter name");
                declare(p);
                f.params.push_back(p.text);
            } while (accept(Tok::comma));
        }
        expect(Tok::rparen, "')'");
        locals_ = &f.locals;
        f.body = block();
        locals_ = nullptr;
        return f;
    }

    Block block() {
        expect(Tok::lbrace, "'{'");
        Block out;
        while (peek().kind != Tok::rbrace) {
            if (peek().kind == Tok::eof) {
                fail(ParseErrorKind::syntax, peek(), "unterminated block");
            }
            item(out);
        }
        next();
        return out;
    }

    void item(Block& out) {
        if (accept(Tok::kw_int)) {
            const Token& name = expect(Tok::ident, "variable name");
            if (accept(Tok::assign)) {
                ExprPtr init;
                std::optional<Call> call;
                rhs(init, call, name.text);
                expect(Tok::semi, "';'");
                declare(name);
                locals_->push_back(name.text);
                out.push_back(call ? make_stmt(std::move(*call)) : make_stmt(Assign{name.text, init}));
            } else {
                expect(Tok::semi, "';'");
                declare(name);
                locals_->push_back(name.text);
            }
            return;
        }
        out.push_back(statement());
    }

    // Right-hand side of an assignment: nondet, a call, or an arithmetic expression.
    void rhs(ExprPtr& expr, std::optional<Call>& call, const std::string& target) {
        if (peek().kind == Tok::kw_nondet) {
            expr = nondet();
            return;
        }
        if (peek().kind == Tok::ident && peek(1).kind == Tok::lparen) {
            call = call_tail();
            call->result = target;
            return;
        }
        const Token& start = peek();
        expr = disjunction();
        expect_sort(expr, false, start);
    }

    std::optional<BigInt> signed_int() {
        const bool neg = accept(Tok::minus);
        const Token& t = expect(Tok::integer, "integer literal");
        BigInt v(t.text);
        return neg ? BigInt(-v) : v;
    }

    ExprPtr nondet() {
        const Token& kw = expect(Tok::kw_nondet, "'nondet'");
        expect(Tok::lparen, "'('");
        std::optional<BigInt> lo;
        std::optional<BigInt> hi;
        if (peek().kind != Tok::rparen) {
            lo = signed_int();
            expect(Tok::comma, "','");
            hi = signed_int();
            if (*hi < *lo) {
                fail(ParseErrorKind::nondet_bounds, kw, "nondet bounds reversed");
            }
        }
        expect(Tok::rparen, "')'");
        return make_nondet(std::move(lo), std::move(hi));
    }

    Call call_tail() {
        const Token& callee = expect(Tok::ident, "function name");
        expect(Tok::lparen, "'('");
        Call c;
        c.callee = callee.text;
        if (peek().kind != Tok::rparen) {
            do {
                const Token& start = peek();
                ExprPtr a = disjunction();
                expect_sort(a, false, start);
                c.args.push_back(std::move(a));
            } while (accept(Tok::comma));
        }
        expect(Tok::rparen, "')'");
        calls_.push_back({current_, c.callee, c.args.size(), callee.line, callee.column});
        return c;
    }

    ExprPtr condition_in_parens() {
        expect(Tok::lparen, "'('");
        const Token& start = peek();
        ExprPtr c = disjunction();
        expect_sort(c, true, start);
        expect(Tok::rparen, "')'");
        return c;
    }

    StmtPtr statement() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::ident: {
            if (peek(1).kind == Tok::lparen) {
                Call c = call_tail();
                expect(Tok::semi, "';'");
                return make_stmt(std::move(c));
            }
            const Token& target = next();
            require_declared(target);
            expect(Tok::assign, "'='");
            ExprPtr e;
            std::optional<Call> call;
            rhs(e, call, target.text);
            expect(Tok::semi, "';'");
            return call ? make_stmt(std::move(*call)) : make_stmt(Assign{target.text, e});
        }
        case Tok::kw_if: {
            next();
            If s;
            s.cond = condition_in_parens();
            s.then_block = block();
            if (accept(Tok::kw_else)) {
                if (peek().kind == Tok::kw_if) {
                    s.else_block = Block{statement()};
                } else {
                    s.else_block = block();
                }
            }
            return make_stmt(std::move(s));
        }
        case Tok::kw_while: {
            next();
            While s;
            s.cond = condition_in_parens();
            s.body = block();
            return make_stmt(std::move(s));
        }
        case Tok::kw_assert: {
            next();
            ExprPtr c = condition_in_parens();
            expect(Tok::semi, "';'");
            return make_stmt(Assert{c});
        }
        case Tok::kw_assume: {
            next();
            ExprPtr c = condition_in_parens();
            expect(Tok::semi, "';'");
            return make_stmt(Assume{c});
        }
        case Tok::kw_return: {
            next();
            ExprPtr v;
            if (peek().kind != Tok::semi) {
                const Token& start = peek();
                v = disjunction();
                expect_sort(v, false, start);
            }
            expect(Tok::semi, "';'");
            return make_stmt(Return{v});
        }
        case Tok::kw_skip:
            next();
            expect(Tok::semi, "';'");
            return make_stmt(Skip{});
        default: fail(ParseErrorKind::syntax, t, "expected a statement, found '" + t.text + "'");
        }
    }

    static void expect_sort(const ExprPtr& e, bool want_bool, const Token& at) {
        if (e->is_bool() != want_bool) {
            fail(ParseErrorKind::sort, at, want_bool ? "expected a condition" : "expected an arithmetic expression");
        }
    }

    ExprPtr disjunction() {
        ExprPtr lhs = conjunction();
        while (peek().kind == Tok::lor) {
            const Token& op = next();
            ExprPtr rhs = conjunction();
            expect_sort(lhs, true, op);
            expect_sort(rhs, true, op);
            lhs = make_binary(BinaryOp::lor, lhs, rhs);
        }
        return lhs;
    }

    ExprPtr conjunction() {
        ExprPtr lhs = comparison();
        while (peek().kind == Tok::land) {
            const Token& op = next();
            ExprPtr rhs = comparison();
            expect_sort(lhs, true, op);
            expect_sort(rhs, true, op);
            lhs = make_binary(BinaryOp::land, lhs, rhs);
        }
        return lhs;
    }

    static std::optional<BinaryOp> cmp_of(Tok k) {
        switch (k) {
        case Tok::eq: return BinaryOp::eq;
        case Tok::ne: return BinaryOp::ne;
        case Tok::lt: return BinaryOp::lt;
        case Tok::le: return BinaryOp::le;
        case Tok::gt: return BinaryOp::gt;
        case Tok::ge: return BinaryOp::ge;
        default: return std::nullopt;
        }
    }

    ExprPtr comparison() {
        ExprPtr lhs = additive();
        if (const auto op = cmp_of(peek().kind)) {
            const Token& at = next();
            ExprPtr rhs = additive();
            expect_sort(lhs, false, at);
            expect_sort(rhs, false, at);
            lhs = make_binary(*op, lhs, rhs);
            if (cmp_of(peek().kind)) {
                fail(ParseErrorKind::sort, peek(), "comparisons do not chain");
            }
        }
        return lhs;
    }

    ExprPtr additive() {
        ExprPtr lhs = multiplicative();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const Token& at = next();
            ExprPtr rhs = multiplicative();
            expect_sort(lhs, false, at);
            expect_sort(rhs, false, at);
            lhs = make_binary(at.kind == Tok::plus ? BinaryOp::add : BinaryOp::sub, lhs, rhs);
        }
        return lhs;
    }

    ExprPtr multiplicative() {
        ExprPtr lhs = unary();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            const Token& at = next();
            ExprPtr rhs = unary();
            expect_sort(lhs, false, at);
            expect_sort(rhs, false, at);
            lhs = make_binary(at.kind == Tok::star ? BinaryOp::mul : BinaryOp::div, lhs, rhs);
        }
        return lhs;
    }

    ExprPtr unary() {
        const Token& t = peek();
        if (t.kind == Tok::minus) {
            next();
            // A minus directly on a literal is part of the literal.
            if (peek().kind == Tok::integer) {
                return make_int(BigInt(-BigInt(next().text)));
            }
            ExprPtr e = unary();
            expect_sort(e, false, t);
            return make_unary(UnaryOp::neg, e);
        }
        if (t.kind == Tok::bang) {
            next();
            ExprPtr e = unary();
            expect_sort(e, true, t);
            return make_unary(UnaryOp::lnot, e);
        }
        return primary();
    }

    ExprPtr primary() {
        const Token& t = next();
        switch (t.kind) {
        case Tok::integer: return make_int(BigInt(t.text));
        case Tok::kw_true: return make_bool(true);
        case Tok::kw_false: return make_bool(false);
        case Tok::ident:
            if (peek().kind == Tok::lparen) {
                fail(ParseErrorKind::syntax, t, "calls are statements, not expressions");
            }
            require_declared(t);
            return make_var(t.text);
        case Tok::lparen: {
            ExprPtr e = disjunction();
            expect(Tok::rparen, "')'");
            return e;
        }
        case Tok::kw_nondet:
            fail(ParseErrorKind::syntax, t, "nondet may only appear as a whole right-hand side");
        default: fail(ParseErrorKind::syntax, t, "expected an expression, found '" + t.text + "'");
        }
    }

    void check_calls(const Program& prog) {
        std::map<std::string, std::vector<const CallSite*>> graph;
        for (const auto& site : calls_) {
            const Function* callee = prog.find(site.callee);
            const Token at{Tok::ident, site.callee, site.line, site.column};
            if (callee == nullptr) {
                fail(ParseErrorKind::unknown_function, at, "call to undefined function '" + site.callee + "'");
            }
            if (callee->params.size() != site.arity) {
                fail(ParseErrorKind::arity, at,
                     "'" + site.callee + "' expects " + std::to_string(callee->params.size()) + " argument(s), got " +
                         std::to_string(site.arity));
            }
            graph[site.caller].push_back(&site);
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        std::map<std::string, int> color;
        const std::function<void(const std::string&)> visit = [&](const std::string& fn) {
            color[fn] = 1;
            for (const CallSite* site : graph[fn]) {
                const int c = color[site->callee];
                if (c == 1) {
                    fail(ParseErrorKind::recursion, Token{Tok::ident, site->callee, site->line, site->column},
                         "recursive call to '" + site->callee + "' is not supported");
                }
                if (c == 0) {
                    visit(site->callee);
                }
            }
            color[fn] = 2;
        };
        for (const auto& f : prog.functions) {
            if (color[f.name] == 0) {
                visit(f.name);
            }
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::set<std::string> declared_;
    std::vector<std::string>* locals_ = nullptr;
    std::string current_;
    std::vector<CallSite> calls_;
};

} // namespace

Program parse_program(std::string_view source) { return Parser(source).program(); }

ExprPtr parse_condition(std::string_view text, const std::set<std::string>& vars) {
    return Parser(text).standalone(vars, true);
}

ExprPtr parse_arith(std::string_view text, const std::set<std::string>& vars) {
    return Parser(text).standalone(vars, false);
}

} // namespace minibox
