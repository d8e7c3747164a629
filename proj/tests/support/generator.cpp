#include "generator.hpp"

#include <set>
#include <sstream>
#include <vector>

namespace minibox::testing {

namespace {

class Generator {
  public:
    Generator(std::uint64_t seed, const GeneratorOptions& options) : rng_(seed), options_(options) {}

    std::string program() {
        std::ostringstream out;
        const bool helper = options_.allow_calls && chance(0.3);
        if (helper) {
            helper_arity_ = pick(1, 2);
            out << helper_function();
            has_helper_ = true;
        }
        const int n = pick(1, options_.max_vars);
        vars_.clear();
        for (int i = 0; i < n; ++i) {
            vars_.push_back(std::string(1, static_cast<char>('a' + i)));
        }
        out << "fn main() {\n";
        for (const auto& v : vars_) {
            out << "    int " << v;
            if (chance(0.6) && nondets_ < options_.max_nondets) {
                out << " = " << nondet();
            } else if (chance(0.5)) {
                out << " = " << pick(-3, 3);
            }
            out << ";\n";
        }
        out << block_body(1, 0, pick(2, 5));
        out << "}\n";
        return out.str();
    }

  private:
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    std::string nondet() {
        ++nondets_;
        const int lo = pick(-options_.nondet_bound, options_.nondet_bound);
        const int hi = pick(lo, options_.nondet_bound);
        return "nondet(" + std::to_string(lo) + ", " + std::to_string(hi) + ")";
    }

    std::string var() { return vars_[static_cast<std::size_t>(pick(0, static_cast<int>(vars_.size()) - 1))]; }

    std::vector<std::string> free_targets() const {
        std::vector<std::string> out;
        for (const auto& v : vars_) {
            if (!locked_.contains(v)) {
                out.push_back(v);
            }
        }
        return out;
    }

    std::string literal() {
        const int v = pick(-5, 5);
        return v < 0 ? "(" + std::to_string(v) + ")" : std::to_string(v);
    }

    std::string arith(int depth) {
        if (depth <= 0 || chance(0.4)) {
            return chance(0.6) ? var() : literal();
        }
        static const char* ops[] = {"+", "-", "*", "/"};
        int op = pick(0, options_.allow_division ? 3 : 2);
        if (op == 3 && chance(0.5)) {
            op = pick(0, 2);
        }
        if (chance(0.08)) {
            return "-(" + arith(depth - 1) + ")";
        }
        return "(" + arith(depth - 1) + " " + ops[op] + " " + arith(depth - 1) + ")";
    }

    std::string comparison() {
        static const char* ops[] = {"==", "!=", "<", "<=", ">", ">="};
        return arith(1) + " " + ops[pick(0, 5)] + " " + arith(chance(0.7) ? 0 : 1);
    }

    std::string condition(int depth) {
        if (depth <= 0 || chance(0.55)) {
            return comparison();
        }
        switch (pick(0, 2)) {
        case 0: return "(" + condition(depth - 1) + " && " + condition(depth - 1) + ")";
        case 1: return "(" + condition(depth - 1) + " || " + condition(depth - 1) + ")";
        default: return "!(" + condition(depth - 1) + ")";
        }
    }

    std::string indent(int level) const { return std::string(static_cast<std::size_t>(level) * 4, ' '); }

    std::string block_body(int level, int loop_depth, int count) {
        std::string out;
        for (int i = 0; i < count; ++i) {
            out += statement(level, loop_depth);
        }
        return out;
    }

    std::string call_args() {
        std::string out;
        for (int i = 0; i < helper_arity_; ++i) {
            out += (i ? ", " : "") + arith(1);
        }
        return out;
    }

    std::string statement(int level, int loop_depth) {
        const std::string pad = indent(level);
        const auto targets = free_targets();
        const int kind = pick(0, 9);
        if (targets.empty()) {
            return pad + "assert(" + condition(1) + ");\n";
        }
        auto target = [&] { return targets[static_cast<std::size_t>(pick(0, static_cast<int>(targets.size()) - 1))]; };
        switch (kind) {
        case 0:
        case 1:
            return pad + target() + " = " + arith(2) + ";\n";
        case 2:
            if (loop_depth == 0 && nondets_ < options_.max_nondets) {
                return pad + target() + " = " + nondet() + ";\n";
            }
            return pad + target() + " = " + arith(1) + ";\n";
        case 3:
        case 4: {
            std::string out = pad + "if (" + condition(2) + ") {\n" + block_body(level + 1, loop_depth, pick(1, 2));
            if (chance(0.5)) {
                out += pad + "} else {\n" + block_body(level + 1, loop_depth, pick(1, 2));
            }
            return out + pad + "}\n";
        }
        case 5:
        case 6: {
            if (loop_depth >= options_.max_loop_depth || level > 3) {
                return pad + "assert(" + condition(1) + ");\n";
            }
            const std::string counter = target();
            const bool up = chance(0.7);
            const int bound = pick(-3, 6) * (up ? 1 : -1);
            std::string cond = counter + (up ? " < " : " > ") + std::to_string(bound);
            if (chance(0.25)) {
                cond = "(" + cond + " && " + comparison() + ")";
            }
            locked_.insert(counter);
            std::string out = pad + "while (" + cond + ") {\n" + block_body(level + 1, loop_depth + 1, pick(0, 2)) +
                              indent(level + 1) + counter + " = " + counter + (up ? " + " : " - ") +
                              std::to_string(pick(1, 2)) + ";\n" + pad + "}\n";
            locked_.erase(counter);
            return out;
        }
        case 7:
            return pad + (chance(0.5) ? "assume(" : "assert(") + condition(1) + ");\n";
        default:
            if (has_helper_) {
                if (chance(0.7)) {
                    return pad + target() + " = h(" + call_args() + ");\n";
                }
                return pad + "h(" + call_args() + ");\n";
            }
            return pad + target() + " = " + arith(1) + ";\n";
        }
    }

    std::string helper_function() {
        vars_ = {"p"};
        if (helper_arity_ == 2) {
            vars_.push_back("q");
        }
        std::string out = helper_arity_ == 1 ? "fn h(p) {\n" : "fn h(p, q) {\n";
        out += "    int r = " + arith(1) + ";\n";
        vars_.push_back("r");
        out += "    if (" + condition(1) + ") {\n        r = " + arith(2) + ";\n    }\n";
        if (chance(0.3)) {
            out += "    assert(" + condition(1) + ");\n";
        }
        out += "    return " + arith(1) + ";\n}\n\n";
        return out;
    }

    std::mt19937_64 rng_;
    GeneratorOptions options_;
    std::vector<std::string> vars_;
    std::set<std::string> locked_;
    int nondets_ = 0;
    int helper_arity_ = 0;
    bool has_helper_ = false;
};

} // namespace

std::string generate_program(std::uint64_t seed, const GeneratorOptions& options) {
    return Generator(seed, options).program();
}

} // namespace minibox::testing
