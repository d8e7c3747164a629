#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "minibox/absint.hpp"
#include "minibox/contractor.hpp"
#include "minibox/instrument.hpp"
#include "minibox/optimize.hpp"
#include "minibox/oracle.hpp"
#include "minibox/parser.hpp"
#include "minibox/printer.hpp"

namespace minibox::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { text, json };

struct Options {
    std::string input;
    std::string output;
    Format format = Format::text;
    std::size_t widening_delay = 2;
    std::size_t narrowing_passes = 2;
    bool no_interval_arith = false;
    bool no_contractors = false;
    std::string constraint;
    std::string box;
};

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

AnalysisConfig config_of(const Options& o) {
    AnalysisConfig c;
    c.widening_delay = o.widening_delay;
    c.narrowing_passes = o.narrowing_passes;
    c.arith = o.no_interval_arith ? ArithMode::extrapolate : ArithMode::precise;
    c.use_contractors = !o.no_contractors;
    return c;
}

json config_json(const AnalysisConfig& c) {
    return {{"widening_delay", c.widening_delay},
            {"narrowing_passes", c.narrowing_passes},
            {"interval_arith", c.arith == ArithMode::precise},
            {"use_contractors", c.use_contractors}};
}

json state_json(const AbstractState& s, const std::vector<std::string>& vars) {
    json out = json::object();
    for (const auto& v : vars) {
        out[v] = s.reachable() ? s.at(v).to_string() : "bottom";
    }
    return out;
}

std::string state_text(const AbstractState& s) { return s.reachable() ? "{" + s.to_string() + "}" : "bottom"; }

Program load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_program(buffer.str());
    } catch (const ParseError& e) {
        throw UsageError(path + ":" + e.what());
    }
}

struct Outcome {
    json report = nullptr;
    json nodes = json::array();
    std::string program;
    std::string text;
    bool violation = false;
};

Outcome do_analyze(const Options& o) {
    const Program prog = load(o.input);
    const AnalysisConfig config = config_of(o);
    const ProgramAnalysis analysis = analyze_program(prog, config);
    Outcome out;
    out.program = to_source(prog);
    std::ostringstream text;
    json functions = json::object();
    for (const auto& f : prog.functions) {
        const FunctionAnalysis& fa = analysis.at(f.name);
        const Cfg& cfg = fa.cfg;
        text << "fn " << f.name << "\n";
        for (const auto& node : cfg.nodes()) {
            const auto& before = state_at(fa.result, node.id, Position::before);
            const auto& after = state_at(fa.result, node.id, Position::after);
            out.nodes.push_back({{"function", f.name},
                                 {"id", node.id.index},
                                 {"stmt", cfg.describe(node.id)},
                                 {"before", state_json(before, cfg.variables())},
                                 {"after", state_json(after, cfg.variables())}});
            text << "  #" << node.id.index << " " << cfg.describe(node.id) << "\n"
                 << "    before " << state_text(before) << "\n"
                 << "    after  " << state_text(after) << "\n";
        }
        json widened = json::array();
        for (const auto& n : fa.result.widened_nodes) {
            widened.push_back(n.index);
        }
        functions[f.name] = {{"iterations", fa.result.iterations}, {"widened_nodes", widened}};
    }
    const RewriteReport guards = guard_eliminate(prog, analysis).report;
    for (const auto& v : guards.definite_violations) {
        text << "definite violation: assert(" << v << ")\n";
    }
    out.violation = !guards.definite_violations.empty();
    out.report = {{"functions", functions}, {"definite_violations", guards.definite_violations}};
    out.text = text.str();
    return out;
}

json rewrite_json(const RewriteReport& r) {
    return {{"singletons_propagated", r.singletons_propagated},
            {"guards_resolved_true", r.guards_resolved_true},
            {"guards_resolved_false", r.guards_resolved_false},
            {"constants_folded", r.constants_folded},
            {"dead_branches_removed", r.dead_branches_removed},
            {"definite_violations", r.definite_violations}};
}

Outcome do_optimize(const Options& o) {
    const Program prog = load(o.input);
    const Rewrite rewrite = optimize_program(prog, config_of(o));
    Outcome out;
    out.program = to_source(rewrite.program);
    out.report = rewrite_json(rewrite.report);
    out.violation = !rewrite.report.definite_violations.empty();
    std::ostringstream text;
    text << out.program;
    for (const auto& [key, value] : out.report.items()) {
        if (value.is_number()) {
            text << "// " << key << ": " << value.get<std::size_t>() << "\n";
        }
    }
    for (const auto& v : rewrite.report.definite_violations) {
        text << "// definite violation: assert(" << v << ")\n";
    }
    out.text = text.str();
    return out;
}

Outcome do_instrument(const Options& o) {
    const Program prog = load(o.input);
    const Instrumentation inst = instrument_program(prog, analyze_program(prog, config_of(o)));
    Outcome out;
    out.program = to_source(inst.program);
    json points = json::array();
    std::ostringstream text;
    text << out.program;
    for (const auto& p : inst.points) {
        points.push_back({{"function", p.function},
                          {"node", p.node.index},
                          {"kind", to_string(p.kind)},
                          {"vars", p.vars},
                          {"emitted", to_source(*p.emitted)}});
        text << "// " << p.function << "#" << p.node.index << " " << to_string(p.kind) << ": "
             << to_source(*p.emitted) << "\n";
    }
    out.report = {{"points", points}};
    out.text = text.str();
    return out;
}

Outcome do_contract(const Options& o) {
    Box box;
    try {
        box = parse_box(o.box);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad --box: ") + e.what());
    }
    const auto vars = box.vars();
    ExprPtr cond;
    try {
        cond = parse_condition(o.constraint, {vars.begin(), vars.end()});
    } catch (const ParseError& e) {
        throw UsageError(std::string("bad --constraint: ") + e.what());
    }
    const AnalysisConfig config = config_of(o);
    const Box result = contract_condition(*cond, true, box, config.arith);
    Outcome out;
    json ranges = json::object();
    for (const auto& v : vars) {
        ranges[v] = result.empty() ? "bottom" : result.at(v).to_string();
    }
    out.report = {{"constraint", to_source(*cond)},
                  {"box_in", box.to_string()},
                  {"box_out", result.to_string()},
                  {"ranges", ranges}};
    out.text = result.to_string() + "\n";
    return out;
}

Outcome do_check(const Options& o) {
    const Program prog = load(o.input);
    const AnalysisConfig config = config_of(o);
    Outcome out;
    std::ostringstream text;
    try {
        const ProgramAnalysis analysis = analyze_program(prog, config);
        const auto violations = check_soundness(prog, analysis);
        const Rewrite optimized = optimize_program(prog, config);
        const EquivalenceResult opt_eq = check_equivalence(prog, optimized.program);
        const Instrumentation inst = instrument_program(prog, analysis);
        const EquivalenceResult inst_eq = check_equivalence(prog, inst.program);

        json sound = json::array();
        for (const auto& v : violations) {
            sound.push_back(v.to_string());
            text << "soundness violation: " << v.to_string() << "\n";
        }
        auto eq_json = [&](const char* name, const EquivalenceResult& r) {
            json j = {{"equivalent", r.equivalent}, {"executions", r.executions}};
            if (!r.equivalent) {
                j["detail"] = r.detail;
                text << name << " changed behavior: " << r.detail << "\n";
            }
            return j;
        };
        out.report = {{"soundness_violations", sound},
                      {"optimize", eq_json("optimize", opt_eq)},
                      {"instrument", eq_json("instrument", inst_eq)}};
        out.violation = !violations.empty() || !opt_eq.equivalent || !inst_eq.equivalent;
    } catch (const OracleError& e) {
        throw UsageError(std::string("cannot enumerate executions: ") + e.what());
    }
    text << (out.violation ? "check: FAILED\n" : "check: clean\n");
    out.program = to_source(prog);
    out.text = text.str();
    return out;
}

void add_knobs(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "Output format")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::text},
                                                                           {"json", Format::json}}));
    cmd->add_option("-o,--output", o.output, "Output file (default stdout)");
    cmd->add_option("--widening-delay", o.widening_delay, "Plain joins at a loop head before widening")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--narrowing-passes", o.narrowing_passes, "Descending passes after stabilization")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--no-interval-arith", o.no_interval_arith, "Extrapolate non-constant arithmetic to top");
    cmd->add_flag("--no-contractors", o.no_contractors, "Prune conditions by comparison only");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interval analysis, contractors and program rewriting for a small imperative language",
                 "minibox"};
    app.require_subcommand(1);
    Options o;

    auto* analyze = app.add_subcommand("analyze", "Dump interval states per CFG node");
    auto* optimize = app.add_subcommand("optimize", "Singleton propagation, guard elimination, constant folding");
    auto* instrument = app.add_subcommand("instrument", "Insert interval invariants as assumptions");
    auto* contract = app.add_subcommand("contract", "Contract a box by a condition");
    auto* check = app.add_subcommand("check", "Validate analysis and rewrites against concrete execution");
    for (auto* cmd : {analyze, optimize, instrument, check}) {
        cmd->add_option("input", o.input, "Program file")->required();
        add_knobs(cmd, o);
    }
    add_knobs(contract, o);
    contract->add_option("--constraint", o.constraint, "Condition, e.g. \"x + y == 5\"")->required();
    contract->add_option("--box", o.box, "Box, e.g. \"x:[0,10], y:[2,4]\"")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    Outcome result;
    try {
        if (contract->parsed()) {
            if (o.no_contractors) {
                throw UsageError("--no-contractors cannot be combined with contract");
            }
            if (o.widening_delay != 2 || o.narrowing_passes != 2) {
                throw UsageError("widening and narrowing knobs do not apply to contract");
            }
            result = do_contract(o);
        } else if (analyze->parsed()) {
            result = do_analyze(o);
        } else if (optimize->parsed()) {
            result = do_optimize(o);
        } else if (instrument->parsed()) {
            result = do_instrument(o);
        } else {
            result = do_check(o);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    std::string rendered;
    if (o.format == Format::json) {
        json doc = {{"program", result.program.empty() ? json(nullptr) : json(result.program)},
                    {"config", config_json(config_of(o))},
                    {"nodes", result.nodes},
                    {"report", result.report}};
        rendered = doc.dump(2) + "\n";
    } else {
        rendered = result.text;
    }
    if (o.output.empty()) {
        out << rendered;
    } else {
        std::ofstream file(o.output);
        if (!file) {
            err << "error: cannot write " << o.output << "\n";
            return exit_usage;
        }
        file << rendered;
    }
    return result.violation ? exit_violation : exit_ok;
}

} // namespace minibox::cli
