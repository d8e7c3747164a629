#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "minibox/absint.hpp"
#include "minibox/contractor.hpp"
#include "minibox/instrument.hpp"
#include "minibox/optimize.hpp"
#include "minibox/parser.hpp"

namespace {

using namespace minibox;

Program corpus(const char* name) {
    std::ifstream in(std::string(MINIBOX_CORPUS_DIR) + "/" + name);
    std::stringstream s;
    s << in.rdbuf();
    return parse_program(s.str());
}

void interval_mul(benchmark::State& state) {
    const Interval a{ExtInt(-7), ExtInt(12)};
    const Interval b{ExtInt(-3), ExtInt(5)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(interval_binop(ArithOp::mul, a, b));
    }
}
BENCHMARK(interval_mul);

void hc4_linear(benchmark::State& state) {
    const Box box = parse_box("x:[0,100], y:[0,100], z:[0,100]");
    const ExprPtr c = parse_condition("x + 2 * y - z == 50", {"x", "y", "z"});
    for (auto _ : state) {
        benchmark::DoNotOptimize(contract_condition(*c, true, box));
    }
}
BENCHMARK(hc4_linear);

void hc4_exact_nonlinear(benchmark::State& state) {
    const Box box = parse_box("x:[-10,10], y:[-10,10], z:[-10,10]");
    const ExprPtr c = parse_condition("x * y + z == 7", {"x", "y", "z"});
    for (auto _ : state) {
        benchmark::DoNotOptimize(contract_condition(*c, true, box));
    }
}
BENCHMARK(hc4_exact_nonlinear);

void analyze_corpus(benchmark::State& state, const char* name, bool contractors) {
    const Program prog = corpus(name);
    AnalysisConfig config;
    config.use_contractors = contractors;
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze_program(prog, config));
    }
}
BENCHMARK_CAPTURE(analyze_corpus, nested_on, "03_nested_loops.mini", true);
BENCHMARK_CAPTURE(analyze_corpus, nested_off, "03_nested_loops.mini", false);

void optimize_corpus(benchmark::State& state) {
    const Program prog = corpus("03_nested_loops.mini");
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize_program(prog));
    }
}
BENCHMARK(optimize_corpus);

void instrument_corpus(benchmark::State& state) {
    const Program prog = corpus("03_nested_loops.mini");
    const ProgramAnalysis analysis = analyze_program(prog);
    for (auto _ : state) {
        benchmark::DoNotOptimize(instrument_program(prog, analysis));
    }
}
BENCHMARK(instrument_corpus);

} // namespace

BENCHMARK_MAIN();
