#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "qlc/assess/functional.hpp"
#include "qlc/gen/generator.hpp"
#include "qlc/interp/interpreter.hpp"
#include "qlc/lang/parser.hpp"
#include "qlc/stats/mann_whitney.hpp"

namespace {

std::string read_fixture(const std::string& relative)
{
    std::ifstream in(std::string(QLC_SOURCE_DIR) + "/" + relative);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

const std::string& f1()
{
    static const std::string text = read_fixture("fixtures/f1.py");
    return text;
}

void BM_Parse(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(qlc::lang::parse_source(f1()));
    }
}
BENCHMARK(BM_Parse);

void BM_RunF1(benchmark::State& state)
{
    const qlc::lang::Ast ast = qlc::lang::parse_source(f1());
    std::vector<std::string> inputs;
    for (int i = 0; i < state.range(0); ++i) {
        inputs.push_back(i % 5 == 0 ? "abc" : std::to_string(i % 13));
    }
    inputs.push_back("-999");
    for (auto _ : state) {
        benchmark::DoNotOptimize(qlc::interp::call_function(ast, "rain", {}, qlc::interp::IoScript{inputs}, 1'000'000));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunF1)->Arg(10)->Arg(1000);

void BM_FunctionalSuite(benchmark::State& state)
{
    const qlc::assess::ExerciseSpec spec = qlc::assess::load_exercise(std::string(QLC_SOURCE_DIR) +
                                                                     "/exercises/rainfall.json");
    for (auto _ : state) {
        benchmark::DoNotOptimize(qlc::assess::run_functional_tests(f1(), spec));
    }
}
BENCHMARK(BM_FunctionalSuite);

void BM_Generate(benchmark::State& state)
{
    const qlc::lang::Ast ast = qlc::lang::parse_source(f1());
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qlc::gen::generate_for_source(ast, f1(), seed++));
    }
}
BENCHMARK(BM_Generate);

void BM_MannWhitney(benchmark::State& state)
{
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> points(0, 100);
    std::vector<double> t(static_cast<std::size_t>(state.range(0)));
    std::vector<double> f(static_cast<std::size_t>(state.range(0)) / 5 + 1);
    for (double& x : t) {
        x = points(rng);
    }
    for (double& x : f) {
        x = points(rng);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(qlc::stats::mann_whitney_u(t, f));
    }
}
BENCHMARK(BM_MannWhitney)->Arg(8)->Arg(300);

} // namespace

BENCHMARK_MAIN();
