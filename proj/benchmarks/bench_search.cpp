#include <benchmark/benchmark.h>

#include "hxplain/benchmarks.hpp"
#include "hxplain/explainer.hpp"
#include "hxplain/graph.hpp"

using namespace hxplain;

namespace {

PlanningProblem model(const std::string& family)
{
    return generate_benchmark(BenchmarkSpec{family, {}}).problem;
}

} // namespace

static void BM_EnumerateRover(benchmark::State& st)
{
    auto p = model("rover");
    LocGraph g(p.automaton);
    for (auto _ : st) {
        EnumerateOptions o;
        std::size_t n = for_each_path(g, p.init().location, p.goal.location, p.depth, o,
                                      [](const AbstractPath&) { return true; });
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_EnumerateRover)->Unit(benchmark::kMillisecond);

static void BM_Articulation(benchmark::State& st)
{
    auto p = model("city");
    LocGraph g(p.automaton);
    for (auto _ : st)
        benchmark::DoNotOptimize(disconnecting_articulation_points(g, p.init().location, p.goal.location));
}
BENCHMARK(BM_Articulation);

static void BM_Explain(benchmark::State& st, const char* family)
{
    auto p = model(family);
    for (auto _ : st)
        benchmark::DoNotOptimize(explain_unsolvability(p));
}
BENCHMARK_CAPTURE(BM_Explain, water_level, "water_level")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Explain, nrs, "nrs")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Explain, rover, "rover")->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_MAIN();
