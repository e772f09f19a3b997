#include <benchmark/benchmark.h>

#include "hxplain/feasibility.hpp"
#include "hxplain/subsequence.hpp"

#include <random>

#ifdef HXPLAIN_BENCH_RANDOM
#include "oracles.hpp"
#endif

using namespace hxplain;

namespace {

std::vector<SymbolSeq> random_seqs(std::mt19937& rng, int count, int len, int alphabet)
{
    std::uniform_int_distribution<int> sym(0, alphabet - 1);
    std::vector<SymbolSeq> out(count);
    for (auto& s : out)
        for (int i = 0; i < len; ++i)
            s.push_back("s" + std::to_string(sym(rng)));
    return out;
}

} // namespace

#ifdef HXPLAIN_BENCH_RANDOM
static void BM_Simplex(benchmark::State& st)
{
    std::mt19937 rng(7);
    std::vector<ConstraintSystem> systems;
    for (int i = 0; i < 32; ++i)
        systems.push_back(oracle::random_system(rng, static_cast<int>(st.range(0)), static_cast<int>(st.range(1))));
    std::size_t i = 0;
    for (auto _ : st)
        benchmark::DoNotOptimize(solve_feasibility(systems[i++ % systems.size()]));
}
BENCHMARK(BM_Simplex)->Args({3, 6})->Args({6, 12})->Args({10, 24});

static void BM_FourierMotzkin(benchmark::State& st)
{
    std::mt19937 rng(7);
    std::vector<ConstraintSystem> systems;
    for (int i = 0; i < 32; ++i)
        systems.push_back(oracle::random_system(rng, static_cast<int>(st.range(0)), static_cast<int>(st.range(1))));
    std::size_t i = 0;
    for (auto _ : st)
        benchmark::DoNotOptimize(fm_eliminate_all(systems[i++ % systems.size()]));
}
BENCHMARK(BM_FourierMotzkin)->Args({3, 6})->Args({4, 8});

static void BM_DeletionFilter(benchmark::State& st)
{
    std::mt19937 rng(11);
    std::vector<ConstraintSystem> systems;
    while (systems.size() < 16) {
        auto cs = oracle::random_system(rng, 4, 10);
        if (!is_feasible(solve_feasibility(cs)))
            systems.push_back(std::move(cs));
    }
    std::size_t i = 0;
    for (auto _ : st)
        benchmark::DoNotOptimize(deletion_filter_iis(systems[i++ % systems.size()]));
}
BENCHMARK(BM_DeletionFilter);
#endif

static void BM_LcsPair(benchmark::State& st)
{
    std::mt19937 rng(3);
    auto seqs = random_seqs(rng, 2, static_cast<int>(st.range(0)), 8);
    for (auto _ : st)
        benchmark::DoNotOptimize(lcs_pair(seqs[0], seqs[1]));
}
BENCHMARK(BM_LcsPair)->Arg(16)->Arg(64)->Arg(256);

static void BM_LcsExact(benchmark::State& st)
{
    std::mt19937 rng(3);
    auto seqs = random_seqs(rng, static_cast<int>(st.range(0)), 10, 5);
    for (auto _ : st)
        benchmark::DoNotOptimize(lcs_multi_exact(seqs));
}
BENCHMARK(BM_LcsExact)->Arg(2)->Arg(3)->Arg(4);

static void BM_LcsFold(benchmark::State& st)
{
    std::mt19937 rng(3);
    auto seqs = random_seqs(rng, static_cast<int>(st.range(0)), 15, 6);
    for (auto _ : st)
        benchmark::DoNotOptimize(common_subsequence_fold(seqs));
}
BENCHMARK(BM_LcsFold)->Arg(8)->Arg(64)->Arg(256);
