#include <benchmark/benchmark.h>

#include <random>

#include "isg/best_response.hpp"
#include "isg/canned.hpp"
#include "isg/equilibrium.hpp"
#include "isg/evaluate.hpp"
#include "isg/generator.hpp"
#include "isg/ilp.hpp"
#include "isg/welfare.hpp"

using namespace isg;

namespace {

Instance game(std::size_t k, std::size_t q, RewardMode mode, std::uint64_t seed = 7) {
    RandomInstanceParams p;
    p.players = k;
    p.services_per_player = q;
    p.reward_mode = mode;
    p.seed = seed;
    return random_instance(p);
}

Profile shuffled(const Instance& inst, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::size_t>> orders = Profile::identity(inst).orders();
    for (auto& order : orders) std::shuffle(order.begin(), order.end(), rng);
    return Profile(std::move(orders));
}

}  // namespace

static void BM_Evaluate(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const Instance inst = game(k, 8, RewardMode::Range);
    const Profile profile = shuffled(inst, 1);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(inst, profile));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(inst.service_count()));
}
BENCHMARK(BM_Evaluate)->Arg(2)->Arg(8)->Arg(32);

// Polynomial in q; the exact search below is not.
static void BM_GreedyBestResponse(benchmark::State& state) {
    const auto q = static_cast<std::size_t>(state.range(0));
    const Instance inst = game(4, q, RewardMode::Uniform);
    const Profile profile = shuffled(inst, 2);
    for (auto _ : state) benchmark::DoNotOptimize(greedy_best_response(inst, profile, 0));
}
BENCHMARK(BM_GreedyBestResponse)->RangeMultiplier(2)->Range(4, 64);

static void BM_ExactBestResponse(benchmark::State& state) {
    const auto q = static_cast<std::size_t>(state.range(0));
    const Instance inst = game(3, q, RewardMode::Range);
    const Profile profile = shuffled(inst, 3);
    SearchLimits limits;
    limits.cap = UINT64_MAX;
    for (auto _ : state) benchmark::DoNotOptimize(exact_best_response(inst, profile, 0, limits));
}
BENCHMARK(BM_ExactBestResponse)->DenseRange(4, 9)->Unit(benchmark::kMicrosecond);

static void BM_ConstructPne(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const Instance inst = game(k, 10, RewardMode::Uniform);
    for (auto _ : state) benchmark::DoNotOptimize(construct_pne_uniform(inst));
}
BENCHMARK(BM_ConstructPne)->RangeMultiplier(2)->Range(2, 32);

static void BM_EnumerateEquilibria(benchmark::State& state) {
    const Instance inst = canned("poa_family", {4, 4}).instance;
    SearchLimits limits;
    limits.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_equilibria(inst, limits));
    state.SetItemsProcessed(state.iterations() * 331776);
}
BENCHMARK(BM_EnumerateEquilibria)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_WelfareBranchAndBound(benchmark::State& state) {
    const auto q = static_cast<std::size_t>(state.range(0));
    const Instance inst = game(3, q, RewardMode::Range, 11);
    SearchLimits limits;
    limits.cap = UINT64_MAX;
    for (auto _ : state) benchmark::DoNotOptimize(maximize_welfare_exact(inst, limits));
}
BENCHMARK(BM_WelfareBranchAndBound)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_WelfareBruteForce(benchmark::State& state) {
    const auto q = static_cast<std::size_t>(state.range(0));
    const Instance inst = game(3, q, RewardMode::Range, 11);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_welfare(inst));
}
BENCHMARK(BM_WelfareBruteForce)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

static void BM_EmitLp(benchmark::State& state) {
    const auto q = static_cast<std::size_t>(state.range(0));
    const Instance inst = game(4, q, RewardMode::Range);
    for (auto _ : state) benchmark::DoNotOptimize(emit_lp(inst));
}
BENCHMARK(BM_EmitLp)->RangeMultiplier(2)->Range(4, 32);

static void BM_RandomInstance(benchmark::State& state) {
    RandomInstanceParams p;
    p.players = static_cast<std::size_t>(state.range(0));
    p.services_per_player = 10;
    p.reward_mode = RewardMode::Range;
    for (auto _ : state) {
        ++p.seed;
        benchmark::DoNotOptimize(random_instance(p));
    }
}
BENCHMARK(BM_RandomInstance)->Arg(4)->Arg(64);

BENCHMARK_MAIN();
