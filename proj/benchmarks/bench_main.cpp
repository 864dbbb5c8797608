#include <benchmark/benchmark.h>

#include "fqs/bipoly.hpp"
#include "fqs/conrad.hpp"
#include "fqs/curve.hpp"
#include "fqs/pencil.hpp"
#include "fqs/schinzel.hpp"

using namespace fqs;

namespace {

BiPoly fermat(const FieldRef& F) {
    BiPoly f(F);
    f.add_term(3, 0, F->one());
    f.add_term(0, 3, F->one());
    f.add_term(0, 0, F->one());
    return f;
}

BiPoly conic(const FieldRef& F) {
    BiPoly f(F);
    f.add_term(0, 2, F->one());
    f.add_term(0, 1, F->one());
    f.add_term(1, 0, F->from_int(-1));
    return f;
}

void BM_FieldMul(benchmark::State& state) {
    const auto F = Field::of_order(static_cast<std::uint64_t>(state.range(0)));
    Fe a = F->generator(), acc = F->one();
    for (auto _ : state) {
        acc = F->mul(F->add(acc, a), a);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_FieldMul)->Arg(331)->Arg(49)->Arg(1 << 10)->Arg(3 * 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3 * 3);

void BM_Factor(benchmark::State& state) {
    const auto F = Field::of_order(static_cast<std::uint64_t>(state.range(0)));
    Rng rng(kDefaultSeed);
    std::vector<Poly> polys;
    while (polys.size() < 64) {
        Poly f = random_poly(F, static_cast<unsigned>(state.range(1)), rng);
        if (f.degree() >= 1) polys.push_back(std::move(f));
    }
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(factor(polys[i++ % polys.size()]));
}
BENCHMARK(BM_Factor)->Args({2, 30})->Args({9, 30})->Args({49, 30})->Args({331, 30});

void BM_IsIrreducible(benchmark::State& state) {
    const auto F = Field::of_order(static_cast<std::uint64_t>(state.range(0)));
    Rng rng(kDefaultSeed);
    std::vector<Poly> polys;
    while (polys.size() < 64) {
        Poly f = random_poly(F, 6, rng);
        if (f.degree() >= 1) polys.push_back(std::move(f));
    }
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(is_irreducible(polys[i++ % polys.size()]));
}
BENCHMARK(BM_IsIrreducible)->Arg(7)->Arg(9);

void BM_Smoothness(benchmark::State& state) {
    const auto F = Field::make(7, 1);
    const BiPoly f = fermat(F);
    for (auto _ : state) benchmark::DoNotOptimize(is_smooth(f));
}
BENCHMARK(BM_Smoothness);

void BM_PencilHistogram(benchmark::State& state) {
    const auto F = Field::make(7, static_cast<unsigned>(state.range(0)));
    const BiPoly f = fermat(Field::make(7, 1));
    const auto M = find_generic_points({f}, F, 1, 100000, kDefaultSeed).front();
    for (auto _ : state) {
        const Pencil pd = pencil_discriminant(f, M, F);
        benchmark::DoNotOptimize(pattern_histogram({pd}));
    }
}
BENCHMARK(BM_PencilHistogram)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Count(benchmark::State& state) {
    const auto F = Field::make(static_cast<std::uint64_t>(state.range(0)), 1);
    const BiPoly f = state.range(1) == 2 ? conic(F) : fermat(F);
    CountOptions opts;
    opts.engine = state.range(2) ? CountEngine::RootSieve : CountEngine::Generic;
    for (auto _ : state) benchmark::DoNotOptimize(count_irreducible_pairs(f, F, opts));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(F->q() * F->q()));
}
BENCHMARK(BM_Count)
    ->Args({331, 2, 0})
    ->Args({331, 2, 1})
    ->Args({331, 3, 0})
    ->Args({331, 3, 1})
    ->Args({1009, 3, 1})
    ->Unit(benchmark::kMillisecond);

void BM_Search(benchmark::State& state) {
    const auto F = Field::make(7, 1);
    const std::vector<BiPoly> curves{conic(F), fermat(F)};
    for (auto _ : state) benchmark::DoNotOptimize(find_specialization(curves, 3));
}
BENCHMARK(BM_Search)->Unit(benchmark::kMillisecond);

void BM_Conrad(benchmark::State& state) {
    const ConradInstance inst = conrad_polynomial(3);
    for (auto _ : state) benchmark::DoNotOptimize(verify_conrad(inst, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_Conrad)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
