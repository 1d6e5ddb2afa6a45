#include "wittforge/levels.hpp"
#include "wittforge/parser.hpp"
#include "wittforge/pfister.hpp"
#include "wittforge/valuesets.hpp"

#include <benchmark/benchmark.h>

using namespace wittforge;

namespace {

const FieldDesc Q = FieldDesc::rationals();

void BM_WittIndexRationals(benchmark::State& state) {
    std::vector<Form> corpus;
    auto classes = sample_square_classes(Q, 12);
    u64 seed = 1;
    for (int i = 0; i < 64; ++i) {
        std::vector<Coeff> cs;
        for (i64 d = 0; d < state.range(0); ++d) {
            seed = seed * 6364136223846793005ull + 1442695040888963407ull;
            cs.push_back(classes[(seed >> 33) % classes.size()]);
        }
        corpus.push_back(Form::make(Q, cs));
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(witt_index(corpus[i]));
        i = (i + 1) % corpus.size();
    }
}
BENCHMARK(BM_WittIndexRationals)->Arg(4)->Arg(8)->Arg(16);

void BM_WittKernelRationals(benchmark::State& state) {
    Form q = Form::of_ints(Q, {1, 2, -3, 5, -7, 6});
    for (auto _ : state) {
        benchmark::DoNotOptimize(witt_decomposition(q).kernel.dim());
    }
}
BENCHMARK(BM_WittKernelRationals);

void BM_SublevelTower(benchmark::State& state) {
    FieldDesc L = FieldDesc::padics(2).laurent();
    Form q = Form::make(L, {canonical_int(L, 1), canonical_int(L, -5, 1, 1),
                            canonical_int(L, 2), canonical_int(L, 10, 1, 1)});
    for (auto _ : state) {
        benchmark::DoNotOptimize(sublevel(q).value);
    }
}
BENCHMARK(BM_SublevelTower);

void BM_I1NeighborDetection(benchmark::State& state) {
    Form q = repeat(6, Form::of_ints(Q, {1}));
    for (auto _ : state) {
        benchmark::DoNotOptimize(i1_interval(q).lo);
    }
}
BENCHMARK(BM_I1NeighborDetection);

void BM_AdmissibleLevelsHorizon(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(admissible_levels(3, std::nullopt, u64{1} << state.range(0)));
    }
}
BENCHMARK(BM_AdmissibleLevelsHorizon)->Arg(10)->Arg(20);

void BM_ParseRoundTrip(benchmark::State& state) {
    std::string src = "2 x (pfister(1,1) (*) <1,1,1,7>) (+) -3 * <1,2,3,6>";
    for (auto _ : state) {
        benchmark::DoNotOptimize(print_expr(*parse_form_expr(src)));
    }
}
BENCHMARK(BM_ParseRoundTrip);

}  // namespace

BENCHMARK_MAIN();
