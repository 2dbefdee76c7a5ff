#include "hms/ainf_fixtures.hpp"
#include "hms/fukaya.hpp"
#include "hms/linalg.hpp"
#include "hms/mirror.hpp"
#include "hms/verify.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

hms::TropicalModel hexagon_model() {
    hms::WeightedPoints wp{{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}},
                           {0, 1, 1, 1, 1, 1, 1}};
    return hms::build_model(wp);
}

void BM_BuildModel(benchmark::State& state) {
    hms::WeightedPoints wp{{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}},
                           {0, 1, 1, 1, 1, 1, 1}};
    for (auto _ : state) benchmark::DoNotOptimize(hms::build_model(wp));
}
BENCHMARK(BM_BuildModel);

void BM_CohomologyHom(benchmark::State& state) {
    auto m = hexagon_model();
    for (auto _ : state) {
        auto h = hms::cohomology_hom_basis(m, {0, 0}, {0, 2}, 8);
        benchmark::DoNotOptimize(h.dims(8));
    }
}
BENCHMARK(BM_CohomologyHom);

void BM_GlobalExt(benchmark::State& state) {
    auto m = hexagon_model();
    for (auto _ : state)
        benchmark::DoNotOptimize(hms::global_ext(m, {0, 0}, {0, 2}, 8).dims());
}
BENCHMARK(BM_GlobalExt);

void BM_CechComplex(benchmark::State& state) {
    auto m = hexagon_model();
    for (auto _ : state)
        benchmark::DoNotOptimize(hms::cech_total_complex(m, {0, 0}, {0, 2}, 8).dims());
}
BENCHMARK(BM_CechComplex);

void BM_KernelBasisRational(benchmark::State& state) {
    std::mt19937_64 rng(1234);
    hms::SparseMatrix<hms::Rat> mat(40, 60);
    for (std::size_t r = 0; r < mat.rows; ++r)
        for (std::size_t c = 0; c < mat.cols; ++c)
            if (rng() % 4 == 0)
                mat.set(r, c, hms::Rat(static_cast<long long>(rng() % 7) - 3));
    for (auto _ : state) benchmark::DoNotOptimize(hms::kernel_basis(mat));
}
BENCHMARK(BM_KernelBasisRational);

void BM_LimitCategory(benchmark::State& state) {
    auto fx = hms::ainf::random_gauge_fixture(9, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(hms::ainf::limit_category(fx->twisted, 4));
}
BENCHMARK(BM_LimitCategory);

void BM_VerifyHexagon(benchmark::State& state) {
    auto m = hexagon_model();
    hms::InputOptions opts;
    opts.truncation = 6;
    opts.k_window = 1;
    opts.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(hms::verify_model(m, opts));
}
BENCHMARK(BM_VerifyHexagon);

}  // namespace

BENCHMARK_MAIN();
