#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "grfkit/grf.hpp"
#include "grfkit/maskfusion.hpp"
#include "grfkit/metrics.hpp"
#include "grfkit/spectrum.hpp"
#include "grfkit/types.hpp"

namespace {

using namespace grfkit;

grf::GrfParams params_for(int width, int height, int i, double f) {
    grf::GrfParams p;
    p.seed = 76539635u;
    p.i = i;
    p.f = f;
    p.width = width;
    p.height = height;
    return p;
}

void bm_synthesize_field_256(benchmark::State& state) {
    const auto p = params_for(256, 256, 2, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(grf::synthesize_field(p));
    }
    state.SetItemsProcessed(state.iterations() * 256 * 256);
}
BENCHMARK(bm_synthesize_field_256);

void bm_synthesize_field_640x480(benchmark::State& state) {
    const auto p = params_for(640, 480, 2, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(grf::synthesize_field(p));
    }
    state.SetItemsProcessed(state.iterations() * 640 * 480);
}
BENCHMARK(bm_synthesize_field_640x480);

void bm_field_to_greyscale(benchmark::State& state) {
    const auto field = grf::synthesize_field(params_for(640, 480, 2, 0.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(grf::field_to_greyscale(field));
    }
    state.SetItemsProcessed(state.iterations() * 640 * 480);
}
BENCHMARK(bm_field_to_greyscale);

void bm_radial_power_spectrum(benchmark::State& state) {
    const auto field = grf::synthesize_field(params_for(256, 256, 2, 0.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(grf::radial_power_spectrum(field, 128));
    }
}
BENCHMARK(bm_radial_power_spectrum);

BinaryMask random_mask(int width, int height, std::uint32_t seed) {
    BinaryMask mask;
    mask.width = width;
    mask.height = height;
    mask.bits.resize(static_cast<std::size_t>(width) * height);
    std::mt19937 gen(seed);
    for (auto& b : mask.bits) b = (gen() & 7u) == 0 ? 1 : 0;
    return mask;
}

void bm_squared_distance_transform_512(benchmark::State& state) {
    const auto mask = random_mask(512, 512, 99u);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mask::squared_distance_transform(mask));
    }
    state.SetItemsProcessed(state.iterations() * 512 * 512);
}
BENCHMARK(bm_squared_distance_transform_512);

void bm_average_merge_sdf(benchmark::State& state) {
    std::vector<BinaryMask> masks;
    for (std::uint32_t s = 1; s <= 3; ++s) masks.push_back(random_mask(256, 256, s));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mask::average_merge(masks, mask::MergeMode::sdf_mean));
    }
}
BENCHMARK(bm_average_merge_sdf);

void bm_confusion_counts(benchmark::State& state) {
    const auto pred = random_mask(512, 512, 7u);
    const auto gt = random_mask(512, 512, 8u);
    for (auto _ : state) {
        benchmark::DoNotOptimize(metrics::confusion(pred, gt));
    }
    state.SetItemsProcessed(state.iterations() * 512 * 512);
}
BENCHMARK(bm_confusion_counts);

} // namespace

BENCHMARK_MAIN();
