// Copyright 2026 The koopq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "koopq/koopman/features.hpp"
#include "koopq/koopman/generator.hpp"
#include "koopq/koopman/hankel.hpp"

namespace {

using namespace koopq::koopman;

std::vector<double> noise_series(std::size_t n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> d;
    std::vector<double> x(n);
    for (auto &v : x) v = d(rng);
    return x;
}

void BM_BuildHankel(benchmark::State &state) {
    const auto x = noise_series(static_cast<std::size_t>(state.range(0)));
    const HankelConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(build_hankel(x, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildHankel)->Arg(2000)->Arg(20000);

void BM_Reduce(benchmark::State &state) {
    const auto h = build_hankel(noise_series(static_cast<std::size_t>(state.range(0))), {});
    for (auto _ : state) benchmark::DoNotOptimize(reduce(h, 11));
}
BENCHMARK(BM_Reduce)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_FitGenerator(benchmark::State &state) {
    const auto red = reduce(build_hankel(noise_series(static_cast<std::size_t>(state.range(0))), {}), 11);
    for (auto _ : state) benchmark::DoNotOptimize(fit_generator(red.reduced_coords, 1e-4));
}
BENCHMARK(BM_FitGenerator)->Arg(2000)->Arg(20000)->Unit(benchmark::kMicrosecond);

void BM_DecomposeAndFeatures(benchmark::State &state) {
    const auto x = noise_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const auto d = decompose(x, 1e-4, {});
        const Eigen::VectorXd &r = d.residual_norms;
        benchmark::DoNotOptimize(extract_features({r.data(), static_cast<std::size_t>(r.size())}));
    }
}
BENCHMARK(BM_DecomposeAndFeatures)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

} // namespace
