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
#include <numbers>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "koopq/model/mln.hpp"
#include "koopq/model/pqnn.hpp"
#include "koopq/qsim/unitary.hpp"

namespace {

using namespace koopq;

std::vector<koopman::FeatureArray> random_batch(std::size_t n, std::vector<int> &labels) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
    std::vector<koopman::FeatureArray> x(n);
    labels.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto &v : x[i]) v = u(rng);
        labels[i] = static_cast<int>(i % 2);
    }
    return x;
}

void BM_BuildUnitary(benchmark::State &state) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> d(0.0, 0.5);
    const int n = static_cast<int>(state.range(0));
    qsim::UnitaryParams p{n, std::vector<double>(qsim::UnitaryParams::count(n))};
    for (auto &t : p.theta) t = d(rng);
    for (auto _ : state) benchmark::DoNotOptimize(qsim::build_unitary(p));
}
BENCHMARK(BM_BuildUnitary)->DenseRange(1, 5);

void BM_CircuitGradient(benchmark::State &state) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> d(0.0, 0.5);
    qsim::UnitaryParams p{3, std::vector<double>(64)};
    for (auto &t : p.theta) t = d(rng);
    const std::vector<double> angles{0.3, 1.2, 2.5};
    const std::vector<double> w{1.0, -0.5, 0.25};
    for (auto _ : state) benchmark::DoNotOptimize(qsim::gradient(p, angles, w));
}
BENCHMARK(BM_CircuitGradient);

void BM_PqnnForward(benchmark::State &state) {
    std::vector<int> y;
    const auto x = random_batch(static_cast<std::size_t>(state.range(0)), y);
    const auto m = model::PqnnModel::init(1, {});
    for (auto _ : state) benchmark::DoNotOptimize(m.batch_logits(x));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PqnnForward)->Arg(64)->Arg(1024);

void BM_PqnnBatchGradient(benchmark::State &state) {
    std::vector<int> y;
    const auto x = random_batch(64, y);
    const auto m = model::PqnnModel::init(1, {});
    for (auto _ : state) benchmark::DoNotOptimize(m.batch_loss_gradient(x, y));
}
BENCHMARK(BM_PqnnBatchGradient)->Unit(benchmark::kMillisecond);

void BM_MlnBatchGradient(benchmark::State &state) {
    std::vector<int> y;
    const auto x = random_batch(64, y);
    const auto m = model::MlnModel::init(1);
    for (auto _ : state) benchmark::DoNotOptimize(m.batch_loss_gradient(x, y));
}
BENCHMARK(BM_MlnBatchGradient)->Unit(benchmark::kMicrosecond);

} // namespace
