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
#include "koopq/signal/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "koopq/errors.hpp"

namespace koopq::signal {

std::vector<double> standardize_samples(const std::vector<double> &samples) {
    if (samples.size() < 2) {
        throw ValidationError("standardize needs at least 2 samples, got " +
                              std::to_string(samples.size()));
    }
    const double n = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : samples) {
        ss += (x - mean) * (x - mean);
    }
    const double denom = std::sqrt(ss / n) + kStandardizeEps;
    std::vector<double> out(samples.size());
    std::transform(samples.begin(), samples.end(), out.begin(),
                   [&](double x) { return (x - mean) / denom; });
    return out;
}

DischargeRecord standardize(const DischargeRecord &record) {
    DischargeRecord out = record;
    out.samples = standardize_samples(record.samples);
    return out;
}

SplitIndices split_indices(std::size_t n, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw ValidationError("train_fraction must lie in (0, 1)");
    }
    if (n < 2) {
        throw ValidationError("split needs at least 2 records, got " + std::to_string(n));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
    SplitIndices split;
    split.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

DatasetSplit split_dataset(const Dataset &dataset) {
    auto idx = split_indices(dataset.records.size(), dataset.train_fraction, dataset.split_seed);
    DatasetSplit out;
    out.train.reserve(idx.train.size());
    out.test.reserve(idx.test.size());
    for (auto i : idx.train) {
        out.train.push_back(dataset.records[i]);
    }
    for (auto i : idx.test) {
        out.test.push_back(dataset.records[i]);
    }
    return out;
}

} // namespace koopq::signal
