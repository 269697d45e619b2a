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
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "koopq/signal/record.hpp"

namespace koopq::signal {

inline constexpr double kStandardizeEps = 1e-6;

/// Z-score with population std and an epsilon-guarded denominator.
DischargeRecord standardize(const DischargeRecord &record);
std::vector<double> standardize_samples(const std::vector<double> &samples);

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Plain (unstratified) seeded random partition of 0..n-1 with
/// |train| = round(train_fraction * n). Both index lists are sorted.
SplitIndices split_indices(std::size_t n, double train_fraction, std::uint64_t seed);

struct DatasetSplit {
    std::vector<DischargeRecord> train;
    std::vector<DischargeRecord> test;
};

DatasetSplit split_dataset(const Dataset &dataset);

} // namespace koopq::signal
