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

#include <cstdint>
#include <string>
#include <vector>

namespace koopq::signal {

inline constexpr int kLabelAnomaly = 0;
inline constexpr int kLabelNormal = 1;

/// One labeled channel time series.
struct DischargeRecord {
    std::int64_t shot_id = 0;
    std::string channel_id;
    double dt = 1.0; ///< seconds per sample
    std::vector<double> samples;
    int label = kLabelNormal;

    bool operator==(const DischargeRecord &) const = default;
};

struct Dataset {
    std::vector<DischargeRecord> records;
    std::uint64_t split_seed = 0;
    double train_fraction = 0.7;
};

} // namespace koopq::signal
