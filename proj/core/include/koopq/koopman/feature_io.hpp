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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "koopq/koopman/features.hpp"

namespace koopq::koopman {

inline constexpr std::string_view kFeatureCsvHeader =
    "shot_id,channel_id,label,f_mean,f_std,f_min,f_max,f_skew,f_kurt";

struct FeatureRow {
    std::int64_t shot_id = 0;
    std::string channel_id;
    int label = 1;
    FeatureArray raw{};

    bool operator==(const FeatureRow &) const = default;
};

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

void write_feature_csv(const std::filesystem::path &path, const std::vector<FeatureRow> &rows);
std::vector<FeatureRow> read_feature_csv(const std::filesystem::path &path);

std::string scaler_to_json(const FeatureScaler &scaler);
FeatureScaler scaler_from_json(std::string_view text);
void write_scaler(const std::filesystem::path &path, const FeatureScaler &scaler);
FeatureScaler read_scaler(const std::filesystem::path &path);

} // namespace koopq::koopman
