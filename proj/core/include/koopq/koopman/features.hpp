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

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

namespace koopq::koopman {

inline constexpr std::size_t kFeatureCount = 6;
using FeatureArray = std::array<double, kFeatureCount>;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames{
    "f_mean", "f_std", "f_min", "f_max", "f_skew", "f_kurt"};

/// Spread below which skewness and kurtosis are reported as 0.
inline constexpr double kZeroVarianceTol = 1e-12;

/// Population mean, std, min, max, skewness, and excess kurtosis.
FeatureArray extract_features(std::span<const double> residual_norms);

struct FeatureVector {
    FeatureArray raw{};
    FeatureArray scaled{};
};

/// Min-max map onto [0, pi], fit per component on training features.
class FeatureScaler {
  public:
    FeatureScaler() = default;
    FeatureScaler(const FeatureArray &lo, const FeatureArray &hi);

    static FeatureScaler fit(std::span<const FeatureArray> train);

    /// Out-of-range values clamp; a degenerate column (hi == lo) maps to pi/2.
    [[nodiscard]] FeatureArray apply(const FeatureArray &raw) const;
    [[nodiscard]] FeatureVector transform(const FeatureArray &raw) const { return {raw, apply(raw)}; }

    [[nodiscard]] const FeatureArray &lo() const noexcept { return lo_; }
    [[nodiscard]] const FeatureArray &hi() const noexcept { return hi_; }

    bool operator==(const FeatureScaler &) const = default;

  private:
    FeatureArray lo_{};
    FeatureArray hi_{};
};

} // namespace koopq::koopman
