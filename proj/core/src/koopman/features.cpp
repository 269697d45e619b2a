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
#include "koopq/koopman/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "koopq/errors.hpp"

namespace koopq::koopman {

FeatureArray extract_features(std::span<const double> residual_norms) {
    if (residual_norms.empty()) {
        throw ValidationError("extract_features: empty residual sequence");
    }
    const double n = static_cast<double>(residual_norms.size());
    double sum = 0.0;
    double lo = residual_norms[0];
    double hi = residual_norms[0];
    for (double x : residual_norms) {
        sum += x;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    const double mean = sum / n;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double x : residual_norms) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const double sd = std::sqrt(m2);
    double skew = 0.0;
    double kurt = 0.0;
    if (sd >= kZeroVarianceTol) {
        skew = m3 / (sd * sd * sd);
        kurt = m4 / (m2 * m2) - 3.0;
    }
    return {mean, sd, lo, hi, skew, kurt};
}

FeatureScaler::FeatureScaler(const FeatureArray &lo, const FeatureArray &hi) : lo_(lo), hi_(hi) {
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (!(lo_[i] <= hi_[i])) {
            throw ValidationError("scaler bounds must satisfy lo <= hi");
        }
    }
}

FeatureScaler FeatureScaler::fit(std::span<const FeatureArray> train) {
    if (train.empty()) throw ValidationError("FeatureScaler::fit: no training features");
    FeatureArray lo = train.front();
    FeatureArray hi = train.front();
    for (const auto &f : train) {
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            lo[i] = std::min(lo[i], f[i]);
            hi[i] = std::max(hi[i], f[i]);
        }
    }
    return {lo, hi};
}

FeatureArray FeatureScaler::apply(const FeatureArray &raw) const {
    FeatureArray out{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        const double width = hi_[i] - lo_[i];
        if (width <= 0.0) {
            out[i] = std::numbers::pi / 2.0;
            continue;
        }
        const double u = std::clamp((raw[i] - lo_[i]) / width, 0.0, 1.0);
        out[i] = u * std::numbers::pi;
    }
    return out;
}

} // namespace koopq::koopman
