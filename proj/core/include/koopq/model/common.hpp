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
#include <vector>

#include "koopq/koopman/features.hpp"

namespace koopq::model {

inline constexpr int kClassAnomaly = 0;
inline constexpr int kClassNormal = 1;

/// Index 0 is the anomaly class, index 1 the normal class.
using Logits = std::array<double, 2>;

/// Scaled feature vectors with their labels.
struct LabeledSet {
    std::vector<koopman::FeatureArray> x;
    std::vector<int> y;

    [[nodiscard]] std::size_t size() const noexcept { return x.size(); }
};

struct LossGradient {
    double loss = 0.0;
    std::vector<double> grad;
};

/// Per-sample LayerNorm without affine terms.
struct LayerNorm {
    std::vector<double> output;
    double inv_std = 1.0;

    static LayerNorm forward(std::span<const double> x, double eps);
    /// dL/dx given dL/d(output).
    [[nodiscard]] std::vector<double> backward(std::span<const double> grad_out) const;
};

/// Numerically stable softmax cross-entropy.
double cross_entropy(const Logits &logits, int label);
Logits cross_entropy_grad(const Logits &logits, int label);

double p_normal(const Logits &logits);
/// Normal only when p_normal is strictly above 0.5.
int predict(const Logits &logits);

} // namespace koopq::model
