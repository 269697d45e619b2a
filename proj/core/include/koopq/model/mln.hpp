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
#include <span>
#include <vector>

#include "koopq/model/common.hpp"

namespace koopq::model {

/// Fully connected classical baseline with tanh hidden activations and a
/// linear 2-logit output. Parameters are stored layer by layer as a
/// row-major weight block followed by the bias.
class MlnModel {
  public:
    MlnModel(std::vector<std::size_t> sizes, std::vector<double> params);

    /// Weights ~ N(0, 1/fan_in), biases zero.
    static MlnModel init(std::uint64_t seed, std::vector<std::size_t> sizes = {6, 16, 16, 2});

    static std::size_t parameter_count(const std::vector<std::size_t> &sizes);

    [[nodiscard]] const std::vector<std::size_t> &sizes() const noexcept { return sizes_; }
    [[nodiscard]] std::vector<double> &parameters() noexcept { return params_; }
    [[nodiscard]] const std::vector<double> &parameters() const noexcept { return params_; }
    [[nodiscard]] std::size_t trainable_count() const noexcept { return params_.size(); }

    [[nodiscard]] Logits logits(std::span<const double> z) const;
    [[nodiscard]] std::vector<Logits> batch_logits(std::span<const koopman::FeatureArray> x) const;
    [[nodiscard]] LossGradient batch_loss_gradient(std::span<const koopman::FeatureArray> x,
                                                   std::span<const int> y) const;
    [[nodiscard]] double batch_loss(std::span<const koopman::FeatureArray> x,
                                    std::span<const int> y) const;

  private:
    /// Activations per layer, input first.
    [[nodiscard]] std::vector<std::vector<double>> forward(std::span<const double> z) const;

    std::vector<std::size_t> sizes_;
    std::vector<double> params_;
};

} // namespace koopq::model
