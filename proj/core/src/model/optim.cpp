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
#include "koopq/model/optim.hpp"

#include <cmath>

#include "koopq/errors.hpp"

namespace koopq::model {

AdamW::AdamW(std::size_t n_params, AdamWConfig config)
    : config_(config), m_(n_params, 0.0), v_(n_params, 0.0) {}

void AdamW::step(std::span<double> params, std::span<const double> grad) {
    if (params.size() != m_.size() || grad.size() != m_.size()) {
        throw SizingError("AdamW::step: parameter/gradient size mismatch");
    }
    ++t_;
    const double t = static_cast<double>(t_);
    const double bc1 = 1.0 - std::pow(config_.beta1, t);
    const double bc2 = 1.0 - std::pow(config_.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * grad[i];
        v_[i] = config_.beta2 * v_[i] + (1.0 - config_.beta2) * grad[i] * grad[i];
        const double m_hat = m_[i] / bc1;
        const double v_hat = v_[i] / bc2;
        params[i] -= config_.learning_rate *
                     (m_hat / (std::sqrt(v_hat) + config_.eps) + config_.weight_decay * params[i]);
    }
}

} // namespace koopq::model
