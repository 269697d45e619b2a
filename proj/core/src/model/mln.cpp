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
#include "koopq/model/mln.hpp"

#include <cmath>
#include <random>
#include <string>

#include "koopq/errors.hpp"

namespace koopq::model {

MlnModel::MlnModel(std::vector<std::size_t> sizes, std::vector<double> params)
    : sizes_(std::move(sizes)), params_(std::move(params)) {
    if (sizes_.size() < 2 || sizes_.back() != 2) {
        throw ConfigError("MLN needs at least an input and a 2-logit output layer");
    }
    for (auto s : sizes_) {
        if (s == 0) throw ConfigError("MLN layer sizes must be positive");
    }
    if (params_.size() != parameter_count(sizes_)) {
        throw SizingError("MLN expects " + std::to_string(parameter_count(sizes_)) +
                          " parameters, got " + std::to_string(params_.size()));
    }
}

std::size_t MlnModel::parameter_count(const std::vector<std::size_t> &sizes) {
    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) total += sizes[l] * sizes[l + 1] + sizes[l + 1];
    return total;
}

MlnModel MlnModel::init(std::uint64_t seed, std::vector<std::size_t> sizes) {
    std::mt19937_64 rng(seed);
    std::vector<double> params;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        std::normal_distribution<double> w(0.0, std::sqrt(1.0 / static_cast<double>(sizes[l])));
        for (std::size_t i = 0; i < sizes[l] * sizes[l + 1]; ++i) params.push_back(w(rng));
        params.insert(params.end(), sizes[l + 1], 0.0);
    }
    return {std::move(sizes), std::move(params)};
}

std::vector<std::vector<double>> MlnModel::forward(std::span<const double> z) const {
    if (z.size() != sizes_.front()) {
        throw SizingError("MLN expects " + std::to_string(sizes_.front()) + " features, got " +
                          std::to_string(z.size()));
    }
    std::vector<std::vector<double>> acts;
    acts.emplace_back(z.begin(), z.end());
    std::size_t off = 0;
    const std::size_t last = sizes_.size() - 2;
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
        const std::size_t in = sizes_[l];
        const std::size_t out = sizes_[l + 1];
        const double *w = params_.data() + off;
        const double *b = w + in * out;
        std::vector<double> a(out);
        for (std::size_t o = 0; o < out; ++o) {
            double s = b[o];
            for (std::size_t i = 0; i < in; ++i) s += w[o * in + i] * acts.back()[i];
            a[o] = l == last ? s : std::tanh(s);
        }
        acts.push_back(std::move(a));
        off += in * out + out;
    }
    return acts;
}

Logits MlnModel::logits(std::span<const double> z) const {
    const auto acts = forward(z);
    return {acts.back()[0], acts.back()[1]};
}

std::vector<Logits> MlnModel::batch_logits(std::span<const koopman::FeatureArray> x) const {
    std::vector<Logits> out;
    out.reserve(x.size());
    for (const auto &z : x) out.push_back(logits(z));
    return out;
}

double MlnModel::batch_loss(std::span<const koopman::FeatureArray> x, std::span<const int> y) const {
    double total = 0.0;
    for (std::size_t s = 0; s < x.size(); ++s) total += cross_entropy(logits(x[s]), y[s]);
    return total / static_cast<double>(x.size());
}

LossGradient MlnModel::batch_loss_gradient(std::span<const koopman::FeatureArray> x,
                                           std::span<const int> y) const {
    if (x.size() != y.size() || x.empty()) throw SizingError("batch features/labels mismatch");
    const double inv_batch = 1.0 / static_cast<double>(x.size());
    LossGradient result;
    result.grad.assign(params_.size(), 0.0);

    std::vector<std::size_t> offsets;
    std::size_t off = 0;
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
        offsets.push_back(off);
        off += sizes_[l] * sizes_[l + 1] + sizes_[l + 1];
    }

    for (std::size_t s = 0; s < x.size(); ++s) {
        const auto acts = forward(x[s]);
        const Logits lg{acts.back()[0], acts.back()[1]};
        result.loss += cross_entropy(lg, y[s]) * inv_batch;
        const Logits d = cross_entropy_grad(lg, y[s]);
        std::vector<double> delta{d[0] * inv_batch, d[1] * inv_batch};

        for (std::size_t l = sizes_.size() - 1; l-- > 0;) {
            const std::size_t in = sizes_[l];
            const std::size_t out = sizes_[l + 1];
            const double *w = params_.data() + offsets[l];
            double *gw = result.grad.data() + offsets[l];
            double *gb = gw + in * out;
            const auto &prev = acts[l];
            for (std::size_t o = 0; o < out; ++o) {
                gb[o] += delta[o];
                for (std::size_t i = 0; i < in; ++i) gw[o * in + i] += delta[o] * prev[i];
            }
            if (l == 0) break;
            std::vector<double> back(in, 0.0);
            for (std::size_t i = 0; i < in; ++i) {
                double sum = 0.0;
                for (std::size_t o = 0; o < out; ++o) sum += w[o * in + i] * delta[o];
                back[i] = sum * (1.0 - prev[i] * prev[i]);
            }
            delta = std::move(back);
        }
    }
    return result;
}

} // namespace koopq::model
