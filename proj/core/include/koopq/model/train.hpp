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

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "koopq/errors.hpp"
#include "koopq/model/common.hpp"
#include "koopq/model/metrics.hpp"
#include "koopq/model/optim.hpp"

namespace koopq::model {

struct TrainConfig {
    double learning_rate = 0.01;
    std::size_t epochs = 120;
    std::size_t batch_size = 64;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double weight_decay = 0.0;
    std::uint64_t rng_seed = 0;
    /// Upper bound on epochs * batches per epoch.
    std::size_t max_steps = 1'000'000;

    [[nodiscard]] AdamWConfig adam() const {
        return {learning_rate, beta1, beta2, eps, weight_decay};
    }

    bool operator==(const TrainConfig &) const = default;
};

struct EpochRecord {
    std::size_t epoch = 0;
    double train_loss = 0.0;
    std::optional<double> test_acc;

    bool operator==(const EpochRecord &) const = default;
};

template <class M>
concept TrainableModel = requires(M m, const M cm, std::span<const koopman::FeatureArray> x,
                                  std::span<const int> y) {
    { m.parameters() } -> std::same_as<std::vector<double> &>;
    { cm.batch_loss_gradient(x, y) } -> std::same_as<LossGradient>;
    { cm.batch_logits(x) } -> std::same_as<std::vector<Logits>>;
};

void validate(const TrainConfig &config, std::size_t n_train);

/// Mini-batch AdamW over the model's trainable parameters only. Batches are
/// reshuffled every epoch from a generator seeded with config.rng_seed.
/// Throws NumericalError naming the batch when the loss goes non-finite.
template <TrainableModel M>
std::vector<EpochRecord> train(M &model, const LabeledSet &train_set, const TrainConfig &config,
                               const LabeledSet *test_set = nullptr) {
    validate(config, train_set.size());
    const std::size_t n = train_set.size();
    AdamW opt(model.parameters().size(), config.adam());
    std::mt19937_64 rng(config.rng_seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    std::vector<EpochRecord> history;
    std::vector<koopman::FeatureArray> bx;
    std::vector<int> by;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double loss_sum = 0.0;
        for (std::size_t start = 0, batch = 0; start < n; start += config.batch_size, ++batch) {
            const std::size_t stop = std::min(n, start + config.batch_size);
            bx.clear();
            by.clear();
            for (std::size_t i = start; i < stop; ++i) {
                bx.push_back(train_set.x[order[i]]);
                by.push_back(train_set.y[order[i]]);
            }
            auto lg = model.batch_loss_gradient(bx, by);
            if (!std::isfinite(lg.loss)) {
                throw NumericalError("non-finite loss at epoch " + std::to_string(epoch + 1) +
                                     ", batch " + std::to_string(batch));
            }
            loss_sum += lg.loss * static_cast<double>(stop - start);
            opt.step(model.parameters(), lg.grad);
        }
        EpochRecord rec;
        rec.epoch = epoch + 1;
        rec.train_loss = loss_sum / static_cast<double>(n);
        if (test_set != nullptr && test_set->size() > 0) {
            rec.test_acc = accuracy(model.batch_logits(test_set->x), test_set->y);
        }
        history.push_back(rec);
    }
    return history;
}

} // namespace koopq::model
