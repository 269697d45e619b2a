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
#include "koopq/model/metrics.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "koopq/errors.hpp"
#include "koopq/model/train.hpp"

namespace koopq::model {

void validate(const TrainConfig &config, std::size_t n_train) {
    if (!(config.learning_rate >= 0.0)) throw ConfigError("learning_rate must be >= 0");
    if (config.batch_size == 0) throw ConfigError("batch_size must be positive");
    if (!(config.beta1 >= 0.0 && config.beta1 < 1.0) || !(config.beta2 >= 0.0 && config.beta2 < 1.0)) {
        throw ConfigError("Adam betas must lie in [0, 1)");
    }
    if (!(config.eps > 0.0)) throw ConfigError("Adam eps must be positive");
    if (!(config.weight_decay >= 0.0)) throw ConfigError("weight_decay must be >= 0");
    if (n_train == 0 && config.epochs > 0) throw ValidationError("empty training set");
    const std::size_t batches = (n_train + config.batch_size - 1) / config.batch_size;
    if (config.epochs > 0 && batches > config.max_steps / config.epochs) {
        throw ConfigError("epochs * batches exceeds the max_steps budget");
    }
}

std::optional<double> silhouette_score(const std::vector<std::vector<double>> &points,
                                       std::span<const int> labels) {
    if (points.size() != labels.size()) throw SizingError("silhouette: points/labels mismatch");
    std::vector<int> classes(labels.begin(), labels.end());
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    if (classes.size() < 2) return std::nullopt;

    auto slot = [&](int label) {
        return static_cast<std::size_t>(std::lower_bound(classes.begin(), classes.end(), label) -
                                        classes.begin());
    };
    std::vector<std::size_t> cluster_size(classes.size(), 0);
    for (int l : labels) ++cluster_size[slot(l)];

    const std::size_t n = points.size();
    double total = 0.0;
    std::vector<double> sums(classes.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double d2 = 0.0;
            for (std::size_t c = 0; c < points[i].size(); ++c) {
                const double diff = points[i][c] - points[j][c];
                d2 += diff * diff;
            }
            sums[slot(labels[j])] += std::sqrt(d2);
        }
        const std::size_t own = slot(labels[i]);
        if (cluster_size[own] < 2) continue; // singleton contributes 0
        const double a = sums[own] / static_cast<double>(cluster_size[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < classes.size(); ++c) {
            if (c != own) b = std::min(b, sums[c] / static_cast<double>(cluster_size[c]));
        }
        const double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

double accuracy(const std::vector<Logits> &logits, std::span<const int> labels) {
    if (logits.size() != labels.size()) throw SizingError("accuracy: size mismatch");
    if (logits.empty()) throw ValidationError("accuracy of an empty set");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < logits.size(); ++i) hits += predict(logits[i]) == labels[i] ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(logits.size());
}

EvalReport make_report(std::vector<Logits> latent, std::span<const int> labels) {
    if (latent.size() != labels.size()) throw SizingError("evaluate: size mismatch");
    if (latent.empty()) throw ValidationError("evaluate: empty test set");
    EvalReport r;
    for (std::size_t i = 0; i < latent.size(); ++i) {
        const auto t = static_cast<std::size_t>(labels[i]);
        const auto p = static_cast<std::size_t>(predict(latent[i]));
        ++r.confusion[t][p];
    }
    r.accuracy = static_cast<double>(r.confusion[0][0] + r.confusion[1][1]) /
                 static_cast<double>(latent.size());
    std::vector<std::vector<double>> pts;
    pts.reserve(latent.size());
    for (const auto &l : latent) pts.push_back({l[0], l[1]});
    r.silhouette = silhouette_score(pts, labels);
    r.latent = std::move(latent);
    return r;
}

std::string report_to_json(const EvalReport &report, const std::string &config_hash) {
    nlohmann::ordered_json j;
    j["accuracy"] = report.accuracy;
    j["confusion"] = {{report.confusion[0][0], report.confusion[0][1]},
                      {report.confusion[1][0], report.confusion[1][1]}};
    j["silhouette"] = report.silhouette ? nlohmann::ordered_json(*report.silhouette)
                                        : nlohmann::ordered_json(nullptr);
    if (!config_hash.empty()) j["config_hash"] = config_hash;
    return j.dump(2);
}

} // namespace koopq::model
