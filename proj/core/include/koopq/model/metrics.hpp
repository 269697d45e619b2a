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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "koopq/model/common.hpp"

namespace koopq::model {

/// Mean silhouette over all points with Euclidean distance. Points in a
/// singleton cluster score 0, as does a point with a == b == 0. Returns
/// nullopt when fewer than two clusters are present.
std::optional<double> silhouette_score(const std::vector<std::vector<double>> &points,
                                       std::span<const int> labels);

struct EvalReport {
    double accuracy = 0.0;
    std::array<std::array<std::size_t, 2>, 2> confusion{}; ///< [true][predicted]
    std::optional<double> silhouette;
    std::vector<Logits> latent;
};

EvalReport make_report(std::vector<Logits> latent, std::span<const int> labels);

template <class Model>
EvalReport evaluate(const Model &model, const LabeledSet &data) {
    return make_report(model.batch_logits(data.x), data.y);
}

double accuracy(const std::vector<Logits> &logits, std::span<const int> labels);

/// `{"accuracy": ..., "confusion": [[..],[..]], "silhouette": ...|null}` plus
/// a provenance hash when given.
std::string report_to_json(const EvalReport &report, const std::string &config_hash = {});

} // namespace koopq::model
