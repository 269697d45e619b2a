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
#include "koopq/model/common.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "koopq/errors.hpp"

namespace koopq::model {

LayerNorm LayerNorm::forward(std::span<const double> x, double eps) {
    if (x.empty()) throw SizingError("LayerNorm of an empty vector");
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= n;
    LayerNorm ln;
    ln.inv_std = 1.0 / std::sqrt(var + eps);
    ln.output.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) ln.output[i] = (x[i] - mean) * ln.inv_std;
    return ln;
}

std::vector<double> LayerNorm::backward(std::span<const double> grad_out) const {
    const std::size_t n = output.size();
    if (grad_out.size() != n) throw SizingError("LayerNorm backward: gradient length mismatch");
    double mean_g = 0.0;
    double mean_gy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_g += grad_out[i];
        mean_gy += grad_out[i] * output[i];
    }
    mean_g /= static_cast<double>(n);
    mean_gy /= static_cast<double>(n);
    std::vector<double> dx(n);
    for (std::size_t i = 0; i < n; ++i) {
        dx[i] = inv_std * (grad_out[i] - mean_g - output[i] * mean_gy);
    }
    return dx;
}

double cross_entropy(const Logits &logits, int label) {
    const double hi = std::max(logits[0], logits[1]);
    const double lse = hi + std::log(std::exp(logits[0] - hi) + std::exp(logits[1] - hi));
    return lse - logits[static_cast<std::size_t>(label)];
}

Logits cross_entropy_grad(const Logits &logits, int label) {
    const double p1 = p_normal(logits);
    Logits g{1.0 - p1, p1};
    g[static_cast<std::size_t>(label)] -= 1.0;
    return g;
}

double p_normal(const Logits &logits) {
    // softmax[1] = sigmoid(l1 - l0)
    const double d = logits[1] - logits[0];
    if (d >= 0) return 1.0 / (1.0 + std::exp(-d));
    const double e = std::exp(d);
    return e / (1.0 + e);
}

int predict(const Logits &logits) { return p_normal(logits) > 0.5 ? kClassNormal : kClassAnomaly; }

} // namespace koopq::model
