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
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "koopq/model/common.hpp"
#include "koopq/qsim/state.hpp"

namespace koopq::model {

enum class Ansatz { FullUnitary, Layered };

std::string_view to_string(Ansatz ansatz);
Ansatz ansatz_from_string(std::string_view name);

struct PqnnConfig {
    std::size_t m = 6; ///< input feature dimension
    std::size_t k = 2; ///< parallel sub-circuits
    std::size_t n = 3; ///< qubits per sub-circuit
    bool share_params = false;
    Ansatz ansatz = Ansatz::FullUnitary;
    int layers = 4; ///< layered ansatz only
    double norm_eps = 1e-5;

    bool operator==(const PqnnConfig &) const = default;
};

/// Trainable parameters per sub-circuit for a config.
std::size_t circuit_param_count(const PqnnConfig &config);

/// Intermediate values of one forward pass.
struct PqnnTrace {
    LayerNorm input_norm;
    std::vector<double> angles;
    std::vector<qsim::QuantumState> encoded;
    std::vector<qsim::QuantumState> evolved;
    std::vector<double> expectations;
    LayerNorm output_norm;
    Logits logits{};
};

/// Parallel quantum classifier: a frozen linear encoder feeding k small
/// circuits whose Pauli-Z readouts are normalized and averaged into 2 logits.
class PqnnModel {
  public:
    PqnnModel(PqnnConfig config, Eigen::MatrixXd w_enc, Eigen::VectorXd bias,
              std::vector<double> circuit_params);

    /// W_enc ~ N(0, 1/m), b = 0, circuit parameters ~ N(0, 0.01) (variances).
    static PqnnModel init(std::uint64_t seed, const PqnnConfig &config);

    [[nodiscard]] const PqnnConfig &config() const noexcept { return config_; }
    [[nodiscard]] const Eigen::MatrixXd &w_enc() const noexcept { return w_enc_; }
    [[nodiscard]] const Eigen::VectorXd &bias() const noexcept { return bias_; }

    /// All circuit parameter sets, concatenated.
    [[nodiscard]] std::vector<double> &parameters() noexcept { return params_; }
    [[nodiscard]] const std::vector<double> &parameters() const noexcept { return params_; }
    [[nodiscard]] std::size_t parameter_sets() const noexcept;
    [[nodiscard]] std::span<const double> circuit_params(std::size_t circuit) const;

    [[nodiscard]] std::size_t trainable_count() const noexcept { return params_.size(); }
    [[nodiscard]] std::size_t fixed_count() const noexcept {
        return static_cast<std::size_t>(w_enc_.size() + bias_.size());
    }

    /// One unitary per sub-circuit for the current parameters.
    [[nodiscard]] std::vector<Eigen::MatrixXcd> unitaries() const;

    [[nodiscard]] PqnnTrace trace(std::span<const double> z,
                                  const std::vector<Eigen::MatrixXcd> &unitaries) const;
    [[nodiscard]] Logits logits(std::span<const double> z) const;
    [[nodiscard]] std::vector<Logits> batch_logits(std::span<const koopman::FeatureArray> x) const;

    /// Mean cross-entropy over the batch and its gradient w.r.t. parameters().
    [[nodiscard]] LossGradient batch_loss_gradient(std::span<const koopman::FeatureArray> x,
                                                   std::span<const int> y) const;
    [[nodiscard]] double batch_loss(std::span<const koopman::FeatureArray> x,
                                    std::span<const int> y) const;

    /// Logit c is the mean of the even (c = 0) or odd (c = 1) entries.
    static Logits aggregate(std::span<const double> normalized_expectations);

  private:
    PqnnConfig config_;
    Eigen::MatrixXd w_enc_;
    Eigen::VectorXd bias_;
    std::vector<double> params_;
};

} // namespace koopq::model
