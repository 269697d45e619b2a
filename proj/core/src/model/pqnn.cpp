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
#include "koopq/model/pqnn.hpp"

#include <cmath>
#include <random>
#include <string>

#include "koopq/errors.hpp"
#include "koopq/qsim/layered.hpp"
#include "koopq/qsim/unitary.hpp"

namespace koopq::model {

namespace {

void validate(const PqnnConfig &c) {
    if (c.m == 0 || c.k == 0 || c.n == 0) throw ConfigError("PQNN sizes must be positive");
    if (c.n * c.k != c.m) {
        throw ConfigError("PQNN sizing requires n*k == m (got n=" + std::to_string(c.n) +
                          ", k=" + std::to_string(c.k) + ", m=" + std::to_string(c.m) + ")");
    }
    if (c.n > static_cast<std::size_t>(qsim::kMaxQubits)) throw ConfigError("too many qubits per circuit");
    if (c.ansatz == Ansatz::Layered && c.layers < 1) throw ConfigError("layered ansatz needs layers >= 1");
    if (!(c.norm_eps > 0.0)) throw ConfigError("norm_eps must be positive");
}

} // namespace

std::string_view to_string(Ansatz ansatz) {
    return ansatz == Ansatz::FullUnitary ? "full_unitary" : "layered";
}

Ansatz ansatz_from_string(std::string_view name) {
    if (name == "full_unitary") return Ansatz::FullUnitary;
    if (name == "layered") return Ansatz::Layered;
    throw ConfigError("unknown ansatz '" + std::string(name) + "'");
}

std::size_t circuit_param_count(const PqnnConfig &config) {
    const int n = static_cast<int>(config.n);
    return config.ansatz == Ansatz::FullUnitary ? qsim::UnitaryParams::count(n)
                                                : qsim::LayeredParams::count(n, config.layers);
}

PqnnModel::PqnnModel(PqnnConfig config, Eigen::MatrixXd w_enc, Eigen::VectorXd bias,
                     std::vector<double> circuit_params)
    : config_(config), w_enc_(std::move(w_enc)), bias_(std::move(bias)),
      params_(std::move(circuit_params)) {
    validate(config_);
    const auto nk = static_cast<Eigen::Index>(config_.n * config_.k);
    if (w_enc_.rows() != nk || w_enc_.cols() != static_cast<Eigen::Index>(config_.m)) {
        throw SizingError("w_enc must be (n*k) x m");
    }
    if (bias_.size() != nk) throw SizingError("bias must have n*k entries");
    if (params_.size() != parameter_sets() * circuit_param_count(config_)) {
        throw SizingError("expected " + std::to_string(parameter_sets() * circuit_param_count(config_)) +
                          " circuit parameters, got " + std::to_string(params_.size()));
    }
}

PqnnModel PqnnModel::init(std::uint64_t seed, const PqnnConfig &config) {
    validate(config);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> enc(0.0, std::sqrt(1.0 / static_cast<double>(config.m)));
    std::normal_distribution<double> circ(0.0, std::sqrt(0.01));
    const auto nk = static_cast<Eigen::Index>(config.n * config.k);
    Eigen::MatrixXd w(nk, static_cast<Eigen::Index>(config.m));
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = enc(rng);
    }
    const std::size_t sets = config.share_params ? 1 : config.k;
    std::vector<double> theta(sets * circuit_param_count(config));
    for (double &t : theta) t = circ(rng);
    return {config, std::move(w), Eigen::VectorXd::Zero(nk), std::move(theta)};
}

std::size_t PqnnModel::parameter_sets() const noexcept {
    return config_.share_params ? 1 : config_.k;
}

std::span<const double> PqnnModel::circuit_params(std::size_t circuit) const {
    const std::size_t per = circuit_param_count(config_);
    const std::size_t set = config_.share_params ? 0 : circuit;
    return std::span<const double>(params_).subspan(set * per, per);
}

std::vector<Eigen::MatrixXcd> PqnnModel::unitaries() const {
    std::vector<Eigen::MatrixXcd> out;
    const int n = static_cast<int>(config_.n);
    for (std::size_t j = 0; j < config_.k; ++j) {
        auto p = circuit_params(j);
        if (config_.ansatz == Ansatz::FullUnitary) {
            out.push_back(qsim::build_unitary({n, {p.begin(), p.end()}}));
        } else {
            out.push_back(qsim::build_layered_unitary({n, config_.layers, {p.begin(), p.end()}}));
        }
    }
    return out;
}

Logits PqnnModel::aggregate(std::span<const double> e) {
    Logits out{0.0, 0.0};
    std::size_t count[2] = {0, 0};
    for (std::size_t i = 0; i < e.size(); ++i) {
        out[i % 2] += e[i];
        ++count[i % 2];
    }
    for (std::size_t c = 0; c < 2; ++c) {
        if (count[c] > 0) out[c] /= static_cast<double>(count[c]);
    }
    return out;
}

PqnnTrace PqnnModel::trace(std::span<const double> z,
                           const std::vector<Eigen::MatrixXcd> &unitaries) const {
    if (z.size() != config_.m) {
        throw SizingError("PQNN expects " + std::to_string(config_.m) + " features, got " +
                          std::to_string(z.size()));
    }
    PqnnTrace t;
    t.input_norm = LayerNorm::forward(z, config_.norm_eps);
    const Eigen::Map<const Eigen::VectorXd> zn(t.input_norm.output.data(),
                                               static_cast<Eigen::Index>(config_.m));
    const Eigen::VectorXd h = w_enc_ * zn + bias_;
    t.angles.assign(h.data(), h.data() + h.size());
    const std::size_t n = config_.n;
    for (std::size_t j = 0; j < config_.k; ++j) {
        auto sub = std::span<const double>(t.angles).subspan(j * n, n);
        t.encoded.push_back(qsim::encode_angles(sub));
        t.evolved.push_back(qsim::apply_unitary(t.encoded.back(), unitaries[j]));
        auto e = qsim::z_expectations(t.evolved.back());
        t.expectations.insert(t.expectations.end(), e.begin(), e.end());
    }
    t.output_norm = LayerNorm::forward(t.expectations, config_.norm_eps);
    t.logits = aggregate(t.output_norm.output);
    return t;
}

Logits PqnnModel::logits(std::span<const double> z) const { return trace(z, unitaries()).logits; }

std::vector<Logits> PqnnModel::batch_logits(std::span<const koopman::FeatureArray> x) const {
    const auto us = unitaries();
    std::vector<Logits> out;
    out.reserve(x.size());
    for (const auto &z : x) out.push_back(trace(z, us).logits);
    return out;
}

double PqnnModel::batch_loss(std::span<const koopman::FeatureArray> x, std::span<const int> y) const {
    const auto us = unitaries();
    double total = 0.0;
    for (std::size_t s = 0; s < x.size(); ++s) total += cross_entropy(trace(x[s], us).logits, y[s]);
    return total / static_cast<double>(x.size());
}

LossGradient PqnnModel::batch_loss_gradient(std::span<const koopman::FeatureArray> x,
                                            std::span<const int> y) const {
    if (x.size() != y.size() || x.empty()) throw SizingError("batch features/labels mismatch");
    const int n = static_cast<int>(config_.n);
    const Eigen::Index dim = Eigen::Index{1} << n;
    const double inv_batch = 1.0 / static_cast<double>(x.size());

    std::vector<qsim::UnitaryExp> spectral;
    std::vector<Eigen::MatrixXcd> us;
    if (config_.ansatz == Ansatz::FullUnitary) {
        for (std::size_t j = 0; j < config_.k; ++j) {
            auto p = circuit_params(j);
            spectral.emplace_back(qsim::UnitaryParams{n, {p.begin(), p.end()}});
            us.push_back(spectral.back().unitary());
        }
    } else {
        us = unitaries();
    }

    // Accumulated sum_s psi_in c^H per sub-circuit.
    std::vector<Eigen::MatrixXcd> outer(config_.k, Eigen::MatrixXcd::Zero(dim, dim));
    LossGradient result;
    for (std::size_t s = 0; s < x.size(); ++s) {
        const auto t = trace(x[s], us);
        result.loss += cross_entropy(t.logits, y[s]) * inv_batch;
        const Logits dlogit = cross_entropy_grad(t.logits, y[s]);

        std::vector<double> de_norm(t.expectations.size());
        const double cnt[2] = {std::ceil(static_cast<double>(de_norm.size()) / 2.0),
                               std::floor(static_cast<double>(de_norm.size()) / 2.0)};
        for (std::size_t i = 0; i < de_norm.size(); ++i) de_norm[i] = dlogit[i % 2] / cnt[i % 2];
        const auto de = t.output_norm.backward(de_norm);

        for (std::size_t j = 0; j < config_.k; ++j) {
            auto w = std::span<const double>(de).subspan(j * config_.n, config_.n);
            const Eigen::VectorXcd c = qsim::z_cotangent(t.evolved[j], w);
            outer[j] += (inv_batch * t.encoded[j].amplitudes()) * c.adjoint();
        }
    }

    const std::size_t per = circuit_param_count(config_);
    result.grad.assign(params_.size(), 0.0);
    for (std::size_t j = 0; j < config_.k; ++j) {
        std::vector<double> g;
        if (config_.ansatz == Ansatz::FullUnitary) {
            g = spectral[j].gradient_from_outer(outer[j]);
        } else {
            auto p = circuit_params(j);
            g = qsim::layered_gradient_from_outer({n, config_.layers, {p.begin(), p.end()}}, outer[j]);
        }
        const std::size_t set = config_.share_params ? 0 : j;
        for (std::size_t i = 0; i < per; ++i) result.grad[set * per + i] += g[i];
    }
    return result;
}

} // namespace koopq::model
