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
#include "koopq/signal/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <cstdio>
#include <random>

#include "koopq/errors.hpp"

namespace koopq::signal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double population_std(const std::vector<double> &x) {
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / n);
}

class TraceSynth {
  public:
    TraceSynth(const SyntheticSpec &spec, std::uint64_t stream) : spec_(spec), rng_(stream) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::size_t uniform_index(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }
    double normal(double sd) { return std::normal_distribution<double>(0.0, sd)(rng_); }

    /// Ramp-up / flattop / ramp-down envelope with a band-limited oscillation.
    std::vector<double> clean(std::size_t T, double amplitude) {
        const double n = static_cast<double>(T);
        const double up = uniform(0.08, 0.15);
        const double down = uniform(0.80, 0.92);
        const double w_up = uniform(0.01, 0.03);
        const double w_down = uniform(0.01, 0.03);
        struct Tone { double period, amp, phase; };
        Tone tones[2];
        for (auto &tone : tones) {
            tone.period = uniform(300.0, 3000.0);
            tone.amp = uniform(0.03, 0.10);
            tone.phase = uniform(0.0, kTwoPi);
        }
        std::vector<double> x(T);
        for (std::size_t i = 0; i < T; ++i) {
            const double u = static_cast<double>(i) / n;
            const double shape = sigmoid((u - up) / w_up) * sigmoid((down - u) / w_down);
            double osc = 0.0;
            for (const auto &tone : tones) {
                osc += tone.amp * std::sin(kTwoPi * static_cast<double>(i) / tone.period + tone.phase);
            }
            x[i] = amplitude * shape * (1.0 + osc);
        }
        return x;
    }

    void add_noise(std::vector<double> &x, double sd) {
        for (double &v : x) v += normal(sd);
    }

    std::vector<std::size_t> fringe_jumps(std::vector<double> &x, double env_std) {
        const std::size_t T = x.size();
        const std::size_t count = uniform_index(1, 3);
        std::vector<std::size_t> at;
        for (std::size_t k = 0; k < count; ++k) {
            at.push_back(uniform_index(T / 5, (4 * T) / 5));
        }
        std::sort(at.begin(), at.end());
        for (std::size_t pos : at) {
            const double sign = uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
            const double step =
                sign * uniform(spec_.magnitudes.jump_min, spec_.magnitudes.jump_max) * env_std;
            for (std::size_t i = pos; i < T; ++i) x[i] += step;
        }
        return at;
    }

    void interference_bursts(std::vector<double> &x, double env_std) {
        const std::size_t T = x.size();
        const std::size_t count = uniform_index(1, 2);
        for (std::size_t k = 0; k < count; ++k) {
            const auto len = std::max<std::size_t>(
                16, static_cast<std::size_t>(uniform(0.01, 0.05) * static_cast<double>(T)));
            const std::size_t start = uniform_index(T / 10, T - len - T / 10);
            const double sd =
                uniform(spec_.magnitudes.burst_min, spec_.magnitudes.burst_max) * env_std;
            for (std::size_t i = 0; i < len; ++i) {
                const double taper =
                    std::sin(std::numbers::pi * static_cast<double>(i) / static_cast<double>(len));
                x[start + i] += taper * normal(sd);
            }
        }
    }

    /// Narrowband episode: a tone whose instantaneous frequency wanders
    /// (AR(1) jitter) under a drifting, tapered envelope.
    void vibration(std::vector<double> &x, double env_std) {
        const std::size_t T = x.size();
        const auto len = std::max<std::size_t>(
            64, static_cast<std::size_t>(uniform(0.3, 0.6) * static_cast<double>(T)));
        const std::size_t start = uniform_index(T / 10, T - std::min(T, len + T / 10));
        const double n = static_cast<double>(len);
        const double w0 = kTwoPi / uniform(15.0, 60.0);
        const double a0 =
            uniform(spec_.magnitudes.vibration_min, spec_.magnitudes.vibration_max) * env_std;
        const double drift_cycles = uniform(1.0, 3.0);
        const double drift_phase = uniform(0.0, kTwoPi);
        constexpr double kRho = 0.9;
        constexpr double kJitter = 0.35;
        const double innovation = std::sqrt(1.0 - kRho * kRho);
        double xi = normal(1.0);
        double phase = uniform(0.0, kTwoPi);
        for (std::size_t i = 0; i < len && start + i < T; ++i) {
            const double u = static_cast<double>(i) / n;
            const double drift = 0.6 + 0.4 * std::sin(kTwoPi * drift_cycles * u + drift_phase);
            const double taper = std::sin(std::numbers::pi * u);
            x[start + i] += a0 * drift * taper * std::sin(phase);
            xi = kRho * xi + innovation * normal(1.0);
            phase += w0 * (1.0 + kJitter * xi);
        }
    }

    SyntheticTrace trace(std::size_t T, std::optional<AnomalyKind> kind) {
        SyntheticTrace out;
        const double amplitude = uniform(0.5, 2.0);
        auto x = clean(T, amplitude);
        out.envelope_std = population_std(x);
        add_noise(x, spec_.noise_level * amplitude);
        out.kind = kind;
        if (kind) {
            switch (*kind) {
            case AnomalyKind::FringeJump:
                out.jump_indices = fringe_jumps(x, out.envelope_std);
                break;
            case AnomalyKind::InterferenceBurst:
                interference_bursts(x, out.envelope_std);
                break;
            case AnomalyKind::Vibration:
                vibration(x, out.envelope_std);
                break;
            }
        }
        out.record.samples = std::move(x);
        out.record.dt = spec_.dt;
        out.record.label = kind ? kLabelAnomaly : kLabelNormal;
        return out;
    }

  private:
    const SyntheticSpec &spec_;
    std::mt19937_64 rng_;
};

void validate(const SyntheticSpec &spec) {
    if (spec.n_records < 1) throw ConfigError("synthetic.n_records must be >= 1");
    if (!(spec.anomaly_fraction >= 0.0 && spec.anomaly_fraction <= 1.0)) {
        throw ConfigError("synthetic.anomaly_fraction must lie in [0, 1]");
    }
    if (spec.t_min < 64 || spec.t_max < spec.t_min) {
        throw ConfigError("synthetic T range must be nonempty with t_min >= 64");
    }
    if (spec.anomaly_kinds.empty() && spec.anomaly_fraction > 0.0) {
        throw ConfigError("synthetic.anomaly_kinds is empty but anomaly_fraction > 0");
    }
    if (!(spec.dt > 0.0)) throw ConfigError("synthetic.dt must be positive");
}

} // namespace

std::string_view to_string(AnomalyKind kind) {
    switch (kind) {
    case AnomalyKind::FringeJump: return "fringe_jump";
    case AnomalyKind::InterferenceBurst: return "interference_burst";
    case AnomalyKind::Vibration: return "vibration";
    }
    return "unknown";
}

std::optional<AnomalyKind> anomaly_kind_from_string(std::string_view name) {
    if (name == "fringe_jump") return AnomalyKind::FringeJump;
    if (name == "interference_burst") return AnomalyKind::InterferenceBurst;
    if (name == "vibration") return AnomalyKind::Vibration;
    return std::nullopt;
}

std::vector<SyntheticTrace> generate_synthetic_traces(const SyntheticSpec &spec) {
    validate(spec);
    const std::size_t n = spec.n_records;
    const auto n_anomalous = static_cast<std::size_t>(
        std::llround(spec.anomaly_fraction * static_cast<double>(n)));

    std::mt19937_64 master(spec.rng_seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), master);
    std::vector<std::optional<AnomalyKind>> kinds(n);
    for (std::size_t k = 0; k < n_anomalous; ++k) {
        kinds[order[k]] = spec.anomaly_kinds[k % spec.anomaly_kinds.size()];
    }

    std::vector<SyntheticTrace> traces;
    traces.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        TraceSynth synth(spec, splitmix64(spec.rng_seed ^ splitmix64(i)));
        const std::size_t T = synth.uniform_index(spec.t_min, spec.t_max);
        auto trace = synth.trace(T, kinds[i]);
        trace.record.shot_id = static_cast<std::int64_t>(i);
        trace.record.channel_id = "syn" + std::to_string(i);
        traces.push_back(std::move(trace));
    }
    return traces;
}

Dataset generate_synthetic(const SyntheticSpec &spec) {
    Dataset ds;
    for (auto &trace : generate_synthetic_traces(spec)) {
        ds.records.push_back(std::move(trace.record));
    }
    ds.split_seed = spec.rng_seed;
    return ds;
}

DischargeFile generate_discharge(const SyntheticSpec &spec, std::int64_t shot,
                                 std::size_t n_channels, std::size_t n_anomalous) {
    validate(spec);
    if (n_anomalous > n_channels) {
        throw ConfigError("more anomalous channels than channels");
    }
    if (n_anomalous > 0 && spec.anomaly_kinds.empty()) {
        throw ConfigError("synthetic.anomaly_kinds is empty but anomalous channels requested");
    }
    const auto stream = splitmix64(spec.rng_seed ^ splitmix64(static_cast<std::uint64_t>(shot) + 0x51ed));
    std::mt19937_64 master(stream);
    const std::size_t T = std::uniform_int_distribution<std::size_t>(spec.t_min, spec.t_max)(master);
    const std::size_t n_pre = T / 10;

    DischargeFile file;
    file.shot = shot;
    file.dt = spec.dt;
    file.time.resize(n_pre + T);
    for (std::size_t i = 0; i < file.time.size(); ++i) {
        file.time[i] = (static_cast<double>(i) - static_cast<double>(n_pre)) * spec.dt;
    }

    std::vector<std::size_t> order(n_channels);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), master);
    std::vector<bool> anomalous(n_channels, false);
    for (std::size_t k = 0; k < n_anomalous; ++k) anomalous[order[k]] = true;

    for (std::size_t c = 0; c < n_channels; ++c) {
        TraceSynth synth(spec, splitmix64(stream ^ splitmix64(c)));
        std::optional<AnomalyKind> kind;
        if (anomalous[c]) kind = spec.anomaly_kinds[c % spec.anomaly_kinds.size()];
        auto trace = synth.trace(T, kind);
        std::vector<double> samples(n_pre, 0.0);
        for (double &v : samples) v = synth.normal(spec.noise_level);
        samples.insert(samples.end(), trace.record.samples.begin(), trace.record.samples.end());
        char id[32];
        std::snprintf(id, sizeof id, "ch%02zu", c);
        file.channels.emplace(id, std::move(samples));
        if (anomalous[c]) file.anomaly_channels.emplace_back(id);
    }
    std::sort(file.anomaly_channels.begin(), file.anomaly_channels.end());
    return file;
}

} // namespace koopq::signal
