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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "koopq/signal/ingest.hpp"
#include "koopq/signal/record.hpp"

namespace koopq::signal {

enum class AnomalyKind { FringeJump, InterferenceBurst, Vibration };

std::string_view to_string(AnomalyKind kind);
std::optional<AnomalyKind> anomaly_kind_from_string(std::string_view name);

/// Amplitudes are relative to the standard deviation of the clean envelope.
struct AnomalyMagnitudes {
    double jump_min = 3.0;
    double jump_max = 6.0;
    double burst_min = 1.0;
    double burst_max = 2.5;
    double vibration_min = 0.35;
    double vibration_max = 0.8;
};

struct SyntheticSpec {
    std::size_t n_records = 2000;
    double anomaly_fraction = 0.4;
    std::size_t t_min = 2000;
    std::size_t t_max = 20000;
    std::vector<AnomalyKind> anomaly_kinds{AnomalyKind::FringeJump, AnomalyKind::InterferenceBurst,
                                           AnomalyKind::Vibration};
    std::uint64_t rng_seed = 7;
    double dt = 1e-4;
    double noise_level = 0.01;
    AnomalyMagnitudes magnitudes{};
};

/// Generated record plus what was injected into it.
struct SyntheticTrace {
    DischargeRecord record;
    std::optional<AnomalyKind> kind;
    std::vector<std::size_t> jump_indices; ///< fringe-jump step positions
    double envelope_std = 0.0;
};

/// Throws ConfigError on an empty anomaly kind list with a positive fraction.
std::vector<SyntheticTrace> generate_synthetic_traces(const SyntheticSpec &spec);
Dataset generate_synthetic(const SyntheticSpec &spec);

/// Builds a discharge document of `n_channels` channels with a 10% pre-trigger
/// segment. The first `n_anomalous` channels (after shuffling) are listed as
/// anomalous.
DischargeFile generate_discharge(const SyntheticSpec &spec, std::int64_t shot,
                                 std::size_t n_channels, std::size_t n_anomalous);

} // namespace koopq::signal
