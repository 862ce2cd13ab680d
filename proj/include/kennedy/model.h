// Copyright 2026 The Kennedy Receiver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KENNEDY_MODEL_H
#define KENNEDY_MODEL_H

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "kennedy/bounds.h"

namespace kennedy {

/// Single-photon detector. Timestamps are quantized to timing_resolution_ps.
struct DetectorModel {
    double efficiency = 0.65;
    double dark_rate_hz = 300.0;
    std::int64_t dead_time_ps = 10'000;
    std::int64_t timing_resolution_ps = 25;

    void validate() const;
};

/// Displacement stage: signal transmission of the 99:1 beam splitter and the
/// interference extinction c = I_max / I_min.
struct DisplacementModel {
    double transmissivity = 0.99;
    double extinction_linear = 1250.0;

    void validate() const;
};

/// Square-wave phase modulation. One bit per half period.
struct TimingConfig {
    double rep_rate_hz = 1e5;
    std::int64_t n_bits = 1;
    std::int64_t start_offset_ps = 0;

    /// round(1e12 / (2 rep_rate_hz)); 5'000'000 ps at 100 kHz.
    std::int64_t bin_duration_ps() const;
    std::int64_t record_end_ps() const { return start_offset_ps + n_bits * bin_duration_ps(); }
    void validate() const;
};

enum class PhotonReference {
    kDetectorReferred,
    kSourceReferred,
};

std::string_view to_string(PhotonReference r);
PhotonReference photon_reference_from_string(std::string_view s);

struct ReceiverModel {
    DetectorModel detector;
    DisplacementModel displacement;
    TimingConfig timing;
    PhotonReference photon_reference = PhotonReference::kDetectorReferred;

    void validate() const;

    /// Mean dark counts per bin: dark_rate_hz * bin duration.
    double dark_counts_per_bin() const;
    /// Factor mapping the signal's m onto detected photons: 1 when detector
    /// referred, efficiency * transmissivity when source referred.
    double photon_gain() const;
    ImperfectionParams imperfections() const;
};

/// Mean photocounts in a bin carrying `bit`. Bit 1 is the displaced bright
/// state 4m g + dc; bit 0 is the nulled state with residual 4m g / c + dc.
double mean_counts(int bit, const SignalParams &s, const ReceiverModel &r);

/// 1 - e^{-mean}.
double click_probability(double mean_counts);

/// 0.5 e^{-lambda_1} + 0.5 (1 - e^{-lambda_0}), the error rate an equiprobable
/// bit stream through the event simulator converges to.
double exact_error_rate(const SignalParams &s, const ReceiverModel &r);

/// The interval of m on which exact_error_rate() beats the standard quantum
/// limit, searched on (1e-3, 10). Endpoints are bisection roots; an endpoint
/// equal to the bracket end means the region extends past it. Returns the
/// first such interval, or nullopt when the receiver never beats the limit.
std::optional<std::pair<double, double>> sub_sql_window(const ReceiverModel &r);

}  // namespace kennedy

#endif  // KENNEDY_MODEL_H
