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

#include "kennedy/model.h"

#include <cmath>
#include <string>

#include "kennedy/errors.h"

namespace kennedy {

void DetectorModel::validate() const {
    if (!(efficiency >= 0 && efficiency <= 1)) {
        throw DomainError("detector efficiency must be in [0, 1]");
    }
    if (!std::isfinite(dark_rate_hz) || dark_rate_hz < 0) {
        throw DomainError("dark rate must be >= 0");
    }
    if (dead_time_ps < 0) {
        throw DomainError("dead time must be >= 0");
    }
    if (timing_resolution_ps < 1) {
        throw DomainError("timing resolution must be >= 1 ps");
    }
}

void DisplacementModel::validate() const {
    if (!(transmissivity > 0 && transmissivity <= 1)) {
        throw DomainError("transmissivity must be in (0, 1]");
    }
    if (!(extinction_linear >= 1)) {
        throw DomainError("extinction must be >= 1");
    }
}

std::int64_t TimingConfig::bin_duration_ps() const {
    return static_cast<std::int64_t>(std::llround(1e12 / (2 * rep_rate_hz)));
}

void TimingConfig::validate() const {
    if (!std::isfinite(rep_rate_hz) || !(rep_rate_hz > 0)) {
        throw DomainError("repetition rate must be > 0");
    }
    if (bin_duration_ps() < 1) {
        throw DomainError("repetition rate too high for 1 ps bins");
    }
    if (n_bits < 1) {
        throw DomainError("n_bits must be >= 1");
    }
    if (start_offset_ps < 0) {
        throw DomainError("start offset must be >= 0");
    }
}

std::string_view to_string(PhotonReference r) {
    return r == PhotonReference::kDetectorReferred ? "detector_referred" : "source_referred";
}

PhotonReference photon_reference_from_string(std::string_view s) {
    if (s == "detector_referred") {
        return PhotonReference::kDetectorReferred;
    }
    if (s == "source_referred") {
        return PhotonReference::kSourceReferred;
    }
    throw DomainError("unknown photon reference '" + std::string(s) + "'");
}

void ReceiverModel::validate() const {
    detector.validate();
    displacement.validate();
    timing.validate();
}

double ReceiverModel::dark_counts_per_bin() const {
    return detector.dark_rate_hz * static_cast<double>(timing.bin_duration_ps()) * 1e-12;
}

double ReceiverModel::photon_gain() const {
    return photon_reference == PhotonReference::kDetectorReferred
               ? 1.0
               : detector.efficiency * displacement.transmissivity;
}

ImperfectionParams ReceiverModel::imperfections() const {
    return {displacement.extinction_linear, dark_counts_per_bin()};
}

double mean_counts(int bit, const SignalParams &s, const ReceiverModel &r) {
    if (bit != 0 && bit != 1) {
        throw DomainError("bit must be 0 or 1");
    }
    s.validate();
    r.validate();
    double bright = 4.0 * (s.mean_photons * r.photon_gain());
    double signal = bit == 1 ? bright : bright / r.displacement.extinction_linear;
    return signal + r.dark_counts_per_bin();
}

double click_probability(double mean_counts) {
    if (!(mean_counts >= 0)) {
        throw DomainError("click_probability: mean must be >= 0");
    }
    return -std::expm1(-mean_counts);
}

double exact_error_rate(const SignalParams &s, const ReceiverModel &r) {
    double lambda1 = mean_counts(1, s, r);
    double lambda0 = mean_counts(0, s, r);
    return 0.5 * std::exp(-lambda1) + 0.5 * click_probability(lambda0);
}

std::optional<std::pair<double, double>> sub_sql_window(const ReceiverModel &r) {
    constexpr double kLo = 1e-3;
    constexpr double kHi = 10.0;
    constexpr int kScan = 4000;

    // Positive where the receiver loses to the standard quantum limit.
    auto gap = [&r](double m) { return exact_error_rate({m}, r) - error_sql({m}); };
    auto bisect = [&gap](double a, double b) {
        bool a_positive = gap(a) > 0;
        for (;;) {
            double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) {
                break;
            }
            if ((gap(mid) > 0) == a_positive) {
                a = mid;
            } else {
                b = mid;
            }
        }
        return std::abs(gap(a)) <= std::abs(gap(b)) ? a : b;
    };

    // Log-spaced scan for sign changes, then bisection on each bracket.
    double ratio = std::pow(kHi / kLo, 1.0 / kScan);
    double prev = kLo;
    bool prev_negative = gap(prev) < 0;
    std::optional<double> start;
    if (prev_negative) {
        start = kLo;
    }
    for (int k = 1; k <= kScan; ++k) {
        double m = k == kScan ? kHi : kLo * std::pow(ratio, k);
        bool negative = gap(m) < 0;
        if (negative != prev_negative) {
            double root = bisect(prev, m);
            if (negative) {
                start = root;
            } else {
                return std::pair{*start, root};
            }
        }
        prev = m;
        prev_negative = negative;
    }
    if (start) {
        return std::pair{*start, kHi};
    }
    return std::nullopt;
}

}  // namespace kennedy
