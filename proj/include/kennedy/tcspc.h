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

#ifndef KENNEDY_TCSPC_H
#define KENNEDY_TCSPC_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kennedy/model.h"
#include "kennedy/sim.h"

namespace kennedy {

/// Error counts of a transmitted/decoded bit pair.
///   e01: transmitted 0, decoded 1 (click in a nulled bin).
///   e10: transmitted 1, decoded 0 (no click in a bright bin).
struct ErrorStats {
    std::int64_t n_bits = 0;
    std::int64_t n0 = 0;
    std::int64_t n1 = 0;
    std::int64_t n_e01 = 0;
    std::int64_t n_e10 = 0;
    double e01 = 0.0;
    double e10 = 0.0;
    double e_total = 0.0;
    /// 1.96 sqrt(p (1 - p) / n_bits), 0 when p is 0 or 1.
    double ci95_total = 0.0;

    /// Binomial standard error of e_total around `p`.
    double sigma_at(double p) const;
};

/// Per transmitted bit value, photocount -> number of bins.
struct CountHistogram {
    std::map<std::int64_t, std::int64_t> counts[2];

    std::int64_t bins(int bit) const;
    double probability(int bit, std::int64_t n) const;
};

// Event file: header "timestamp_ps", then one non-decreasing base-10
// non-negative integer per line, LF line endings.
std::vector<PhotonEventRecord> parse_events(std::istream &in);
std::vector<PhotonEventRecord> parse_event_file(const std::filesystem::path &path);
void write_events(std::span<const PhotonEventRecord> events, std::ostream &out);
void write_event_file(std::span<const PhotonEventRecord> events, const std::filesystem::path &path);

// Bit file: header "bit", then "0" or "1" per line.
BitSequence parse_bits(std::istream &in);
BitSequence parse_bit_file(const std::filesystem::path &path);
void write_bits(const BitSequence &bits, std::ostream &out);
void write_bit_file(const BitSequence &bits, const std::filesystem::path &path);

/// Counts events in each half-period bin k, restricted to
/// [start + k T + g, start + (k + 1) T - g) with g = guard_fraction * T.
/// Events in the guard margins are dropped; events outside the record throw.
std::vector<std::int64_t> bin_events(std::span<const PhotonEventRecord> events, const TimingConfig &timing,
                                     double guard_fraction = 0.0);

/// Click (count >= 1) decodes to 1.
BitSequence decode(std::span<const std::int64_t> counts);

ErrorStats compare(const BitSequence &tx, const BitSequence &rx);

CountHistogram photocount_histogram(std::span<const std::int64_t> counts, const BitSequence &tx);

inline constexpr const char *kStatsCsvHeader = "n_bits,n0,n1,n_e01,n_e10,e01,e10,e_total,ci95_total";
std::string stats_csv_row(const ErrorStats &stats);
void write_stats_csv(const ErrorStats &stats, std::ostream &out);

}  // namespace kennedy

#endif  // KENNEDY_TCSPC_H
