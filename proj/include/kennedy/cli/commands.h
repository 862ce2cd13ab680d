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

#ifndef KENNEDY_CLI_COMMANDS_H
#define KENNEDY_CLI_COMMANDS_H

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "kennedy/cli/config.h"
#include "kennedy/fit.h"
#include "kennedy/tcspc.h"

namespace kennedy::cli {

inline constexpr const char *kBoundsCsvHeader =
    "m,e_kennedy_ideal,e_sql,e_helstrom,e_kennedy_real,norm_kennedy_ideal,norm_helstrom,norm_kennedy_real";
inline constexpr const char *kSweepCsvHeader =
    "m,mc_error,exact_error,eq4_error,sql,norm_mc,norm_exact,norm_eq4,ci95_total";
inline constexpr const char *kFitCsvHeader = "extinction_linear,extinction_db,dc,dark_rate_hz,residual";
inline constexpr const char *kHistCsvHeader = "bit,n,frequency,probability,poisson_pmf";

/// Closed-form curves on cfg.grid.
void run_bounds(const RunConfig &cfg, std::ostream &out);

/// Seed of the pseudorandom transmitted pattern for a run seeded with `seed`.
std::uint64_t bit_pattern_seed(std::uint64_t seed);

/// One simulated record, decoded and compared. With `emit_prefix`, also writes
/// `<prefix>_events.txt` and `<prefix>_bits.txt`.
ErrorStats run_simulate(const RunConfig &cfg, std::ostream &out,
                        const std::optional<std::filesystem::path> &emit_prefix = std::nullopt);

/// Decodes a stored event file against a stored bit file.
ErrorStats run_decode(const RunConfig &cfg, const std::filesystem::path &events,
                      const std::filesystem::path &bits, std::ostream &out);

/// One simulated record per grid point; point k is seeded derive_seed(seed, k).
void run_sweep(const RunConfig &cfg, std::ostream &out);

/// Reads "m,error[,weight]" CSV points and fits (c, dc). The dark count rate
/// column re-expresses dc over the configured bin duration.
FitResult run_fit(const RunConfig &cfg, std::istream &points_csv, std::ostream &out);

/// Photocount histogram of a simulated record per transmitted bit value.
void run_hist(const RunConfig &cfg, std::ostream &out);

}  // namespace kennedy::cli

#endif  // KENNEDY_CLI_COMMANDS_H
