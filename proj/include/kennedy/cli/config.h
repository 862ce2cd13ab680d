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

#ifndef KENNEDY_CLI_CONFIG_H
#define KENNEDY_CLI_CONFIG_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kennedy/bounds.h"
#include "kennedy/model.h"
#include "kennedy/sim.h"

namespace kennedy::cli {

/// Raw key -> value settings. Keys use the config-file spelling
/// (`dead_time_ns`); the matching command-line flag is `--dead-time-ns`.
using Settings = std::map<std::string, std::string, std::less<>>;

/// Every recognized key, in the order `kennedy --help` lists them.
std::span<const std::string_view> known_keys();

/// Parses flat `key = value` text. Blank lines and lines starting with '#'
/// are skipped. Unknown or repeated keys throw ConfigError.
Settings parse_config(std::istream &in);
Settings parse_config_file(const std::filesystem::path &path);

/// `overrides` wins over `base`.
Settings merge(Settings base, const Settings &overrides);

class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Grid syntax: a single value, a comma list "0.5,1,1.6", or an inclusive
/// range "start:stop:step".
std::vector<double> parse_grid(std::string_view spec);

struct RunConfig {
    SignalParams signal{1.3};
    ReceiverModel model;
    BitPattern pattern = BitPattern::kAlternatingMeander;
    double guard_fraction = 0.0;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::vector<double> grid;

    ImperfectionParams imperfections() const { return model.imperfections(); }
};

/// Builds and validates a RunConfig from defaults overlaid with `settings`.
/// Defaults are the reference receiver: 65% efficiency, 300 Hz dark counts,
/// 10 ns dead time, 25 ps resolution, 99:1 splitter, extinction 1250,
/// 100 kHz modulation, 10^6 bits, m = 1.3.
RunConfig build_run_config(const Settings &settings);

}  // namespace kennedy::cli

#endif  // KENNEDY_CLI_CONFIG_H
