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

#include "kennedy/cli/config.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include <fmt/format.h>

#include "kennedy/errors.h"

namespace kennedy::cli {
namespace {

constexpr std::array<std::string_view, 18> kKeys = {
    "m",           "extinction_db",   "extinction",      "dc",          "dark_rate_hz", "efficiency",
    "transmissivity", "dead_time_ns", "timing_resolution_ps", "rep_rate_khz", "start_offset_ps", "n_bits",
    "seed",        "guard_fraction",  "photon_reference", "pattern",    "grid",         "threads",
};

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view text) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, text));
    }
    return v;
}

std::int64_t to_int(std::string_view key, std::string_view text) {
    double v = to_double(key, text);
    if (v != std::floor(v) || std::abs(v) > 9e15) {
        throw ConfigError(fmt::format("{}: expected an integer, got '{}'", key, text));
    }
    return static_cast<std::int64_t>(v);
}

std::uint64_t to_u64(std::string_view key, std::string_view text) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(fmt::format("{}: expected an unsigned 64-bit integer, got '{}'", key, text));
    }
    return v;
}

}  // namespace

std::span<const std::string_view> known_keys() { return kKeys; }

Settings parse_config(std::istream &in) {
    Settings out;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("config line {}: expected 'key = value'", line_no));
        }
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw ConfigError(fmt::format("config line {}: unknown key '{}'", line_no, key));
        }
        if (!out.emplace(std::string(key), std::string(value)).second) {
            throw ConfigError(fmt::format("config line {}: duplicate key '{}'", line_no, key));
        }
    }
    return out;
}

Settings parse_config_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
    }
    return parse_config(in);
}

Settings merge(Settings base, const Settings &overrides) {
    for (const auto &[k, v] : overrides) {
        base.insert_or_assign(k, v);
    }
    return base;
}

std::vector<double> parse_grid(std::string_view spec) {
    spec = trim(spec);
    if (spec.empty()) {
        throw ConfigError("grid: empty grid");
    }
    std::vector<double> grid;
    if (spec.find(':') != std::string_view::npos) {
        std::vector<std::string_view> parts;
        std::size_t pos = 0;
        for (;;) {
            auto colon = spec.find(':', pos);
            parts.push_back(trim(spec.substr(pos, colon - pos)));
            if (colon == std::string_view::npos) {
                break;
            }
            pos = colon + 1;
        }
        if (parts.size() != 3) {
            throw ConfigError(fmt::format("grid: expected start:stop:step, got '{}'", spec));
        }
        double start = to_double("grid", parts[0]);
        double stop = to_double("grid", parts[1]);
        double step = to_double("grid", parts[2]);
        if (!(step > 0)) {
            throw ConfigError("grid: step must be > 0");
        }
        if (stop < start) {
            throw ConfigError("grid: stop is below start");
        }
        auto n = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (n > 10'000'000) {
            throw ConfigError("grid: too many points");
        }
        for (std::int64_t k = 0; k < n; ++k) {
            grid.push_back(start + static_cast<double>(k) * step);
        }
    } else {
        std::size_t pos = 0;
        for (;;) {
            auto comma = spec.find(',', pos);
            grid.push_back(to_double("grid", trim(spec.substr(pos, comma - pos))));
            if (comma == std::string_view::npos) {
                break;
            }
            pos = comma + 1;
        }
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (grid[k] < 0 || (k > 0 && !(grid[k] > grid[k - 1]))) {
            throw ConfigError("grid: values must be >= 0 and strictly increasing");
        }
    }
    return grid;
}

RunConfig build_run_config(const Settings &settings) {
    for (const auto &[key, value] : settings) {
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw ConfigError(fmt::format("unknown key '{}'", key));
        }
    }
    auto get = [&](std::string_view key) -> std::optional<std::string_view> {
        auto it = settings.find(key);
        if (it == settings.end()) {
            return std::nullopt;
        }
        return std::string_view(it->second);
    };

    RunConfig cfg;
    cfg.model.timing.n_bits = 1'000'000;
    ReceiverModel &r = cfg.model;
    try {
        if (auto v = get("m")) cfg.signal.mean_photons = to_double("m", *v);
        if (get("extinction") && get("extinction_db")) {
            throw ConfigError("set either extinction or extinction_db, not both");
        }
        if (auto v = get("extinction")) r.displacement.extinction_linear = to_double("extinction", *v);
        if (auto v = get("extinction_db")) {
            r.displacement.extinction_linear = extinction_db_to_linear(to_double("extinction_db", *v));
        }
        if (auto v = get("efficiency")) r.detector.efficiency = to_double("efficiency", *v);
        if (auto v = get("transmissivity")) r.displacement.transmissivity = to_double("transmissivity", *v);
        if (auto v = get("dead_time_ns")) {
            double ns = to_double("dead_time_ns", *v);
            if (ns < 0) throw ConfigError("dead_time_ns must be >= 0");
            r.detector.dead_time_ps = std::llround(ns * 1000.0);
        }
        if (auto v = get("timing_resolution_ps")) {
            r.detector.timing_resolution_ps = to_int("timing_resolution_ps", *v);
        }
        if (auto v = get("rep_rate_khz")) r.timing.rep_rate_hz = to_double("rep_rate_khz", *v) * 1e3;
        if (auto v = get("start_offset_ps")) r.timing.start_offset_ps = to_int("start_offset_ps", *v);
        if (auto v = get("n_bits")) r.timing.n_bits = to_int("n_bits", *v);
        if (get("dc") && get("dark_rate_hz")) {
            throw ConfigError("set either dc or dark_rate_hz, not both");
        }
        if (auto v = get("dark_rate_hz")) r.detector.dark_rate_hz = to_double("dark_rate_hz", *v);
        if (auto v = get("seed")) cfg.seed = to_u64("seed", *v);
        if (auto v = get("guard_fraction")) cfg.guard_fraction = to_double("guard_fraction", *v);
        if (auto v = get("photon_reference")) r.photon_reference = photon_reference_from_string(*v);
        if (auto v = get("pattern")) cfg.pattern = bit_pattern_from_string(*v);
        if (auto v = get("grid")) cfg.grid = parse_grid(*v);
        if (auto v = get("threads")) {
            std::int64_t t = to_int("threads", *v);
            if (t < 0 || t > 1024) throw ConfigError("threads must be in [0, 1024]");
            cfg.threads = static_cast<unsigned>(t);
        }

        r.validate();
        if (auto v = get("dc")) {
            // Per-bin dark counts are stored as the equivalent rate.
            double dc = to_double("dc", *v);
            if (dc < 0) throw ConfigError("dc must be >= 0");
            r.detector.dark_rate_hz = dc / (static_cast<double>(r.timing.bin_duration_ps()) * 1e-12);
        }
        cfg.signal.validate();
        r.validate();
        if (!(cfg.guard_fraction >= 0 && cfg.guard_fraction <= 0.4)) {
            throw ConfigError("guard_fraction must be in [0, 0.4]");
        }
    } catch (const DomainError &e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

}  // namespace kennedy::cli
