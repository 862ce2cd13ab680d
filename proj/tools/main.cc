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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kennedy/cli/commands.h"
#include "kennedy/errors.h"

namespace {

using kennedy::cli::Settings;

std::string flag_name(std::string_view key) {
    std::string flag = "--" + std::string(key);
    for (char &c : flag) {
        if (c == '_') c = '-';
    }
    return flag;
}

struct Common {
    std::optional<std::string> config;
    std::optional<std::string> out;
    Settings overrides;
};

void add_common(CLI::App *cmd, Common &common) {
    cmd->add_option("--config", common.config, "flat key = value config file");
    cmd->add_option("--out", common.out, "output CSV path (default: stdout)");
    for (std::string_view key : kennedy::cli::known_keys()) {
        std::string k(key);
        cmd->add_option_function<std::string>(
            flag_name(key), [&common, k](const std::string &v) { common.overrides[k] = v; },
            "overrides config key '" + k + "'");
    }
}

kennedy::cli::RunConfig resolve(const Common &common) {
    Settings base;
    if (common.config) {
        base = kennedy::cli::parse_config_file(*common.config);
    }
    return kennedy::cli::build_run_config(kennedy::cli::merge(std::move(base), common.overrides));
}

template <typename Fn>
void with_output(const Common &common, Fn fn) {
    if (!common.out) {
        fn(std::cout);
        return;
    }
    std::ofstream out(*common.out, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + *common.out + "' for writing");
    }
    fn(out);
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + *common.out + "' failed");
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Kennedy receiver error-rate bounds and photon-counting simulator"};
    app.require_subcommand(1);

    Common common;

    auto *bounds = app.add_subcommand("bounds", "closed-form error rates on a grid of mean photon numbers");
    add_common(bounds, common);

    auto *simulate = app.add_subcommand("simulate", "simulate, decode and score one record");
    add_common(simulate, common);
    std::optional<std::string> emit_prefix;
    simulate->add_option("--emit-events", emit_prefix, "write PREFIX_events.txt and PREFIX_bits.txt");

    auto *decode = app.add_subcommand("decode", "decode a stored event file against a bit file");
    add_common(decode, common);
    std::string events_path, bits_path;
    decode->add_option("--events", events_path, "event file")->required();
    decode->add_option("--bits", bits_path, "transmitted bit file")->required();

    auto *sweep = app.add_subcommand("sweep", "simulated and analytic error rates over a grid");
    add_common(sweep, common);

    auto *fit = app.add_subcommand("fit", "fit extinction and dark counts to measured error points");
    add_common(fit, common);
    std::string points_path;
    fit->add_option("--points", points_path, "CSV with header m,error[,weight]")->required();

    auto *hist = app.add_subcommand("hist", "photocount histogram per transmitted bit value");
    add_common(hist, common);

    CLI11_PARSE(app, argc, argv);

    try {
        kennedy::cli::RunConfig cfg = resolve(common);
        if (*bounds) {
            with_output(common, [&](std::ostream &out) { kennedy::cli::run_bounds(cfg, out); });
        } else if (*simulate) {
            std::optional<std::filesystem::path> prefix;
            if (emit_prefix) prefix = *emit_prefix;
            with_output(common, [&](std::ostream &out) { kennedy::cli::run_simulate(cfg, out, prefix); });
        } else if (*decode) {
            with_output(common,
                        [&](std::ostream &out) { kennedy::cli::run_decode(cfg, events_path, bits_path, out); });
        } else if (*sweep) {
            with_output(common, [&](std::ostream &out) { kennedy::cli::run_sweep(cfg, out); });
        } else if (*fit) {
            std::ifstream in(points_path);
            if (!in) {
                throw std::runtime_error("cannot open '" + points_path + "'");
            }
            with_output(common, [&](std::ostream &out) { kennedy::cli::run_fit(cfg, in, out); });
        } else if (*hist) {
            with_output(common, [&](std::ostream &out) { kennedy::cli::run_hist(cfg, out); });
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
