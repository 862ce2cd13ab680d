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

#include "kennedy/cli/commands.h"

#include <algorithm>
#include <atomic>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "kennedy/errors.h"
#include "kennedy/rng.h"

namespace kennedy::cli {
namespace {

void require_grid(const RunConfig &cfg) {
    if (cfg.grid.empty()) {
        throw ConfigError("grid is required (e.g. --grid 0.05:3:0.05)");
    }
}

ReceiverModel with_bits(ReceiverModel r, std::size_t n_bits) {
    r.timing.n_bits = static_cast<std::int64_t>(n_bits);
    return r;
}

ErrorStats decode_and_compare(const BitSequence &tx, std::span<const PhotonEventRecord> events,
                              const TimingConfig &timing, double guard_fraction) {
    std::vector<std::int64_t> counts = bin_events(events, timing, guard_fraction);
    return compare(tx, decode(counts));
}

SimulationResult simulate_run(const RunConfig &cfg, double mean_photons, std::uint64_t seed, unsigned threads) {
    BitSequence tx = generate_bits(cfg.model.timing.n_bits, cfg.pattern, bit_pattern_seed(seed));
    return simulate(tx, {mean_photons}, cfg.model, seed, threads);
}

}  // namespace

std::uint64_t bit_pattern_seed(std::uint64_t seed) {
    return derive_seed(seed, std::numeric_limits<std::uint64_t>::max());
}

void run_bounds(const RunConfig &cfg, std::ostream &out) {
    require_grid(cfg);
    BoundsCurve curve = compute_bounds_curve(cfg.grid, cfg.imperfections());
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "{}\n", kBoundsCsvHeader);
    for (const auto &p : curve.points) {
        fmt::format_to(std::back_inserter(buf), "{:.12g},{:.15g},{:.15g},{:.15g},{:.15g},{:.15g},{:.15g},{:.15g}\n",
                       p.mean_photons, p.e_kennedy_ideal, p.e_sql, p.e_helstrom, p.e_kennedy_real,
                       p.norm_kennedy_ideal, p.norm_helstrom, p.norm_kennedy_real);
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

ErrorStats run_simulate(const RunConfig &cfg, std::ostream &out,
                        const std::optional<std::filesystem::path> &emit_prefix) {
    SimulationResult sim = simulate_run(cfg, cfg.signal.mean_photons, cfg.seed, cfg.threads);
    ErrorStats stats = decode_and_compare(sim.tx_bits, sim.events, sim.model.timing, cfg.guard_fraction);
    if (emit_prefix) {
        std::filesystem::path events = *emit_prefix;
        events += "_events.txt";
        std::filesystem::path bits = *emit_prefix;
        bits += "_bits.txt";
        write_event_file(sim.events, events);
        write_bit_file(sim.tx_bits, bits);
    }
    write_stats_csv(stats, out);
    return stats;
}

ErrorStats run_decode(const RunConfig &cfg, const std::filesystem::path &events,
                      const std::filesystem::path &bits, std::ostream &out) {
    std::vector<PhotonEventRecord> ev = parse_event_file(events);
    BitSequence tx = parse_bit_file(bits);
    if (tx.size() == 0) {
        throw ConfigError(fmt::format("bit file '{}' holds no bits", bits.string()));
    }
    ErrorStats stats = decode_and_compare(tx, ev, with_bits(cfg.model, tx.size()).timing, cfg.guard_fraction);
    write_stats_csv(stats, out);
    return stats;
}

void run_sweep(const RunConfig &cfg, std::ostream &out) {
    require_grid(cfg);
    std::vector<ErrorStats> stats(cfg.grid.size());

    // Points run concurrently with single-threaded simulations; each point's
    // seed depends only on its index, and rows are emitted in grid order.
    unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.grid.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < cfg.grid.size(); k = next++) {
            SimulationResult sim = simulate_run(cfg, cfg.grid[k], derive_seed(cfg.seed, k), 1);
            stats[k] = decode_and_compare(sim.tx_bits, sim.events, sim.model.timing, cfg.guard_fraction);
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < workers; ++t) {
            pool.emplace_back(work);
        }
        work();
    }

    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "{}\n", kSweepCsvHeader);
    for (std::size_t k = 0; k < cfg.grid.size(); ++k) {
        SignalParams s{cfg.grid[k]};
        double exact = exact_error_rate(s, cfg.model);
        double eq4 = error_kennedy_real(s, cfg.imperfections());
        double sql = error_sql(s);
        fmt::format_to(std::back_inserter(buf), "{:.12g},{:.15g},{:.15g},{:.15g},{:.15g},{:.15g},{:.15g},{:.15g},{:.15g}\n",
                       s.mean_photons, stats[k].e_total, exact, eq4, sql, stats[k].e_total / sql, exact / sql,
                       eq4 / sql, stats[k].ci95_total);
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

FitResult run_fit(const RunConfig &cfg, std::istream &points_csv, std::ostream &out) {
    std::vector<ErrorPoint> points;
    std::vector<double> weights;
    std::string line;
    std::size_t line_no = 0;
    bool weighted = false;
    while (std::getline(points_csv, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line_no == 1) {
            if (line == "m,error,weight") {
                weighted = true;
            } else if (line != "m,error") {
                throw ParseError(ParseErrorKind::kMissingHeader, 1,
                                 "line 1: expected header 'm,error' or 'm,error,weight'");
            }
            continue;
        }
        if (line.empty()) {
            continue;
        }
        std::vector<double> fields;
        std::size_t pos = 0;
        for (;;) {
            auto comma = line.find(',', pos);
            std::string field = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(field, &used);
            } catch (const std::exception &) {
                used = std::string::npos;
            }
            if (used != field.size()) {
                throw ParseError(ParseErrorKind::kMalformedLine, line_no,
                                 fmt::format("line {}: bad number '{}'", line_no, field));
            }
            fields.push_back(v);
            if (comma == std::string::npos) {
                break;
            }
            pos = comma + 1;
        }
        if (fields.size() != (weighted ? 3u : 2u)) {
            throw ParseError(ParseErrorKind::kMalformedLine, line_no,
                             fmt::format("line {}: expected {} fields", line_no, weighted ? 3 : 2));
        }
        points.push_back({fields[0], fields[1]});
        if (weighted) {
            weights.push_back(fields[2]);
        }
    }
    if (line_no == 0) {
        throw ParseError(ParseErrorKind::kMissingHeader, 1, "line 1: expected header 'm,error'");
    }

    FitResult fit = weighted ? fit_imperfections(points, std::span<const double>(weights))
                             : fit_imperfections(points);
    double bin_seconds = static_cast<double>(cfg.model.timing.bin_duration_ps()) * 1e-12;
    out << kFitCsvHeader << '\n'
        << fmt::format("{:.12g},{:.12g},{:.12g},{:.12g},{:.6g}\n", fit.params.extinction_linear,
                       extinction_linear_to_db(fit.params.extinction_linear), fit.params.dark_prob_per_bin,
                       fit.params.dark_prob_per_bin / bin_seconds, fit.residual);
    return fit;
}

void run_hist(const RunConfig &cfg, std::ostream &out) {
    SimulationResult sim = simulate_run(cfg, cfg.signal.mean_photons, cfg.seed, cfg.threads);
    std::vector<std::int64_t> counts = bin_events(sim.events, sim.model.timing, cfg.guard_fraction);
    CountHistogram h = photocount_histogram(counts, sim.tx_bits);
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "{}\n", kHistCsvHeader);
    for (int bit : {0, 1}) {
        double mean = mean_counts(bit, cfg.signal, cfg.model);
        for (const auto &[n, freq] : h.counts[bit]) {
            fmt::format_to(std::back_inserter(buf), "{},{},{},{:.15g},{:.15g}\n", bit, n, freq,
                           h.probability(bit, n), poisson_pmf(n, mean));
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

}  // namespace kennedy::cli
