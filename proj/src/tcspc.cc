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

#include "kennedy/tcspc.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "kennedy/errors.h"

namespace kennedy {
namespace {

constexpr std::string_view kEventHeader = "timestamp_ps";
constexpr std::string_view kBitHeader = "bit";

void expect_header(std::istream &in, std::string_view header, std::string &line) {
    if (!std::getline(in, line) || line != header) {
        throw ParseError(ParseErrorKind::kMissingHeader, 1,
                         fmt::format("line 1: expected header '{}'", header));
    }
}

std::ifstream open_for_read(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(ParseErrorKind::kIo, 0, fmt::format("cannot open '{}' for reading", path.string()));
    }
    return in;
}

std::ofstream open_for_write(const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
    }
    return out;
}

void finish_write(std::ofstream &out, const std::filesystem::path &path) {
    out.flush();
    if (!out) {
        throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
    }
}

}  // namespace

double ErrorStats::sigma_at(double p) const {
    if (n_bits <= 0) {
        return 0.0;
    }
    return std::sqrt(p * (1 - p) / static_cast<double>(n_bits));
}

std::int64_t CountHistogram::bins(int bit) const {
    std::int64_t total = 0;
    for (const auto &[n, freq] : counts[bit]) {
        total += freq;
    }
    return total;
}

double CountHistogram::probability(int bit, std::int64_t n) const {
    std::int64_t total = bins(bit);
    auto it = counts[bit].find(n);
    if (total == 0 || it == counts[bit].end()) {
        return 0.0;
    }
    return static_cast<double>(it->second) / static_cast<double>(total);
}

std::vector<PhotonEventRecord> parse_events(std::istream &in) {
    std::string line;
    expect_header(in, kEventHeader, line);
    std::vector<PhotonEventRecord> events;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::int64_t value = 0;
        const char *first = line.data();
        const char *last = first + line.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (line.empty() || line.front() == '-' || ec != std::errc() || ptr != last) {
            throw ParseError(ParseErrorKind::kMalformedLine, line_no,
                             fmt::format("line {}: expected a non-negative integer timestamp, got '{}'", line_no,
                                         line));
        }
        if (!events.empty() && value < events.back().timestamp_ps) {
            throw ParseError(ParseErrorKind::kNonMonotone, line_no,
                             fmt::format("line {}: timestamp {} is before previous {}", line_no, value,
                                         events.back().timestamp_ps));
        }
        events.push_back({value});
    }
    return events;
}

std::vector<PhotonEventRecord> parse_event_file(const std::filesystem::path &path) {
    std::ifstream in = open_for_read(path);
    return parse_events(in);
}

void write_events(std::span<const PhotonEventRecord> events, std::ostream &out) {
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "{}\n", kEventHeader);
    for (std::size_t k = 0; k < events.size(); ++k) {
        if (events[k].timestamp_ps < 0 || (k > 0 && events[k].timestamp_ps < events[k - 1].timestamp_ps)) {
            throw DomainError("write_events: events must be non-negative and sorted");
        }
        fmt::format_to(std::back_inserter(buf), "{}\n", events[k].timestamp_ps);
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_event_file(std::span<const PhotonEventRecord> events, const std::filesystem::path &path) {
    std::ofstream out = open_for_write(path);
    write_events(events, out);
    finish_write(out, path);
}

BitSequence parse_bits(std::istream &in) {
    std::string line;
    expect_header(in, kBitHeader, line);
    BitSequence bits;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line != "0" && line != "1") {
            throw ParseError(ParseErrorKind::kMalformedLine, line_no,
                             fmt::format("line {}: expected '0' or '1', got '{}'", line_no, line));
        }
        bits.bits.push_back(line == "1" ? 1 : 0);
    }
    return bits;
}

BitSequence parse_bit_file(const std::filesystem::path &path) {
    std::ifstream in = open_for_read(path);
    return parse_bits(in);
}

void write_bits(const BitSequence &bits, std::ostream &out) {
    std::string buf;
    buf.reserve(4 + 2 * bits.size());
    buf.append(kBitHeader).push_back('\n');
    for (std::uint8_t b : bits.bits) {
        buf.push_back(b ? '1' : '0');
        buf.push_back('\n');
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_bit_file(const BitSequence &bits, const std::filesystem::path &path) {
    std::ofstream out = open_for_write(path);
    write_bits(bits, out);
    finish_write(out, path);
}

std::vector<std::int64_t> bin_events(std::span<const PhotonEventRecord> events, const TimingConfig &timing,
                                     double guard_fraction) {
    timing.validate();
    if (!(guard_fraction >= 0 && guard_fraction <= 0.4)) {
        throw DomainError("guard fraction must be in [0, 0.4]");
    }
    const std::int64_t bin = timing.bin_duration_ps();
    const std::int64_t start = timing.start_offset_ps;
    const std::int64_t end = timing.record_end_ps();
    const double guard = guard_fraction * static_cast<double>(bin);

    std::vector<std::int64_t> counts(static_cast<std::size_t>(timing.n_bits), 0);
    for (const PhotonEventRecord &e : events) {
        if (e.timestamp_ps < start || e.timestamp_ps >= end) {
            throw DomainError(fmt::format("event at {} ps outside record [{}, {})", e.timestamp_ps, start, end));
        }
        std::int64_t rel = e.timestamp_ps - start;
        std::int64_t k = rel / bin;
        auto pos = static_cast<double>(rel - k * bin);
        if (pos < guard || pos >= static_cast<double>(bin) - guard) {
            continue;
        }
        ++counts[static_cast<std::size_t>(k)];
    }
    return counts;
}

BitSequence decode(std::span<const std::int64_t> counts) {
    BitSequence rx;
    rx.bits.reserve(counts.size());
    for (std::int64_t c : counts) {
        rx.bits.push_back(c >= 1 ? 1 : 0);
    }
    return rx;
}

ErrorStats compare(const BitSequence &tx, const BitSequence &rx) {
    if (tx.size() != rx.size()) {
        throw DomainError(fmt::format("compare: {} transmitted vs {} received bits", tx.size(), rx.size()));
    }
    ErrorStats s;
    s.n_bits = static_cast<std::int64_t>(tx.size());
    for (std::size_t k = 0; k < tx.size(); ++k) {
        if (tx.bits[k]) {
            ++s.n1;
            s.n_e10 += rx.bits[k] ? 0 : 1;
        } else {
            ++s.n0;
            s.n_e01 += rx.bits[k] ? 1 : 0;
        }
    }
    s.e01 = s.n0 > 0 ? static_cast<double>(s.n_e01) / static_cast<double>(s.n0) : 0.0;
    s.e10 = s.n1 > 0 ? static_cast<double>(s.n_e10) / static_cast<double>(s.n1) : 0.0;
    s.e_total = s.n_bits > 0 ? static_cast<double>(s.n_e01 + s.n_e10) / static_cast<double>(s.n_bits) : 0.0;
    s.ci95_total = (s.e_total > 0 && s.e_total < 1) ? 1.96 * s.sigma_at(s.e_total) : 0.0;
    return s;
}

CountHistogram photocount_histogram(std::span<const std::int64_t> counts, const BitSequence &tx) {
    if (counts.size() != tx.size()) {
        throw DomainError("photocount_histogram: counts and bits differ in length");
    }
    CountHistogram h;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        ++h.counts[tx.bits[k] ? 1 : 0][counts[k]];
    }
    return h;
}

std::string stats_csv_row(const ErrorStats &s) {
    return fmt::format("{},{},{},{},{},{:.15g},{:.15g},{:.15g},{:.15g}", s.n_bits, s.n0, s.n1, s.n_e01, s.n_e10,
                       s.e01, s.e10, s.e_total, s.ci95_total);
}

void write_stats_csv(const ErrorStats &stats, std::ostream &out) {
    out << kStatsCsvHeader << '\n' << stats_csv_row(stats) << '\n';
}

}  // namespace kennedy
