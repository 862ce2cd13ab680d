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

#include "kennedy/sim.h"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "kennedy/errors.h"
#include "kennedy/rng.h"
#include "kennedy/tcspc.h"

using namespace kennedy;

namespace {

ReceiverModel reference_model(std::int64_t n_bits) {
    ReceiverModel r;
    r.timing.n_bits = n_bits;
    return r;
}

ReceiverModel dark_vacuum_model(std::int64_t n_bits) {
    ReceiverModel r = reference_model(n_bits);
    r.detector.dark_rate_hz = 0;
    return r;
}

}  // namespace

TEST(GenerateBits, alternating_meander) {
    BitSequence b = generate_bits(4, BitPattern::kAlternatingMeander);
    EXPECT_EQ(b.bits, (std::vector<std::uint8_t>{1, 0, 1, 0}));
    EXPECT_THROW(generate_bits(0, BitPattern::kAlternatingMeander), DomainError);
}

TEST(GenerateBits, pseudorandom_is_deterministic_and_balanced) {
    constexpr std::int64_t n = 1'000'000;
    BitSequence a = generate_bits(n, BitPattern::kPseudorandom, 7);
    BitSequence b = generate_bits(n, BitPattern::kPseudorandom, 7);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, generate_bits(n, BitPattern::kPseudorandom, 8));
    double ones = static_cast<double>(std::count(a.bits.begin(), a.bits.end(), 1));
    EXPECT_NEAR(ones / n, 0.5, 3 * 0.5 / std::sqrt(static_cast<double>(n)));
}

TEST(SimulateBinCounts, vacuum_never_clicks) {
    BitSequence bits = generate_bits(10000, BitPattern::kAlternatingMeander);
    auto counts = simulate_bin_counts(bits, {0.0}, dark_vacuum_model(10000), 3);
    EXPECT_TRUE(std::all_of(counts.begin(), counts.end(), [](auto c) { return c == 0; }));
}

TEST(SimulateBinCounts, bright_bin_statistics) {
    constexpr std::int64_t n = 1'000'000;
    ReceiverModel r = reference_model(n);
    BitSequence bits = generate_bits(n, BitPattern::kAlternatingMeander);
    auto counts = simulate_bin_counts(bits, {1.3}, r, 11);

    const double lambda1 = 5.2015;
    double sum = 0;
    std::int64_t zeros = 0, bright = 0;
    for (std::size_t k = 0; k < counts.size(); k += 2) {
        sum += static_cast<double>(counts[k]);
        zeros += counts[k] == 0;
        ++bright;
    }
    double nb = static_cast<double>(bright);
    EXPECT_NEAR(sum / nb, lambda1, 3 * std::sqrt(lambda1 / nb));
    double p0 = std::exp(-lambda1);
    EXPECT_NEAR(static_cast<double>(zeros) / nb, p0, 3 * std::sqrt(p0 * (1 - p0) / nb));
}

TEST(SimulateBinCounts, independent_of_thread_count) {
    constexpr std::int64_t n = 50'000;
    BitSequence bits = generate_bits(n, BitPattern::kPseudorandom, 1);
    ReceiverModel r = reference_model(n);
    auto one = simulate_bin_counts(bits, {1.0}, r, 99, 1);
    EXPECT_EQ(one, simulate_bin_counts(bits, {1.0}, r, 99, 3));
    EXPECT_EQ(one, simulate_bin_counts(bits, {1.0}, r, 99, 8));
    EXPECT_NE(one, simulate_bin_counts(bits, {1.0}, r, 100, 1));
}

TEST(SimulateEventStream, vacuum_is_empty) {
    BitSequence bits = generate_bits(1000, BitPattern::kAlternatingMeander);
    EXPECT_TRUE(simulate_event_stream(bits, {0.0}, dark_vacuum_model(1000), 5).empty());
}

TEST(SimulateEventStream, quantized_sorted_and_in_range) {
    constexpr std::int64_t n = 20'000;
    ReceiverModel r = reference_model(n);
    BitSequence bits = generate_bits(n, BitPattern::kAlternatingMeander);
    auto events = simulate_event_stream(bits, {1.3}, r, 17);
    ASSERT_FALSE(events.empty());
    EXPECT_TRUE(std::is_sorted(events.begin(), events.end()));
    for (const auto &e : events) {
        ASSERT_EQ(e.timestamp_ps % 25, 0);
        ASSERT_GE(e.timestamp_ps, 0);
        ASSERT_LT(e.timestamp_ps, n * 5'000'000);
    }
}

TEST(SimulateEventStream, binning_without_dead_time_reproduces_bin_counts) {
    constexpr std::int64_t n = 30'000;
    ReceiverModel r = reference_model(n);
    r.detector.dead_time_ps = 0;
    BitSequence bits = generate_bits(n, BitPattern::kPseudorandom, 2);
    auto events = simulate_event_stream(bits, {2.0}, r, 23, 2);
    EXPECT_EQ(bin_events(events, r.timing), simulate_bin_counts(bits, {2.0}, r, 23, 1));
}

TEST(SimulateEventStream, dead_time_removes_events_but_not_decisions) {
    constexpr std::int64_t n = 1'000'000;
    ReceiverModel r = reference_model(n);
    BitSequence bits = generate_bits(n, BitPattern::kAlternatingMeander);
    auto with_dead = simulate_event_stream(bits, {1.3}, r, 29);
    r.detector.dead_time_ps = 0;
    auto without = simulate_event_stream(bits, {1.3}, r, 29);
    ASSERT_GT(without.size(), 0u);

    // Bright bins carry almost every event; a Poisson stream of rate rho loses
    // about rho tau / (1 + rho tau) of its events to a non-paralyzable dead time.
    double rho_tau = 5.2015 / 5e6 * 1e4;
    double expected = rho_tau / (1 + rho_tau);
    double lost = static_cast<double>(without.size() - with_dead.size()) / static_cast<double>(without.size());
    EXPECT_NEAR(lost, expected, 0.1 * expected);

    // Click/no-click decisions are unchanged except where a nulled bin's only
    // click falls inside the dead window of the previous bright bin.
    auto a = decode(bin_events(with_dead, r.timing)).bits;
    auto b = decode(bin_events(without, r.timing)).bits;
    std::int64_t flipped = 0;
    for (std::size_t k = 0; k < a.size(); ++k) flipped += a[k] != b[k];
    EXPECT_LT(static_cast<double>(flipped) / n, 1e-4);
    EXPECT_EQ(bin_events(without, r.timing), simulate_bin_counts(bits, {1.3}, r, 29));
}

TEST(SimulateEventStream, start_offset_shifts_record) {
    constexpr std::int64_t n = 1000;
    ReceiverModel r = reference_model(n);
    r.timing.start_offset_ps = 1'000'000;
    BitSequence bits = generate_bits(n, BitPattern::kAlternatingMeander);
    auto events = simulate_event_stream(bits, {2.0}, r, 31);
    ASSERT_FALSE(events.empty());
    EXPECT_GE(events.front().timestamp_ps, 1'000'000);
    EXPECT_LT(events.back().timestamp_ps, r.timing.record_end_ps());
}

TEST(ApplyDeadTime, rule) {
    std::vector<PhotonEventRecord> ev = {{0}, {5'000}, {12'000}};
    EXPECT_EQ(apply_dead_time(ev, 0), ev);
    EXPECT_EQ(apply_dead_time(ev, 10'000), (std::vector<PhotonEventRecord>{{0}, {12'000}}));
    // Non-paralyzable: the dropped event at 5000 does not extend the dead window.
    std::vector<PhotonEventRecord> chain = {{0}, {6'000}, {10'000}, {15'000}};
    EXPECT_EQ(apply_dead_time(chain, 10'000), (std::vector<PhotonEventRecord>{{0}, {10'000}}));
    std::vector<PhotonEventRecord> unsorted = {{10}, {5}};
    EXPECT_THROW(apply_dead_time(unsorted, 1), DomainError);
    EXPECT_TRUE(apply_dead_time(std::vector<PhotonEventRecord>{}, 100).empty());
}

TEST(ApplyDeadTime, idempotent_on_random_streams) {
    Rng rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<PhotonEventRecord> ev(1 + rng() % 300);
        std::int64_t t = 0;
        for (auto &e : ev) {
            t += static_cast<std::int64_t>(rng() % 20'000);
            e.timestamp_ps = t;
        }
        std::int64_t dead = static_cast<std::int64_t>(rng() % 15'000);
        auto once = apply_dead_time(ev, dead);
        ASSERT_EQ(apply_dead_time(once, dead), once);
        ASSERT_EQ(once.front(), ev.front());
        for (std::size_t k = 1; k < once.size(); ++k) {
            ASSERT_GE(once[k].timestamp_ps - once[k - 1].timestamp_ps, dead);
        }
    }
}

TEST(Simulate, deterministic_and_self_consistent) {
    constexpr std::int64_t n = 100'000;
    ReceiverModel r = reference_model(n);
    BitSequence bits = generate_bits(n, BitPattern::kPseudorandom, 4);
    SimulationResult a = simulate(bits, {1.3}, r, 77);
    SimulationResult b = simulate(bits, {1.3}, r, 77, 3);
    EXPECT_EQ(a.events, b.events);
    EXPECT_EQ(a.bin_counts, b.bin_counts);
    EXPECT_EQ(a.bin_counts, bin_events(a.events, a.model.timing));
    std::int64_t total = 0;
    for (auto c : a.bin_counts) total += c;
    EXPECT_EQ(static_cast<std::size_t>(total), a.events.size());
}

TEST(Simulate, decoded_error_tracks_exact_rate) {
    constexpr std::int64_t n = 400'000;
    ReceiverModel r = reference_model(n);
    for (double m : {0.5, 1.3}) {
        BitSequence bits = generate_bits(n, BitPattern::kPseudorandom, derive_seed(5, 0));
        SimulationResult sim = simulate(bits, {m}, r, derive_seed(5, 1));
        ErrorStats stats = compare(bits, decode(sim.bin_counts));
        double p = exact_error_rate({m}, r);
        EXPECT_NEAR(stats.e_total, p, 3 * stats.sigma_at(p)) << m;
    }
}
