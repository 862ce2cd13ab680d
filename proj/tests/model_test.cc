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

#include <gtest/gtest.h>

#include "kennedy/errors.h"

using namespace kennedy;

namespace {

ReceiverModel reference_model() {
    ReceiverModel r;
    r.timing.n_bits = 1'000'000;
    return r;
}

}  // namespace

TEST(TimingConfig, half_period_bins) {
    TimingConfig t;
    EXPECT_EQ(t.bin_duration_ps(), 5'000'000);
    t.rep_rate_hz = 1e9;
    EXPECT_EQ(t.bin_duration_ps(), 500);
    t.n_bits = 0;
    EXPECT_THROW(t.validate(), DomainError);
}

TEST(ModelValidation, rejects_out_of_range_components) {
    ReceiverModel r = reference_model();
    r.detector.efficiency = 1.1;
    EXPECT_THROW(r.validate(), DomainError);
    r = reference_model();
    r.detector.timing_resolution_ps = 0;
    EXPECT_THROW(r.validate(), DomainError);
    r = reference_model();
    r.displacement.transmissivity = 0;
    EXPECT_THROW(r.validate(), DomainError);
    r = reference_model();
    r.displacement.extinction_linear = 0.9;
    EXPECT_THROW(r.validate(), DomainError);
    EXPECT_THROW(photon_reference_from_string("photons"), DomainError);
}

TEST(MeanCounts, reference_values) {
    ReceiverModel r = reference_model();
    EXPECT_NEAR(r.dark_counts_per_bin(), 1.5e-3, 1e-15);
    EXPECT_NEAR(mean_counts(1, {1.3}, r), 5.2015, 1e-12);
    EXPECT_NEAR(mean_counts(0, {1.3}, r), 4.16e-3 + 1.5e-3, 1e-15);
    r.detector.dark_rate_hz = 0;
    EXPECT_EQ(mean_counts(0, {0.0}, r), 0.0);
    EXPECT_THROW(mean_counts(2, {1.0}, r), DomainError);
}

TEST(MeanCounts, bright_never_dimmer_than_nulled) {
    ReceiverModel r = reference_model();
    for (double c : {1.0, 10.0, 1250.0, 1e9}) {
        r.displacement.extinction_linear = c;
        for (int i = 0; i <= 100; ++i) {
            SignalParams s{i * 0.1};
            ASSERT_GE(mean_counts(1, s, r), mean_counts(0, s, r));
        }
    }
}

TEST(ClickProbability, values) {
    EXPECT_EQ(click_probability(0), 0.0);
    EXPECT_NEAR(click_probability(5.2015), 0.99449170422283729957, 1e-14);
    EXPECT_NEAR(click_probability(5.66e-3), 0.0056440123775360410914, 1e-16);
    EXPECT_THROW(click_probability(-1), DomainError);
}

TEST(ExactErrorRate, reference_value_and_degeneration) {
    ReceiverModel r = reference_model();
    EXPECT_NEAR(exact_error_rate({1.3}, r), 0.0055761540773493707606, 1e-14);

    r.detector.dark_rate_hz = 0;
    r.displacement.extinction_linear = INFINITY;
    for (int i = 0; i <= 100; ++i) {
        SignalParams s{i * 0.05};
        ASSERT_NEAR(exact_error_rate(s, r), error_kennedy_ideal(s), 1e-14);
    }
}

TEST(ExactErrorRate, close_to_fitted_form) {
    ReceiverModel r = reference_model();
    double dc = r.dark_counts_per_bin();
    for (int i = 0; i <= 500; ++i) {
        SignalParams s{i * 0.01};
        ASSERT_LE(std::abs(exact_error_rate(s, r) - error_kennedy_real(s, r.imperfections())), 0.5 * dc);
    }
}

TEST(ExactErrorRate, bounds) {
    ReceiverModel r = reference_model();
    double dc = r.dark_counts_per_bin();
    // Vacuum: 0.5 e^-dc + 0.5 (1 - e^-dc).
    EXPECT_NEAR(exact_error_rate({0.0}, r), 0.5, 1e-16);
    for (int i = 0; i <= 200; ++i) {
        double e = exact_error_rate({i * 0.05}, r);
        ASSERT_GE(e, 0.0);
        ASSERT_LT(e, 0.5 + dc);
    }
}

TEST(ExactErrorRate, source_referred_equals_scaled_detector_referred) {
    ReceiverModel src = reference_model();
    src.photon_reference = PhotonReference::kSourceReferred;
    ReceiverModel det = reference_model();
    double gain = src.detector.efficiency * src.displacement.transmissivity;
    for (double m : {0.0, 0.1, 0.37, 1.3, 2.9, 7.0}) {
        EXPECT_EQ(exact_error_rate({m}, src), exact_error_rate({m * gain}, det)) << m;
    }
}

TEST(SubSqlWindow, reference_parameters) {
    auto w = sub_sql_window(reference_model());
    ASSERT_TRUE(w.has_value());
    // mpmath roots of exact_error_rate == error_sql.
    EXPECT_NEAR(w->first, 0.39363208745681074124, 1e-9);
    EXPECT_NEAR(w->second, 1.7593974231573286252, 1e-9);
    EXPECT_LT(w->first, 0.5);
    EXPECT_GT(w->second, 1.6);
    ReceiverModel r = reference_model();
    for (double m : {w->first, w->second}) {
        EXPECT_LT(std::abs(exact_error_rate({m}, r) - error_sql({m})), 1e-12);
    }
}

TEST(SubSqlWindow, empty_at_low_extinction) {
    ReceiverModel r = reference_model();
    r.displacement.extinction_linear = 10.0;
    EXPECT_FALSE(sub_sql_window(r).has_value());
}

TEST(SubSqlWindow, ideal_receiver_extends_to_bracket_end) {
    ReceiverModel r = reference_model();
    r.detector.dark_rate_hz = 0;
    r.displacement.extinction_linear = 1e300;
    auto w = sub_sql_window(r);
    ASSERT_TRUE(w.has_value());
    EXPECT_GE(w->first, 0.35);
    EXPECT_LE(w->first, 0.45);
    EXPECT_NEAR(w->first, 0.38409927839541491255, 1e-9);
    EXPECT_EQ(w->second, 10.0);
}
