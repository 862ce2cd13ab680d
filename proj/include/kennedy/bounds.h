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

#ifndef KENNEDY_BOUNDS_H
#define KENNEDY_BOUNDS_H

#include <cstdint>
#include <span>
#include <vector>

namespace kennedy {

/// Input BPSK alphabet {|alpha>, |-alpha>} described by its mean photon
/// number m = alpha^2 per signal bin. Photon numbers are detector-referred:
/// they already include every loss between the source and the click.
struct SignalParams {
    double mean_photons = 0.0;

    void validate() const;
};

/// Receiver imperfections entering the closed-form Kennedy error: the
/// interference extinction c = I_max / I_min and the mean number of dark
/// counts per signal bin.
struct ImperfectionParams {
    double extinction_linear = 1250.0;
    double dark_prob_per_bin = 1.5e-3;

    void validate() const;
};

/// All four error rates evaluated on a grid of mean photon numbers, plus
/// their ratios to the standard quantum limit at the same point.
struct BoundsCurve {
    struct Point {
        double mean_photons;
        double e_kennedy_ideal;
        double e_sql;
        double e_helstrom;
        double e_kennedy_real;
        double norm_kennedy_ideal;
        double norm_helstrom;
        double norm_kennedy_real;
    };

    ImperfectionParams imperfections;
    std::vector<Point> points;
};

/// Poisson probability mass e^-mean * mean^n / n!, evaluated in log space so
/// that it stays finite for mean and n in the thousands.
double poisson_pmf(std::int64_t n, double mean);

/// Ideal Kennedy receiver: 0.5 * P_0(2 alpha) = 0.5 e^{-4m}.
double error_kennedy_ideal(const SignalParams &s);

/// Standard quantum limit (heterodyne): 0.5 erfc(sqrt(2m)).
double error_sql(const SignalParams &s);

/// Helstrom bound 0.5 (1 - sqrt(1 - e^{-4m})).
double error_helstrom(const SignalParams &s);

/// Kennedy receiver with finite extinction and dark counts in the form used
/// for the fitted theory curve:
///   0.5 e^{-4m} + 0.5 (1 - e^{-dc - 4m/c}).
/// The bright-bin term carries no dark counts. See exact_error_rate() in
/// model.h for the form that includes them.
double error_kennedy_real(const SignalParams &s, const ImperfectionParams &p);

double extinction_db_to_linear(double db);
double extinction_linear_to_db(double linear);

/// Evaluates every closed form on `grid`, which must be strictly increasing
/// and non-negative.
BoundsCurve compute_bounds_curve(std::span<const double> grid, const ImperfectionParams &p);

/// Root of error_kennedy_ideal(m) == error_sql(m), located by bisection on
/// [lo, hi] to absolute tolerance `tol`.
double kennedy_sql_crossover(double lo = 0.05, double hi = 2.0, double tol = 1e-12);

}  // namespace kennedy

#endif  // KENNEDY_BOUNDS_H
