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

#include "kennedy/bounds.h"

#include <cmath>
#include <string>

#include "kennedy/errors.h"

namespace kennedy {

void SignalParams::validate() const {
    if (!std::isfinite(mean_photons) || mean_photons < 0) {
        throw DomainError("mean photon number must be finite and >= 0, got " + std::to_string(mean_photons));
    }
}

void ImperfectionParams::validate() const {
    if (!(extinction_linear >= 1)) {
        throw DomainError("extinction must be >= 1, got " + std::to_string(extinction_linear));
    }
    if (!std::isfinite(dark_prob_per_bin) || dark_prob_per_bin < 0) {
        throw DomainError("dark counts per bin must be >= 0, got " + std::to_string(dark_prob_per_bin));
    }
}

double poisson_pmf(std::int64_t n, double mean) {
    if (n < 0) {
        throw DomainError("poisson_pmf: negative count");
    }
    if (!std::isfinite(mean) || mean < 0) {
        throw DomainError("poisson_pmf: mean must be finite and >= 0");
    }
    if (mean == 0) {
        return n == 0 ? 1.0 : 0.0;
    }
    double k = static_cast<double>(n);
    return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1));
}

double error_kennedy_ideal(const SignalParams &s) {
    s.validate();
    return 0.5 * std::exp(-4 * s.mean_photons);
}

double error_sql(const SignalParams &s) {
    s.validate();
    return 0.5 * std::erfc(std::sqrt(2 * s.mean_photons));
}

double error_helstrom(const SignalParams &s) {
    s.validate();
    // 1 - sqrt(1 - x) == x / (1 + sqrt(1 - x)), with 1 - x = -expm1(-4m).
    double x = std::exp(-4 * s.mean_photons);
    return 0.5 * x / (1 + std::sqrt(-std::expm1(-4 * s.mean_photons)));
}

double error_kennedy_real(const SignalParams &s, const ImperfectionParams &p) {
    s.validate();
    p.validate();
    double m = s.mean_photons;
    return 0.5 * std::exp(-4 * m) - 0.5 * std::expm1(-p.dark_prob_per_bin - 4 * m / p.extinction_linear);
}

double extinction_db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double extinction_linear_to_db(double linear) { return 10.0 * std::log10(linear); }

BoundsCurve compute_bounds_curve(std::span<const double> grid, const ImperfectionParams &p) {
    p.validate();
    BoundsCurve curve;
    curve.imperfections = p;
    curve.points.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!std::isfinite(grid[k]) || grid[k] < 0) {
            throw DomainError("bounds grid values must be finite and >= 0");
        }
        if (k > 0 && !(grid[k] > grid[k - 1])) {
            throw DomainError("bounds grid must be strictly increasing");
        }
        SignalParams s{grid[k]};
        BoundsCurve::Point pt{};
        pt.mean_photons = s.mean_photons;
        pt.e_kennedy_ideal = error_kennedy_ideal(s);
        pt.e_sql = error_sql(s);
        pt.e_helstrom = error_helstrom(s);
        pt.e_kennedy_real = error_kennedy_real(s, p);
        pt.norm_kennedy_ideal = pt.e_kennedy_ideal / pt.e_sql;
        pt.norm_helstrom = pt.e_helstrom / pt.e_sql;
        pt.norm_kennedy_real = pt.e_kennedy_real / pt.e_sql;
        curve.points.push_back(pt);
    }
    return curve;
}

double kennedy_sql_crossover(double lo, double hi, double tol) {
    auto f = [](double m) { return error_kennedy_ideal({m}) - error_sql({m}); };
    double flo = f(lo);
    if (flo * f(hi) > 0) {
        throw DomainError("kennedy_sql_crossover: root not bracketed");
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        double fmid = f(mid);
        if ((fmid > 0) == (flo > 0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace kennedy
