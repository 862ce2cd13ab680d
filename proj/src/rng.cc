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

#include "kennedy/rng.h"

#include <cmath>

namespace kennedy {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ (index * 0x9E3779B97F4A7C15ULL + 1));
}

double uniform01(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

namespace {

std::int64_t poisson_inversion(Rng &rng, double mean) {
    double u = uniform01(rng);
    double p = std::exp(-mean);
    double cdf = p;
    std::int64_t n = 0;
    // The cap only triggers when rounding leaves cdf short of u near 1.
    while (u >= cdf && n < 1000) {
        ++n;
        p *= mean / static_cast<double>(n);
        cdf += p;
    }
    return n;
}

std::int64_t poisson_ptrs(Rng &rng, double mean) {
    const double smu = std::sqrt(mean);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2);
    const double log_mean = std::log(mean);
    for (;;) {
        double u = uniform01(rng) - 0.5;
        double v = uniform01(rng);
        double us = 0.5 - std::abs(u);
        double k = std::floor((2 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) {
            return static_cast<std::int64_t>(k);
        }
        if (k < 0 || (us < 0.013 && v > us)) {
            continue;
        }
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -mean + k * log_mean - std::lgamma(k + 1)) {
            return static_cast<std::int64_t>(k);
        }
    }
}

}  // namespace

std::int64_t sample_poisson(Rng &rng, double mean) {
    if (mean <= 0) {
        return 0;
    }
    return mean < 30 ? poisson_inversion(rng, mean) : poisson_ptrs(rng, mean);
}

}  // namespace kennedy
