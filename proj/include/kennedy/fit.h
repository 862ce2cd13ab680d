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

#ifndef KENNEDY_FIT_H
#define KENNEDY_FIT_H

#include <optional>
#include <span>
#include <vector>

#include "kennedy/bounds.h"

namespace kennedy {

struct ErrorPoint {
    double mean_photons;
    double error;
};

struct FitResult {
    ImperfectionParams params;
    /// Weighted sum of squared log residuals at the optimum.
    double residual;
    /// Objective evaluations spent in the simplex refinement.
    int evaluations;
};

/// Search box for the fit. Both parameters are searched on a log scale.
struct FitBox {
    double extinction_min = 10.0;
    double extinction_max = 1e6;
    double dark_min = 1e-6;
    double dark_max = 1e-1;
};

/// Fits (c, dc) of error_kennedy_real() to measured error points by least
/// squares on log(error). A coarse log-spaced grid over `box` seeds a
/// Nelder-Mead simplex in (log c, log dc), clamped to the box.
///
/// Requires at least two points with m > 0, error in (0, 1) and at least two
/// distinct m values; throws FitUnderdetermined otherwise (DomainError for
/// out-of-range values). `weights`, when given, must match `points` in size.
FitResult fit_imperfections(std::span<const ErrorPoint> points,
                            std::optional<std::span<const double>> weights = std::nullopt,
                            const FitBox &box = {});

}  // namespace kennedy

#endif  // KENNEDY_FIT_H
