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

#include "kennedy/fit.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "kennedy/errors.h"

namespace kennedy {
namespace {

using Vertex = std::array<double, 2>;  // (ln c, ln dc)

constexpr int kGridSteps = 41;
constexpr double kSimplexTolerance = 1e-10;
constexpr int kMaxEvaluations = 20000;

class LogObjective {
   public:
    LogObjective(std::span<const ErrorPoint> points, std::span<const double> weights, const FitBox &box)
        : points_(points), weights_(weights), box_(box) {}

    Vertex clamp(Vertex v) const {
        v[0] = std::clamp(v[0], std::log(box_.extinction_min), std::log(box_.extinction_max));
        v[1] = std::clamp(v[1], std::log(box_.dark_min), std::log(box_.dark_max));
        return v;
    }

    static ImperfectionParams params(const Vertex &v) { return {std::exp(v[0]), std::exp(v[1])}; }

    double operator()(const Vertex &v) {
        ++evaluations;
        ImperfectionParams p = params(v);
        double sum = 0;
        for (std::size_t k = 0; k < points_.size(); ++k) {
            double model = error_kennedy_real({points_[k].mean_photons}, p);
            double r = std::log(model) - std::log(points_[k].error);
            sum += (weights_.empty() ? 1.0 : weights_[k]) * r * r;
        }
        return sum;
    }

    int evaluations = 0;

   private:
    std::span<const ErrorPoint> points_;
    std::span<const double> weights_;
    FitBox box_;
};

// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2)
// with every trial point clamped into the search box.
Vertex nelder_mead(LogObjective &f, Vertex start, Vertex step) {
    std::array<Vertex, 3> x = {start, start, start};
    x[1][0] += step[0];
    x[2][1] += step[1];
    std::array<double, 3> fx;
    for (int i = 0; i < 3; ++i) {
        x[i] = f.clamp(x[i]);
        fx[i] = f(x[i]);
    }

    while (f.evaluations < kMaxEvaluations) {
        std::array<int, 3> order = {0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        int best = order[0], mid = order[1], worst = order[2];

        double diameter = 0;
        for (int i : {mid, worst}) {
            diameter = std::max({diameter, std::abs(x[i][0] - x[best][0]), std::abs(x[i][1] - x[best][1])});
        }
        if (diameter < kSimplexTolerance) {
            return x[best];
        }

        Vertex centroid = {0.5 * (x[best][0] + x[mid][0]), 0.5 * (x[best][1] + x[mid][1])};
        auto along = [&](double t) {
            return f.clamp({centroid[0] + t * (x[worst][0] - centroid[0]),
                            centroid[1] + t * (x[worst][1] - centroid[1])});
        };

        Vertex reflected = along(-1.0);
        double f_reflected = f(reflected);
        if (f_reflected < fx[best]) {
            Vertex expanded = along(-2.0);
            double f_expanded = f(expanded);
            if (f_expanded < f_reflected) {
                x[worst] = expanded;
                fx[worst] = f_expanded;
            } else {
                x[worst] = reflected;
                fx[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < fx[mid]) {
            x[worst] = reflected;
            fx[worst] = f_reflected;
            continue;
        }
        Vertex contracted = f_reflected < fx[worst] ? along(-0.5) : along(0.5);
        double f_contracted = f(contracted);
        if (f_contracted < std::min(f_reflected, fx[worst])) {
            x[worst] = contracted;
            fx[worst] = f_contracted;
            continue;
        }
        for (int i : {mid, worst}) {
            x[i] = f.clamp({0.5 * (x[i][0] + x[best][0]), 0.5 * (x[i][1] + x[best][1])});
            fx[i] = f(x[i]);
        }
    }
    int best = static_cast<int>(std::min_element(fx.begin(), fx.end()) - fx.begin());
    return x[best];
}

}  // namespace

FitResult fit_imperfections(std::span<const ErrorPoint> points, std::optional<std::span<const double>> weights,
                            const FitBox &box) {
    if (points.size() < 2) {
        throw FitUnderdetermined("fit needs at least 2 points, got " + std::to_string(points.size()));
    }
    for (const ErrorPoint &p : points) {
        if (!(p.mean_photons > 0) || !std::isfinite(p.mean_photons)) {
            throw DomainError("fit points need m > 0");
        }
        if (!(p.error > 0 && p.error < 1)) {
            throw DomainError("fit points need error in (0, 1)");
        }
    }
    if (std::all_of(points.begin(), points.end(),
                    [&](const ErrorPoint &p) { return p.mean_photons == points.front().mean_photons; })) {
        throw FitUnderdetermined("fit points all share the same m");
    }
    std::span<const double> w;
    if (weights) {
        w = *weights;
        if (w.size() != points.size()) {
            throw DomainError("fit weights and points differ in length");
        }
        if (std::any_of(w.begin(), w.end(), [](double v) { return !(v >= 0) || !std::isfinite(v); })) {
            throw DomainError("fit weights must be finite and >= 0");
        }
    }
    if (!(box.extinction_min >= 1 && box.extinction_max > box.extinction_min && box.dark_min > 0 &&
          box.dark_max > box.dark_min)) {
        throw DomainError("invalid fit box");
    }

    LogObjective objective(points, w, box);
    double lc0 = std::log(box.extinction_min), lc1 = std::log(box.extinction_max);
    double ld0 = std::log(box.dark_min), ld1 = std::log(box.dark_max);
    Vertex step = {(lc1 - lc0) / (kGridSteps - 1), (ld1 - ld0) / (kGridSteps - 1)};

    Vertex best{};
    double f_best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGridSteps; ++i) {
        for (int j = 0; j < kGridSteps; ++j) {
            Vertex v = {lc0 + i * step[0], ld0 + j * step[1]};
            double fv = objective(v);
            if (fv < f_best) {
                f_best = fv;
                best = v;
            }
        }
    }
    objective.evaluations = 0;

    // A restart from the converged point guards against a collapsed simplex.
    best = nelder_mead(objective, best, step);
    best = nelder_mead(objective, best, {0.05, 0.05});

    FitResult result;
    result.params = LogObjective::params(best);
    int evaluations = objective.evaluations;
    result.residual = objective(best);
    result.evaluations = evaluations;
    return result;
}

}  // namespace kennedy
