// Copyright 2026 The qcorr Authors
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

#include <gtest/gtest.h>

#include <cmath>

#include "qcorr/optimize.hpp"

namespace qcorr {
namespace {

TEST(NelderMead, MinimizesShiftedQuadratic) {
    const Objective f = [](std::span<const double> x) {
        return (x[0] - 1.0) * (x[0] - 1.0) + 4.0 * (x[1] + 2.0) * (x[1] + 2.0);
    };
    const double x0[] = {0.0, 0.0};
    const double steps[] = {0.5, 0.5};
    const OptimizeResult r = nelder_mead_minimize(f, x0, steps);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.x[0], 1.0, 1e-4);
    EXPECT_NEAR(r.x[1], -2.0, 1e-4);
    EXPECT_LT(r.value, 1e-9);
}

TEST(NelderMead, RosenbrockValley) {
    const Objective f = [](std::span<const double> x) {
        return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    const double x0[] = {-1.2, 1.0};
    const double steps[] = {0.1, 0.1};
    NelderMeadOptions opts;
    opts.value_tolerance = 1e-14;
    const OptimizeResult r = nelder_mead_minimize(f, x0, steps, opts);
    EXPECT_NEAR(r.x[0], 1.0, 1e-3);
    EXPECT_NEAR(r.x[1], 1.0, 2e-3);
}

TEST(NelderMead, RespectsEvaluationBudget) {
    std::size_t calls = 0;
    const Objective f = [&](std::span<const double> x) {
        ++calls;
        return std::sin(1e3 * x[0]) + x[0] * x[0];
    };
    const double x0[] = {3.0};
    const double steps[] = {1.0};
    NelderMeadOptions opts;
    opts.value_tolerance = 0.0;
    opts.max_evaluations = 57;
    const OptimizeResult r = nelder_mead_minimize(f, x0, steps, opts);
    EXPECT_FALSE(r.converged);
    EXPECT_LE(r.evaluations, 57u);
    EXPECT_EQ(calls, r.evaluations);
}

TEST(StagedOptimizer, FindsGlobalMinimumOfMultimodalFunction) {
    // Several local minima; the global one sits at (2.5, 4.0).
    const Objective f = [](std::span<const double> x) {
        const double a = std::cos(3.0 * x[0]) + std::cos(2.0 * x[1]);
        return a + 0.05 * ((x[0] - 2.5) * (x[0] - 2.5) + (x[1] - 4.0) * (x[1] - 4.0));
    };
    const Axis axes[] = {{0.0, 6.0, 32, false}, {0.0, 6.0, 32, false}};
    const OptimizeResult r = staged_minimize(f, axes);
    // Brute-force reference over a fine grid.
    double best = 1e9;
    for (int i = 0; i <= 2000; ++i) {
        for (int j = 0; j <= 2000; ++j) {
            const double x[] = {6.0 * i / 2000.0, 6.0 * j / 2000.0};
            best = std::min(best, f(x));
        }
    }
    EXPECT_LE(r.value, best + 1e-6);
}

TEST(StagedOptimizer, MaximizeMirrorsMinimize) {
    const Objective f = [](std::span<const double> x) { return std::cos(x[0] - 1.0); };
    const Axis axes[] = {{0.0, 2.0 * M_PI, 64, true}};
    const OptimizeResult r = staged_maximize(f, axes);
    EXPECT_NEAR(r.value, 1.0, 1e-10);
    EXPECT_NEAR(std::remainder(r.x[0] - 1.0, 2.0 * M_PI), 0.0, 1e-4);
}

TEST(Axis, PeriodicGridOmitsUpperEndpoint) {
    const Axis periodic{0.0, 1.0, 4, true};
    const Axis closed{0.0, 1.0, 5, false};
    EXPECT_DOUBLE_EQ(periodic.at(3), 0.75);
    EXPECT_DOUBLE_EQ(closed.at(4), 1.0);
    EXPECT_DOUBLE_EQ(periodic.spacing(), closed.spacing());
}

}  // namespace
}  // namespace qcorr
