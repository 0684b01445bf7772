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

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qcorr {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
    /// Stop when max f - min f over the simplex falls below this.
    double value_tolerance = 1e-10;
    std::size_t max_evaluations = 200000;
};

struct OptimizeResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Minimizes `f` starting from an axis-aligned simplex around `x0` with edge
/// lengths `steps`. Reflection 1, expansion 2, contraction 1/2, shrink 1/2.
OptimizeResult nelder_mead_minimize(const Objective &f, std::span<const double> x0, std::span<const double> steps,
                                    const NelderMeadOptions &options = {});

/// One coordinate axis of a search box.
struct Axis {
    double lower = 0.0;
    double upper = 1.0;
    std::size_t points = 16;
    /// Periodic axes omit the upper endpoint from the grid.
    bool periodic = false;

    double spacing() const;
    double at(std::size_t i) const;
};

struct StagedOptions {
    std::size_t refine_starts = 5;
    double value_tolerance = 1e-10;
    std::size_t max_evaluations = 200000;
};

/// Coarse uniform grid followed by Nelder-Mead refinement from the best
/// `refine_starts` grid points. Refinement is unconstrained; objectives are
/// expected to be defined (typically periodic) outside the box. The evaluation
/// budget covers the grid and all refinements.
OptimizeResult staged_minimize(const Objective &f, std::span<const Axis> axes, const StagedOptions &options = {});

/// Same as staged_minimize on -f; the returned value is the maximum of f.
OptimizeResult staged_maximize(const Objective &f, std::span<const Axis> axes, const StagedOptions &options = {});

}  // namespace qcorr
