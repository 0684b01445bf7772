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

#include "qcorr/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qcorr/errors.hpp"

namespace qcorr {

OptimizeResult nelder_mead_minimize(const Objective &f, std::span<const double> x0, std::span<const double> steps,
                                    const NelderMeadOptions &options) {
    const std::size_t n = x0.size();
    if (steps.size() != n || n == 0) {
        throw InvalidInput("nelder_mead_minimize: start point and steps must have the same non-zero length");
    }
    std::size_t evals = 0;
    auto eval = [&](const std::vector<double> &x) {
        if (evals >= options.max_evaluations) {
            return std::numeric_limits<double>::infinity();
        }
        ++evals;
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(x0.begin(), x0.end()));
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += steps[i];
    }
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = eval(simplex[i]);
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    bool converged = false;
    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];
        if (values[worst] - values[best] < options.value_tolerance) {
            converged = true;
            break;
        }
        if (evals >= options.max_evaluations) {
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) {
                continue;
            }
            for (std::size_t d = 0; d < n; ++d) {
                centroid[d] += simplex[i][d];
            }
        }
        for (double &c : centroid) {
            c /= static_cast<double>(n);
        }
        auto along = [&](double t, std::vector<double> &out) {
            for (std::size_t d = 0; d < n; ++d) {
                out[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
            }
        };

        along(-1.0, trial);
        const double reflected = eval(trial);
        if (reflected < values[best]) {
            along(-2.0, trial2);
            const double expanded = eval(trial2);
            if (expanded < reflected) {
                simplex[worst] = trial2;
                values[worst] = expanded;
            } else {
                simplex[worst] = trial;
                values[worst] = reflected;
            }
            continue;
        }
        if (reflected < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = reflected;
            continue;
        }
        const bool outside = reflected < values[worst];
        along(outside ? -0.5 : 0.5, trial2);
        const double contracted = eval(trial2);
        if (contracted < (outside ? reflected : values[worst])) {
            simplex[worst] = trial2;
            values[worst] = contracted;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) {
                continue;
            }
            for (std::size_t d = 0; d < n; ++d) {
                simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
            }
            values[i] = eval(simplex[i]);
        }
    }
    const std::size_t best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    return {simplex[best], values[best], evals, converged};
}

double Axis::spacing() const {
    if (points < 2) {
        return upper - lower;
    }
    return periodic ? (upper - lower) / static_cast<double>(points)
                    : (upper - lower) / static_cast<double>(points - 1);
}

double Axis::at(std::size_t i) const {
    if (points < 2) {
        return 0.5 * (lower + upper);
    }
    return lower + spacing() * static_cast<double>(i);
}

OptimizeResult staged_minimize(const Objective &f, std::span<const Axis> axes, const StagedOptions &options) {
    const std::size_t n = axes.size();
    if (n == 0) {
        throw InvalidInput("staged_minimize: at least one axis required");
    }
    std::size_t total = 1;
    for (const Axis &a : axes) {
        if (a.points == 0) {
            throw InvalidInput("staged_minimize: axis with zero grid points");
        }
        total *= a.points;
    }
    if (total > options.max_evaluations) {
        throw InvalidInput("staged_minimize: grid larger than evaluation budget");
    }

    // Keep the best `refine_starts` grid points (value, flat index).
    const std::size_t keep = std::max<std::size_t>(1, options.refine_starts);
    std::vector<std::pair<double, std::size_t>> best;
    best.reserve(keep + 1);
    std::vector<double> x(n);
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t d = n; d-- > 0;) {
            idx[d] = rem % axes[d].points;
            rem /= axes[d].points;
            x[d] = axes[d].at(idx[d]);
        }
        double v = f(x);
        if (std::isnan(v)) {
            v = std::numeric_limits<double>::infinity();
        }
        if (best.size() < keep || v < best.back().first) {
            auto pos = std::upper_bound(best.begin(), best.end(), std::make_pair(v, flat));
            best.insert(pos, {v, flat});
            if (best.size() > keep) {
                best.pop_back();
            }
        }
    }

    OptimizeResult result;
    result.evaluations = total;
    result.value = std::numeric_limits<double>::infinity();
    result.converged = true;
    std::vector<double> steps(n);
    for (std::size_t d = 0; d < n; ++d) {
        steps[d] = 0.5 * axes[d].spacing();
    }
    for (const auto &[value, flat] : best) {
        std::size_t rem = flat;
        for (std::size_t d = n; d-- > 0;) {
            x[d] = axes[d].at(rem % axes[d].points);
            rem /= axes[d].points;
        }
        if (value < result.value) {
            result.value = value;
            result.x = x;
        }
        if (result.evaluations >= options.max_evaluations) {
            result.converged = false;
            break;
        }
        NelderMeadOptions nm{options.value_tolerance, options.max_evaluations - result.evaluations};
        OptimizeResult local = nelder_mead_minimize(f, x, steps, nm);
        result.evaluations += local.evaluations;
        result.converged = result.converged && local.converged;
        if (local.value < result.value) {
            result.value = local.value;
            result.x = local.x;
        }
    }
    return result;
}

OptimizeResult staged_maximize(const Objective &f, std::span<const Axis> axes, const StagedOptions &options) {
    OptimizeResult r = staged_minimize([&f](std::span<const double> x) { return -f(x); }, axes, options);
    r.value = -r.value;
    return r;
}

}  // namespace qcorr
