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

#include "qcorr/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qcorr/errors.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/parallel.hpp"

namespace qcorr {

namespace {

constexpr double kEntropyPenalty = 1e3;

void require_params(Family f, std::span<const double> params) {
    if (params.size() != family_parameters(f).size()) {
        std::ostringstream os;
        os << family_name(f) << " expects " << family_parameters(f).size() << " parameters, got " << params.size();
        throw InvalidInput(os.str());
    }
}

struct Domain {
    double lo;
    double hi;
};

std::vector<Domain> family_domain(Family f) {
    switch (f) {
        case Family::Werner:
            return {{0.0, 1.0}};
        case Family::MemsRee:
            return {{0.0, 1.0 / 3.0}, {0.0, 1.0}};
        case Family::RhoDown:
            return {{0.0, 0.5}};
        case Family::RhoUp:
            return {{0.0, 1.0}, {0.0, 1.0}};
        case Family::BellPhi:
            return {{0.0, 1.0}};
    }
    return {};
}

std::vector<std::pair<std::string, double>> named(Family f, std::span<const double> params) {
    const auto names = family_parameters(f);
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        out.emplace_back(names[i], params[i]);
    }
    return out;
}

// ---- X-state parameterization -------------------------------------------------
//
// Five angles map onto the X pattern with real non-negative coherences:
//   rho11 = c0, rho22 = s0 c1, rho33 = s0 s1 c2, rho44 = s0 s1 s2   (c = cos^2, s = sin^2)
//   rho14 = sin^2(x3) sqrt(rho11 rho44), rho23 = sin^2(x4) sqrt(rho22 rho33)
// Every real 5-vector is a valid state, so Nelder-Mead runs unconstrained.

constexpr std::size_t kXDims = 5;

XStateParams xstate_from_angles(std::span<const double> x) {
    auto c2 = [](double v) { return std::cos(v) * std::cos(v); };
    auto s2 = [](double v) { return std::sin(v) * std::sin(v); };
    XStateParams p;
    p.rho11 = c2(x[0]);
    p.rho22 = s2(x[0]) * c2(x[1]);
    p.rho33 = s2(x[0]) * s2(x[1]) * c2(x[2]);
    p.rho44 = s2(x[0]) * s2(x[1]) * s2(x[2]);
    const double total = p.rho11 + p.rho22 + p.rho33 + p.rho44;
    p.rho11 /= total;
    p.rho22 /= total;
    p.rho33 /= total;
    p.rho44 /= total;
    p.rho14 = s2(x[3]) * std::sqrt(p.rho11 * p.rho44);
    p.rho23 = s2(x[4]) * std::sqrt(p.rho22 * p.rho33);
    return p;
}

std::vector<double> angles_from_xstate(const XStateParams &p) {
    auto safe_acos_sqrt = [](double num, double den) {
        return den > 0.0 ? std::acos(std::sqrt(std::clamp(num / den, 0.0, 1.0))) : 0.0;
    };
    auto safe_asin_sqrt = [](double num, double den) {
        return den > 0.0 ? std::asin(std::sqrt(std::clamp(num / den, 0.0, 1.0))) : 0.0;
    };
    std::vector<double> x(kXDims);
    x[0] = safe_acos_sqrt(p.rho11, 1.0);
    x[1] = safe_acos_sqrt(p.rho22, p.rho22 + p.rho33 + p.rho44);
    x[2] = safe_acos_sqrt(p.rho33, p.rho33 + p.rho44);
    x[3] = safe_asin_sqrt(std::abs(p.rho14), std::sqrt(p.rho11 * p.rho44));
    x[4] = safe_asin_sqrt(std::abs(p.rho23), std::sqrt(p.rho22 * p.rho33));
    return x;
}

XStateParams xstate_of(const DensityMatrix &rho) {
    return {rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(), rho(3, 3).real(), rho(0, 3), rho(1, 2)};
}

/// Cheaper measurement search used while exploring; accepted points are
/// re-evaluated with the caller's full options.
MeasureOptions exploration_options() {
    MeasureOptions o;
    o.single_grid = 16;
    o.refine_starts = 3;
    o.max_evaluations = 20000;
    return o;
}

struct Candidate {
    std::vector<double> angles;
    double S = 0.0;
    double D = 0.0;
    double score = -std::numeric_limits<double>::infinity();
};

Candidate evaluate_candidate(std::span<const double> angles, double target, const MeasureOptions &options) {
    Candidate c;
    c.angles.assign(angles.begin(), angles.end());
    const DensityMatrix rho = xstate(xstate_from_angles(angles));
    const CorrelationReport r = discord_report(rho, options);
    c.S = r.S;
    c.D = r.D_sym;
    c.score = r.D_sym - kEntropyPenalty * (r.S - target) * (r.S - target);
    return c;
}

Candidate refine_candidate(const Candidate &start, double target, const MeasureOptions &options) {
    const Objective f = [&](std::span<const double> x) { return -evaluate_candidate(x, target, options).score; };
    const std::vector<double> steps(kXDims, 0.15);
    const OptimizeResult r = nelder_mead_minimize(f, start.angles, steps, {1e-9, 3000});
    Candidate refined = evaluate_candidate(r.x, target, options);
    return refined.score > start.score ? refined : start;
}

/// Entropy of rho^R(a, r) from its spectrum.
double mems_ree_entropy(double a, double r) {
    const double w[] = {0.5 * (1.0 - a + r), std::max(0.0, 0.5 * (1.0 - a - r)), a};
    return shannon_entropy(w);
}

/// r in [0, 1-a] with S(rho^R(a, r)) = entropy, if one exists (S decreases in r).
std::optional<double> mems_ree_r_for_entropy(double a, double entropy) {
    double lo = 0.0;
    double hi = 1.0 - a;
    const double s_lo = mems_ree_entropy(a, lo);
    const double s_hi = mems_ree_entropy(a, hi);
    if (entropy > s_lo + 1e-12 || entropy < s_hi - 1e-12) {
        return std::nullopt;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mems_ree_entropy(a, mid) > entropy) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// q in [0, 1/2] with h(q) = entropy, if entropy <= 1.
std::optional<double> binary_entropy_inverse(double entropy) {
    if (entropy < 0.0 || entropy > 1.0) {
        return std::nullopt;
    }
    double lo = 0.0;
    double hi = 0.5;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < entropy) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<XStateParams> family_seeds(double target) {
    std::vector<XStateParams> seeds;
    seeds.push_back(xstate_of(bell_phi(0.5)));
    if (target <= 2.0) {
        seeds.push_back(xstate_of(werner(werner_eps_for_entropy(target))));
    }
    for (double a : {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 1.0 / 3.0}) {
        if (auto r = mems_ree_r_for_entropy(a, target)) {
            seeds.push_back(xstate_of(mems_ree(a, std::clamp(*r, 0.0, 1.0 - a))));
        }
    }
    if (auto q = binary_entropy_inverse(target)) {
        seeds.push_back(xstate_of(rho_down(*q)));
    }
    return seeds;
}

XStateParams random_xstate(std::mt19937_64 &rng) {
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double w[4];
    double total = 0.0;
    for (double &v : w) {
        v = expo(rng);
        total += v;
    }
    XStateParams p{w[0] / total, w[1] / total, w[2] / total, w[3] / total, 0.0, 0.0};
    p.rho14 = unit(rng) * std::sqrt(p.rho11 * p.rho44);
    p.rho23 = unit(rng) * std::sqrt(p.rho22 * p.rho33);
    return p;
}

struct BinSearch {
    MncmsBin bin;
    std::vector<double> best_angles;
};

/// Refines the given starts toward the bin centre and keeps the best accepted point.
void search_bin(BinSearch &state, const std::vector<Candidate> &starts, std::size_t refine_count,
                const MeasureOptions &explore, const MeasureOptions &full) {
    const double center = 0.5 * (state.bin.lower + state.bin.upper);
    const double half = 0.5 * (state.bin.upper - state.bin.lower);
    std::vector<Candidate> ranked = starts;
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const Candidate &x, const Candidate &y) { return x.score > y.score; });

    std::vector<Candidate> pool;
    for (std::size_t k = 0; k < ranked.size(); ++k) {
        if (k < refine_count) {
            pool.push_back(refine_candidate(ranked[k], center, explore));
        }
        pool.push_back(ranked[k]);
    }
    std::stable_sort(pool.begin(), pool.end(), [](const Candidate &x, const Candidate &y) { return x.D > y.D; });
    // Re-evaluate the most promising accepted points with the full measurement search.
    std::size_t confirmed = 0;
    for (const Candidate &c : pool) {
        if (std::abs(c.S - center) >= half && !(state.bin.lower == 0.0 && c.S < center)) {
            continue;
        }
        const XStateParams params = xstate_from_angles(c.angles);
        const CorrelationReport r = discord_report(xstate(params), full);
        const bool in_bin = std::abs(r.S - center) < half || (state.bin.lower == 0.0 && r.S < center);
        if (in_bin && (!state.bin.present || r.D_sym > state.bin.D_sym)) {
            state.bin.present = true;
            state.bin.S = r.S;
            state.bin.D_sym = r.D_sym;
            state.bin.argmax = params;
            state.best_angles = c.angles;
        }
        if (++confirmed >= 4) {
            break;
        }
    }
}

double sample_mean(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

MeanStd mean_std(const std::vector<double> &v) {
    MeanStd out;
    out.mean = sample_mean(v);
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) {
            ss += (x - out.mean) * (x - out.mean);
        }
        out.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return out;
}

std::size_t bin_index(double value, double lo, double hi, std::size_t count) {
    if (value <= lo) {
        return 0;
    }
    if (value >= hi) {
        return count - 1;
    }
    return std::min(count - 1, static_cast<std::size_t>((value - lo) / (hi - lo) * static_cast<double>(count)));
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::Werner:
            return "werner";
        case Family::MemsRee:
            return "mems_ree";
        case Family::RhoDown:
            return "rho_down";
        case Family::RhoUp:
            return "rho_up";
        case Family::BellPhi:
            return "bell_phi";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    for (Family f : {Family::Werner, Family::MemsRee, Family::RhoDown, Family::RhoUp, Family::BellPhi}) {
        if (family_name(f) == name) {
            return f;
        }
    }
    throw InvalidInput("unknown family '" + std::string(name) +
                       "' (expected werner, mems_ree, rho_down, rho_up or bell_phi)");
}

std::vector<std::string> family_parameters(Family f) {
    switch (f) {
        case Family::Werner:
            return {"eps"};
        case Family::MemsRee:
            return {"a", "r"};
        case Family::RhoDown:
            return {"q"};
        case Family::RhoUp:
            return {"eps", "p"};
        case Family::BellPhi:
            return {"p"};
    }
    return {};
}

DensityMatrix make_family_state(Family f, std::span<const double> params) {
    require_params(f, params);
    switch (f) {
        case Family::Werner:
            return werner(params[0]);
        case Family::MemsRee:
            return mems_ree(params[0], params[1]);
        case Family::RhoDown:
            return rho_down(params[0]);
        case Family::RhoUp:
            return rho_up(params[0], params[1]);
        case Family::BellPhi:
            return bell_phi(params[0], +1);
    }
    throw InvalidInput("unknown family");
}

std::vector<double> clip_to_domain(Family f, std::span<const double> params) {
    require_params(f, params);
    const auto dom = family_domain(f);
    std::vector<double> out(params.begin(), params.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::clamp(out[i], dom[i].lo, dom[i].hi);
    }
    if (f == Family::MemsRee) {
        out[1] = std::min(out[1], 1.0 - out[0]);
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    if (n > 1) {
        out.back() = hi;
    }
    return out;
}

std::vector<SweepRecord> sweep_family(Family f, const std::vector<std::vector<double>> &grid, std::size_t jobs,
                                      const MeasureOptions &options) {
    // Validate the whole grid before spending time on measures.
    std::vector<DensityMatrix> states;
    states.reserve(grid.size());
    for (const auto &point : grid) {
        states.push_back(make_family_state(f, point));
    }
    std::vector<SweepRecord> out(grid.size());
    parallel_for(grid.size(), resolve_jobs(jobs), [&](std::size_t i) {
        out[i] = SweepRecord{std::string(family_name(f)), named(f, grid[i]), correlation_report(states[i], options)};
    });
    return out;
}

std::vector<MncmsBin> mncms_envelope(const EnvelopeConfig &config) {
    if (config.bin_axis != BinAxis::Entropy) {
        throw InvalidInput("mncms_envelope requires bin_axis = entropy");
    }
    if (config.bin_count == 0) {
        throw InvalidInput("bin_count must be positive");
    }
    const std::size_t n = config.bin_count;
    const double width = 2.0 / static_cast<double>(n);
    const MeasureOptions explore = exploration_options();
    const MeasureOptions full{};

    std::vector<BinSearch> bins(n);
    parallel_for(n, resolve_jobs(config.jobs), [&](std::size_t i) {
        BinSearch &state = bins[i];
        state.bin.lower = width * static_cast<double>(i);
        state.bin.upper = i + 1 == n ? 2.0 : width * static_cast<double>(i + 1);
        const double center = 0.5 * (state.bin.lower + state.bin.upper);

        std::vector<Candidate> starts;
        for (const XStateParams &p : family_seeds(center)) {
            starts.push_back(evaluate_candidate(angles_from_xstate(p), center, explore));
        }
        std::mt19937_64 rng = make_rng(derive_seed(config.seed, i));
        for (std::size_t k = 0; k < config.samples_per_bin; ++k) {
            starts.push_back(evaluate_candidate(angles_from_xstate(random_xstate(rng)), center, explore));
        }
        search_bin(state, starts, 3, explore, full);
    });

    // Post-pass: re-seed each bin from its neighbours' best points until stable.
    for (int round = 0; round < 3; ++round) {
        const std::vector<BinSearch> snapshot = bins;
        std::vector<char> improved(n, 0);
        parallel_for(n, resolve_jobs(config.jobs), [&](std::size_t i) {
            const double center = 0.5 * (bins[i].bin.lower + bins[i].bin.upper);
            std::vector<Candidate> starts;
            for (std::size_t j : {i - 1, i + 1}) {
                if (j < n && snapshot[j].bin.present) {
                    starts.push_back(evaluate_candidate(snapshot[j].best_angles, center, explore));
                }
            }
            if (starts.empty()) {
                return;
            }
            const double before = bins[i].bin.present ? bins[i].bin.D_sym : -1.0;
            search_bin(bins[i], starts, starts.size(), explore, full);
            improved[i] = bins[i].bin.D_sym > before + 1e-6;
        });
        if (std::none_of(improved.begin(), improved.end(), [](char c) { return c != 0; })) {
            break;
        }
    }

    std::vector<MncmsBin> out;
    out.reserve(n);
    for (const BinSearch &b : bins) {
        out.push_back(b.bin);
    }
    return out;
}

std::vector<AmidBin> amid_plane_bounds(const EnvelopeConfig &config) {
    if (config.bin_axis != BinAxis::Discord) {
        throw InvalidInput("amid_plane_bounds requires bin_axis = discord");
    }
    if (config.bin_count == 0) {
        throw InvalidInput("bin_count must be positive");
    }
    const std::size_t n = config.bin_count;
    const std::size_t side =
        std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(std::sqrt(double(n * config.samples_per_bin)))));
    const std::size_t lower_points = std::max<std::size_t>(21, 2 * n + 1);

    struct Job {
        Family family;
        std::vector<double> params;
        bool upper;
    };
    std::vector<Job> work;
    for (double p : linspace(0.5, 1.0, lower_points)) {
        work.push_back({Family::BellPhi, {p}, false});
    }
    for (double eps : linspace(0.0, 1.0, lower_points)) {
        work.push_back({Family::Werner, {eps}, false});
    }
    for (double q : linspace(0.0, 0.5, lower_points)) {
        work.push_back({Family::RhoDown, {q}, false});
    }
    for (double eps : linspace(0.0, 1.0, side)) {
        for (double p : linspace(0.0, 1.0, side)) {
            work.push_back({Family::RhoUp, {eps, p}, true});
        }
    }
    std::vector<CorrelationReport> reports(work.size());
    parallel_for(work.size(), resolve_jobs(config.jobs), [&](std::size_t i) {
        reports[i] = correlation_report(make_family_state(work[i].family, work[i].params));
    });

    std::vector<AmidBin> bins(n);
    for (std::size_t i = 0; i < n; ++i) {
        bins[i].lower = static_cast<double>(i) / static_cast<double>(n);
        bins[i].upper = static_cast<double>(i + 1) / static_cast<double>(n);
        bins[i].min_A = std::numeric_limits<double>::infinity();
        bins[i].max_A = -std::numeric_limits<double>::infinity();
    }
    std::vector<char> has_lower(n, 0);
    for (std::size_t k = 0; k < work.size(); ++k) {
        const CorrelationReport &r = reports[k];
        AmidBin &b = bins[bin_index(r.D_sym, 0.0, 1.0, n)];
        b.present = true;
        if (!work[k].upper) {
            has_lower[&b - bins.data()] = 1;
            if (r.A < b.min_A) {
                b.min_A = r.A;
                b.D_at_min = r.D_sym;
                b.argmin_family = std::string(family_name(work[k].family));
            }
        }
        if (r.A > b.max_A) {
            b.max_A = r.A;
            b.D_at_max = r.D_sym;
            b.argmax = named(work[k].family, work[k].params);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        AmidBin &b = bins[i];
        if (!b.present) {
            b.min_A = b.max_A = 0.0;
        } else if (!has_lower[i]) {
            // Only rho_up points landed here; the lower bound falls back to the smallest seen.
            b.min_A = b.max_A;
            for (std::size_t k = 0; k < work.size(); ++k) {
                if (bin_index(reports[k].D_sym, 0.0, 1.0, n) == i && reports[k].A < b.min_A) {
                    b.min_A = reports[k].A;
                    b.D_at_min = reports[k].D_sym;
                    b.argmin_family = std::string(family_name(work[k].family));
                }
            }
        }
    }
    return bins;
}

std::vector<SweepRecord> scatter_random(std::size_t n, std::uint64_t seed, std::size_t jobs,
                                        const MeasureOptions &options) {
    if (n == 0) {
        throw InvalidInput("scatter_random needs n >= 1");
    }
    std::vector<SweepRecord> out(n);
    parallel_for(n, resolve_jobs(jobs), [&](std::size_t i) {
        const std::uint64_t item_seed = derive_seed(seed, i);
        out[i] = SweepRecord{"random",
                             {{"seed", static_cast<double>(item_seed)}},
                             correlation_report(random_state(item_seed), options)};
    });
    return out;
}

Spread monte_carlo_spread(Family f, std::span<const double> params, std::span<const double> sigmas, std::size_t n,
                          std::uint64_t seed, std::size_t jobs, const MeasureOptions &options) {
    require_params(f, params);
    if (sigmas.size() != params.size()) {
        throw InvalidInput("monte_carlo_spread: one sigma per parameter required");
    }
    if (std::any_of(sigmas.begin(), sigmas.end(), [](double s) { return !(s >= 0.0); })) {
        throw InvalidInput("monte_carlo_spread: sigmas must be non-negative");
    }
    if (n == 0) {
        throw InvalidInput("monte_carlo_spread: n must be positive");
    }
    make_family_state(f, params);

    std::mt19937_64 rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::vector<double>> samples(n);
    for (auto &s : samples) {
        s.assign(params.begin(), params.end());
        for (std::size_t k = 0; k < s.size(); ++k) {
            s[k] += sigmas[k] * normal(rng);
        }
        s = clip_to_domain(f, s);
    }
    std::vector<double> entropies(n), discords(n), amids(n);
    parallel_for(n, resolve_jobs(jobs), [&](std::size_t i) {
        const CorrelationReport r = correlation_report(make_family_state(f, samples[i]), options);
        entropies[i] = r.S;
        discords[i] = r.D_sym;
        amids[i] = r.A;
    });
    return {mean_std(entropies), mean_std(discords), mean_std(amids), n};
}

double werner_eps_for_entropy(double entropy) {
    if (!(entropy >= 0.0 && entropy <= 2.0)) {
        throw InvalidInput("Werner entropy must lie in [0, 2]");
    }
    auto s = [](double eps) {
        const double w[] = {1.0 - 0.75 * eps, 0.25 * eps, 0.25 * eps, 0.25 * eps};
        return shannon_entropy(w);
    };
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (s(mid) < entropy) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::optional<FamilyPoint> mems_ree_best_at_entropy(double entropy, const MeasureOptions &options) {
    auto evaluate = [&](double a) -> std::optional<FamilyPoint> {
        const auto r = mems_ree_r_for_entropy(a, entropy);
        if (!r) {
            return std::nullopt;
        }
        const double rr = std::clamp(*r, 0.0, 1.0 - a);
        const CorrelationReport rep = discord_report(mems_ree(a, rr), options);
        return FamilyPoint{{a, rr}, rep.S, rep.D_sym, 0.0};
    };
    const double a_max = 1.0 / 3.0;
    const std::size_t grid = 41;
    std::optional<FamilyPoint> best;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < grid; ++k) {
        const double a = a_max * static_cast<double>(k) / static_cast<double>(grid - 1);
        if (auto p = evaluate(a); p && (!best || p->D_sym > best->D_sym)) {
            best = p;
            best_k = k;
        }
    }
    if (!best) {
        return std::nullopt;
    }
    // Golden-section refinement on the bracket around the best grid point.
    const double h = a_max / static_cast<double>(grid - 1);
    double lo = std::max(0.0, h * (static_cast<double>(best_k) - 1.0));
    double hi = std::min(a_max, h * (static_cast<double>(best_k) + 1.0));
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    auto score = [&](double a) {
        auto p = evaluate(a);
        if (p && p->D_sym > best->D_sym) {
            best = p;
        }
        return p ? p->D_sym : -1.0;
    };
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = score(x1);
    double f2 = score(x2);
    for (int it = 0; it < 40 && hi - lo > 1e-5; ++it) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = score(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = score(x2);
        }
    }
    best->A = amid(mems_ree(best->params[0], best->params[1]), options);
    return best;
}

std::optional<FamilyPoint> rho_up_upper_at_discord(double discord_value, double p_min, double p_max,
                                                   const MeasureOptions &options) {
    if (!(p_min >= 0.0 && p_max <= 1.0 && p_min <= p_max)) {
        throw InvalidInput("rho_up_upper_at_discord: p range must satisfy 0 <= p_min <= p_max <= 1");
    }
    const std::vector<double> eps_grid = linspace(0.0, 1.0, 41);
    auto d_of = [&](double eps, double p) { return discord_report(rho_up(eps, p), options).D_sym; };

    // All eps roots of D_sym(eps, p) = target at fixed p, located by bracketing then bisection.
    auto roots_at = [&](double p) {
        std::vector<double> roots;
        double prev_e = eps_grid[0];
        double prev_d = d_of(prev_e, p) - discord_value;
        // Grid points within kTouch of the target also count, so tangential maxima are kept.
        constexpr double kTouch = 1e-9;
        if (std::abs(prev_d) <= kTouch) {
            roots.push_back(prev_e);
        }
        for (std::size_t k = 1; k < eps_grid.size(); ++k) {
            const double e = eps_grid[k];
            const double d = d_of(e, p) - discord_value;
            if (std::abs(d) <= kTouch) {
                roots.push_back(e);
            } else if ((prev_d < 0.0) != (d < 0.0) && std::abs(prev_d) > kTouch) {
                double lo = prev_e;
                double hi = e;
                double dlo = prev_d;
                for (int it = 0; it < 50 && hi - lo > 1e-11; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double dm = d_of(mid, p) - discord_value;
                    if ((dm < 0.0) == (dlo < 0.0)) {
                        lo = mid;
                        dlo = dm;
                    } else {
                        hi = mid;
                    }
                }
                roots.push_back(0.5 * (lo + hi));
            }
            prev_e = e;
            prev_d = d;
        }
        return roots;
    };

    std::optional<FamilyPoint> best;
    auto best_at = [&](double p) {
        double local = -1.0;
        for (double eps : roots_at(p)) {
            const CorrelationReport r = correlation_report(rho_up(eps, p), options);
            local = std::max(local, r.A);
            if (!best || r.A > best->A) {
                best = FamilyPoint{{eps, p}, r.S, r.D_sym, r.A};
            }
        }
        return local;
    };

    // D_sym and A are invariant under p -> 1 - p, so a symmetric range is scanned on one half.
    if (std::abs(p_min + p_max - 1.0) < 1e-15 && p_max > 0.5) {
        p_min = 0.5;
    }
    const std::vector<double> p_grid = linspace(p_min, p_max, 41);
    std::vector<double> values(p_grid.size());
    for (std::size_t k = 0; k < p_grid.size(); ++k) {
        values[k] = best_at(p_grid[k]);
    }
    if (!best || p_max == p_min) {
        return best;
    }
    // Golden-section refinement around the local maxima of the p grid that compete with the best.
    const double h = p_grid[1] - p_grid[0];
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    const double grid_best = *std::max_element(values.begin(), values.end());
    for (std::size_t k = 0; k < p_grid.size(); ++k) {
        const bool left_ok = k == 0 || values[k] >= values[k - 1];
        const bool right_ok = k + 1 == p_grid.size() || values[k] >= values[k + 1];
        const bool strict = (k > 0 && values[k] > values[k - 1]) || (k + 1 < p_grid.size() && values[k] > values[k + 1]);
        if (values[k] < 0.0 || values[k] < grid_best - 1e-3 || !left_ok || !right_ok || !strict) {
            continue;
        }
        double lo = std::max(p_min, p_grid[k] - h);
        double hi = std::min(p_max, p_grid[k] + h);
        double x1 = hi - g * (hi - lo);
        double x2 = lo + g * (hi - lo);
        double f1 = best_at(x1);
        double f2 = best_at(x2);
        for (int it = 0; it < 40 && hi - lo > 1e-5; ++it) {
            if (f1 > f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = best_at(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = best_at(x2);
            }
        }
    }
    return best;
}

const std::vector<TablePoint> &rho_up_table_points() {
    static const std::vector<TablePoint> points = {
        {0.00, 0.50, 0.01, 0.02}, {0.05, 0.70, 0.01, 0.01}, {0.10, 0.80, 0.01, 0.01},
        {0.15, 0.90, 0.01, 0.01}, {0.18, 0.95, 0.01, 0.02}, {0.20, 0.99, 0.01, 0.02},
    };
    return points;
}

}  // namespace qcorr
