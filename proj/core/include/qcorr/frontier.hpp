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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcorr/measures.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

enum class Family { Werner, MemsRee, RhoDown, RhoUp, BellPhi };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);
/// Parameter names in constructor order, e.g. {"eps", "p"} for rho_up.
std::vector<std::string> family_parameters(Family f);
/// Builds the state; throws InvalidInput when params are outside the family domain.
DensityMatrix make_family_state(Family f, std::span<const double> params);
/// Clamps each parameter into the family domain (used for perturbed samples).
std::vector<double> clip_to_domain(Family f, std::span<const double> params);

struct SweepRecord {
    std::string family;
    std::vector<std::pair<std::string, double>> params;
    CorrelationReport report;
};

/// n evenly spaced values covering [lo, hi] inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// One record per grid point, in grid order. Each grid point lists the
/// family's parameters in constructor order.
std::vector<SweepRecord> sweep_family(Family f, const std::vector<std::vector<double>> &grid, std::size_t jobs = 1,
                                      const MeasureOptions &options = {});

enum class BinAxis { Entropy, Discord };

struct EnvelopeConfig {
    BinAxis bin_axis = BinAxis::Entropy;
    std::size_t bin_count = 40;
    std::size_t samples_per_bin = 50;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
};

struct MncmsBin {
    double lower = 0.0;
    double upper = 0.0;
    bool present = false;
    double S = 0.0;      // entropy of the best point found
    double D_sym = 0.0;  // its symmetrized discord
    XStateParams argmax;
};

/// Maximal symmetrized discord per entropy bin over X-states with real
/// non-negative coherences. Each bin is searched by seeding with the known
/// families and `samples_per_bin` random X-states, then refining the best
/// candidates by Nelder-Mead on D_sym - 1e3 (S - S_center)^2. A post-pass
/// re-seeds every bin from its neighbours' best points.
std::vector<MncmsBin> mncms_envelope(const EnvelopeConfig &config);

struct AmidBin {
    double lower = 0.0;
    double upper = 0.0;
    bool present = false;
    double min_A = 0.0;
    double max_A = 0.0;
    double D_at_min = 0.0;
    double D_at_max = 0.0;
    std::vector<std::pair<std::string, double>> argmax;  // rho_up (eps, p)
    std::string argmin_family;
};

/// Lower bound from pure, Werner and rho_down sweeps; upper bound from a dense
/// (eps, p) scan of rho_up. Each bin keeps min and max A.
std::vector<AmidBin> amid_plane_bounds(const EnvelopeConfig &config);

/// n Hilbert-Schmidt random states with full reports; item i uses
/// derive_seed(seed, i).
std::vector<SweepRecord> scatter_random(std::size_t n, std::uint64_t seed, std::size_t jobs = 1,
                                        const MeasureOptions &options = {});

struct MeanStd {
    double mean = 0.0;
    double stddev = 0.0;
};

struct Spread {
    MeanStd S;
    MeanStd D_sym;
    MeanStd A;
    std::size_t samples = 0;
};

/// Gaussian perturbation of each parameter (clipped to the family domain),
/// n evaluations, sample mean and standard deviation of S, D_sym and A.
Spread monte_carlo_spread(Family f, std::span<const double> params, std::span<const double> sigmas, std::size_t n,
                          std::uint64_t seed, std::size_t jobs = 1, const MeasureOptions &options = {});

// Reference curves used to cross-check the numeric envelopes.

/// Werner mixing weight eps in [0, 1] with S(werner(eps)) = entropy (bisection on the
/// analytic spectrum, which is monotone in eps).
double werner_eps_for_entropy(double entropy);

/// Best rho^R point at fixed entropy: for each a, r is fixed by the entropy
/// constraint; a is chosen to maximize D_sym. Empty when no rho^R state has
/// that entropy.
struct FamilyPoint {
    std::vector<double> params;
    double S = 0.0;
    double D_sym = 0.0;
    double A = 0.0;
};
std::optional<FamilyPoint> mems_ree_best_at_entropy(double entropy, const MeasureOptions &options = {});

/// Largest A over rho_up(eps, p), p in [p_min, p_max], with D_sym = discord_value.
/// Scans p, brackets the eps roots of D_sym(eps, p) = discord_value, then
/// refines every local maximum in p by golden section.
std::optional<FamilyPoint> rho_up_upper_at_discord(double discord_value, double p_min = 0.0, double p_max = 1.0,
                                                   const MeasureOptions &options = {});

/// Six (eps, p) pairs of the experimental rho_up states with their 1-sigma uncertainties.
struct TablePoint {
    double eps;
    double p;
    double eps_sigma;
    double p_sigma;
};
const std::vector<TablePoint> &rho_up_table_points();

}  // namespace qcorr
