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

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "qcorr/frontier.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

// Photonic state engineering. Four qubits per photon pair, ordered
// (path_A, path_B, pol_A, pol_B); path r -> 0, l -> 1; polarization H -> 0, V -> 1.

/// Path index of the |r l> branch (photon A right, photon B left).
inline constexpr std::size_t kPathRL = 0b01;
/// Path index of the |l r> branch.
inline constexpr std::size_t kPathLR = 0b10;

/// Smallest quartz strength accepted by the werner recipe: exp(-C^2) < 1e-15 leaves
/// the identity branch equal to I/4 at double precision.
inline constexpr double kWernerMinQuartzC = 7.0;

enum class Recipe { Up, Down, Werner, MemsRee };

std::string_view recipe_name(Recipe r);
Recipe parse_recipe(std::string_view name);

struct SourceConfig {
    Recipe recipe = Recipe::Up;
    double eps = 0.0;               // attenuator weight of the |l r> branch
    double p = 0.5;                 // HWP1 unbalancing of phi+(p)
    double path_phase_gamma = 0.0;  // relative phase of the |l r> branch
    double quartz_C = 0.0;          // dimensionless quartz dephasing strength
};

/// Throws InvalidInput when a field is out of range or the fields do not fit the recipe.
void validate(const SourceConfig &config);

struct FourQubitState {
    std::array<Complex, 16> amplitudes{};

    double norm() const;
    ComplexMatrix density() const;
};

/// sqrt(1-eps)|r l>|phi+(p)> + e^{i gamma} sqrt(eps)|l r>|H V>.
FourQubitState xi_state(double eps, double p, double path_phase_gamma = 0.0);

/// Polarization state left after tracing out both path qubits.
DensityMatrix trace_path(const FourQubitState &xi);
DensityMatrix trace_path(const ComplexMatrix &rho16);

/// Coherence factor exp(-C^2 / 2) of a quartz plate with strength C.
double coherence_factor(double quartz_C);
/// q = (1 - exp(-C^2/2)) / 2, the Phi-minus weight produced from Phi-plus.
double dephasing_q(double quartz_C);
/// Inverse of dephasing_q on [0, 1/2); returns +inf for q = 1/2.
double quartz_C_for_q(double q);

enum class DephaseTarget { A, B, Both };

/// Multiplies the H-V coherences of the targeted qubit(s) by exp(-C^2/2);
/// populations are unchanged.
DensityMatrix dephase(const DensityMatrix &rho, double quartz_C, DephaseTarget target);
ComplexMatrix dephase_matrix(const ComplexMatrix &rho4, double quartz_C, DephaseTarget target);

/// (sum_paths |path><path| (x) U_path) rho16 (...)^dagger with U = u4 on `path`, I elsewhere.
ComplexMatrix apply_branch_unitary(const ComplexMatrix &rho16, std::size_t path, const ComplexMatrix &u4);

/// Removes coherence between path branches and dephases the polarization of one branch.
ComplexMatrix dephase_branch(const ComplexMatrix &rho16, std::size_t path, double quartz_C, DephaseTarget target);

/// Runs the recipe through the resource state, branch optics and path trace.
DensityMatrix engineer(const SourceConfig &config);

/// The state family and parameters the recipe is meant to produce.
std::pair<Family, std::vector<double>> equivalent_family(const SourceConfig &config);

}  // namespace qcorr
