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
#include <cstdint>
#include <string>
#include <string_view>

#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

// Two-qubit polarization tomography over the 36 settings {H,V,D,A,R,L}^2.

inline constexpr std::size_t kNumSettings = 36;

/// Single-qubit projector label: H, V, D, A, R or L.
std::array<Complex, 2> polarization_ket(char label);

/// Setting label for index s = 6 * i + j, e.g. "HV" for (0, 1).
std::string setting_label(std::size_t s);
/// Inverse of setting_label; throws InvalidInput for unknown labels.
std::size_t setting_index(std::string_view label);
/// |a b><a b| for setting s.
ComplexMatrix setting_projector(std::size_t s);

struct TomographyDataset {
    /// Non-negative counts per setting, indexed as in setting_label.
    std::array<double, kNumSettings> counts{};
    std::uint64_t n_nominal = 0;
    std::uint64_t seed = 0;
};

/// Expected counts n * Tr(P_s rho), without sampling noise.
TomographyDataset expected_counts(const DensityMatrix &rho, double n_nominal);

/// Poisson-sampled counts with mean n * Tr(P_s rho).
TomographyDataset simulate_counts(const DensityMatrix &rho, std::uint64_t n_nominal, std::uint64_t seed);

/// Pauli-contrast estimate rho = 1/4 sum <s_i s_j> s_i (x) s_j. Hermitian, trace one,
/// possibly with negative eigenvalues.
ComplexMatrix linear_inversion(const TomographyDataset &data);

/// Nearest density matrix in spectrum: eigenvalues are projected onto the simplex.
DensityMatrix project_physical(const ComplexMatrix &m);

/// Sorted-truncation Euclidean projection of a vector onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> v);

/// Poisson log-likelihood with the intensity fitted as total counts / 9.
double log_likelihood(const ComplexMatrix &rho, const TomographyDataset &data);

struct MleOptions {
    std::size_t max_evaluations = 100000;
    double value_tolerance = 1e-10;
};

struct MleResult {
    DensityMatrix rho;
    double log_likelihood = 0.0;
    double initial_log_likelihood = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Maximum-likelihood fit with rho = T^dagger T / Tr, T lower triangular,
/// started from the projected linear inversion.
MleResult mle_reconstruct(const TomographyDataset &data, const MleOptions &opts = {});

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

}  // namespace qcorr
