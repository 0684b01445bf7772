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
#include <cstddef>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

/// Which qubit a local projective measurement acts on.
enum class Side { A, B };

inline Side other(Side s) {
    return s == Side::A ? Side::B : Side::A;
}

/// Rank-1 projective qubit measurement {|v><v|, I - |v><v|} with
/// |v> = (cos(theta/2), e^{i phi} sin(theta/2)). The first amplitude is real
/// and non-negative, which fixes the global phase.
struct MeasurementBasis {
    double theta = 0.0;
    double phi = 0.0;

    std::array<Complex, 2> ket() const;
    /// Unit Bloch vector of the first projector.
    std::array<double, 3> bloch() const;
    /// outcome 0 -> |v><v|, outcome 1 -> I - |v><v|.
    ComplexMatrix projector(int outcome) const;
    /// Angles folded into theta in [0, pi], phi in [0, 2 pi).
    MeasurementBasis canonical() const;
};

struct BiLocalBasis {
    MeasurementBasis a;
    MeasurementBasis b;

    /// Pi_{A,k} (x) Pi_{B,l}.
    ComplexMatrix projector(int k, int l) const;
};

/// Bloch-sphere decomposition rho = (1/4) sum_ij c_ij sigma_i (x) sigma_j with
/// local vectors r_A, r_B and the 3x3 correlation tensor T (all real).
struct BlochForm {
    std::array<double, 3> a{};
    std::array<double, 3> b{};
    std::array<std::array<double, 3>, 3> t{};
};
BlochForm bloch_form(const DensityMatrix &rho);

/// -sum p log2 p with 0 log 0 := 0.
double shannon_entropy(std::span<const double> probabilities);
/// Shannon entropy of (x, 1 - x).
double binary_entropy(double x);

/// -Tr[rho log2 rho] in bits; eigenvalues at or below 1e-12 contribute nothing.
double vn_entropy(const ComplexMatrix &rho);
double vn_entropy(const DensityMatrix &rho);

ComplexMatrix reduced_state(const DensityMatrix &rho, Side keep);

/// S(rho_A) + S(rho_B) - S(rho_AB).
double mutual_information(const DensityMatrix &rho);

/// sum_i p_i S(rho^i) where rho^i is the normalized state of the unmeasured
/// qubit after outcome i of `basis` on side `measured`. Uses explicit projector
/// contraction and eigendecomposition.
double conditional_entropy_post_meas(const DensityMatrix &rho, const MeasurementBasis &basis, Side measured);

/// Mutual information of the outcome table p_kl = Tr[(Pi_{A,k} (x) Pi_{B,l}) rho].
double measured_mutual_information(const DensityMatrix &rho, const BiLocalBasis &basis);

/// Grid resolutions and refinement settings for the measurement optimizers.
struct MeasureOptions {
    std::size_t single_grid = 64;  // per angle
    std::size_t bilocal_grid = 16;  // per angle
    std::size_t refine_starts = 5;
    double value_tolerance = 1e-10;
    std::size_t max_evaluations = 200000;
};

struct OneSidedResult {
    double value = 0.0;
    MeasurementBasis basis;
    std::size_t evaluations = 0;
    bool converged = true;
};

struct BiLocalResult {
    double value = 0.0;
    BiLocalBasis basis;
    std::size_t evaluations = 0;
    bool converged = true;
};

/// One-way classical correlation S(rho_unmeasured) - min H, maximized over
/// projective measurements of `measured`. Measuring B gives J_left.
OneSidedResult classical_correlation(const DensityMatrix &rho, Side measured, const MeasureOptions &options = {});

/// I - max J for measurements on `measured`; measuring B gives D_left.
OneSidedResult discord(const DensityMatrix &rho, Side measured, const MeasureOptions &options = {});

/// max(D_left, D_right).
double discord_sym(const DensityMatrix &rho, const MeasureOptions &options = {});

/// Supremum over bi-local projective measurements of the outcome mutual information.
BiLocalResult classical_mutual_info(const DensityMatrix &rho, const MeasureOptions &options = {});

/// I - I_c.
double amid(const DensityMatrix &rho, const MeasureOptions &options = {});

/// Every measure of one state. All quantities in bits.
struct CorrelationReport {
    double S = 0.0;
    double S_A = 0.0;
    double S_B = 0.0;
    double I = 0.0;
    double J_left = 0.0;
    double J_right = 0.0;
    double D_left = 0.0;
    double D_right = 0.0;
    double D_sym = 0.0;
    double I_c = 0.0;
    double A = 0.0;
    MeasurementBasis basis_left;   // measurement on B attaining J_left
    MeasurementBasis basis_right;  // measurement on A attaining J_right
    BiLocalBasis basis_bilocal;    // attains I_c
    std::size_t optimizer_evals = 0;
    bool converged = true;
};

CorrelationReport correlation_report(const DensityMatrix &rho, const MeasureOptions &options = {});

/// Only S, D_left, D_right, D_sym (and their inputs); skips the bi-local search.
CorrelationReport discord_report(const DensityMatrix &rho, const MeasureOptions &options = {});

}  // namespace qcorr
