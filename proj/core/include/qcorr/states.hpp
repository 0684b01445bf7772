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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

/// Two-qubit density matrix in the computational ordering |00>, |01>, |10>, |11>
/// (polarization H -> 0, V -> 1; qubit A is the first factor).
///
/// Every instance is Hermitian, unit-trace and positive semidefinite within
/// 1e-10. Tiny negative eigenvalues in (-1e-10, -1e-12) are clipped to zero
/// and the result renormalized; anything more negative is rejected.
class DensityMatrix {
   public:
    static constexpr double kTolerance = 1e-10;

    /// Validates `m` and wraps it. Throws InvalidInput naming the violated invariant.
    explicit DensityMatrix(ComplexMatrix m);

    const ComplexMatrix &matrix() const {
        return m_;
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return m_(r, c);
    }
    double purity() const;

    friend bool operator==(const DensityMatrix &a, const DensityMatrix &b) = default;

   private:
    ComplexMatrix m_;
};

/// Validation outcome without throwing; `message` names the first violated invariant.
struct StateCheck {
    bool ok = true;
    std::string message;
};
StateCheck check_density_matrix(const ComplexMatrix &m, double tolerance = DensityMatrix::kTolerance);

/// Parameters of the X pattern: nonzero entries only on the diagonal and anti-diagonal.
struct XStateParams {
    double rho11 = 0.25;
    double rho22 = 0.25;
    double rho33 = 0.25;
    double rho44 = 0.25;
    Complex rho14 = 0.0;
    Complex rho23 = 0.0;
};

/// sqrt(p)|00> + sign*sqrt(1-p)|11>.
std::vector<Complex> phi_ket(double p, int sign);

/// |phi^sign(p)><phi^sign(p)|.
DensityMatrix bell_phi(double p, int sign = +1);

/// (1-eps)|Phi+><Phi+| + eps I/4.
DensityMatrix werner(double eps);

/// ((1-a+r)/2)|Phi+><Phi+| + ((1-a-r)/2)|Phi-><Phi-| + a|01><01|, the rank-3
/// family extremal for relative entropy of entanglement. Requires a in [0, 1/3]
/// and 0 <= r <= 1 - a.
DensityMatrix mems_ree(double a, double r);

/// (1-q)|Phi+><Phi+| + q|Phi-><Phi-|, q in [0, 1/2].
DensityMatrix rho_down(double q);

/// (1-eps)|phi+(p)><phi+(p)| + eps|01><01|.
DensityMatrix rho_up(double eps, double p);

DensityMatrix xstate(const XStateParams &params);

/// Hilbert-Schmidt random state G G^dagger / Tr(G G^dagger) with G a 4x4
/// matrix of standard complex normal entries.
DensityMatrix random_state(std::mt19937_64 &rng);
DensityMatrix random_state(std::uint64_t seed);

/// Deterministic 64-bit generator seeded through splitmix64 so that nearby
/// integer seeds give unrelated streams.
std::mt19937_64 make_rng(std::uint64_t seed);

/// seed XOR index, the per-item seed used by batch operations.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return seed ^ index;
}

/// (U_A (x) U_B) rho (U_A (x) U_B)^dagger.
DensityMatrix apply_local_unitary(const DensityMatrix &rho, const ComplexMatrix &ua, const ComplexMatrix &ub);

/// Random 2x2 unitary (Haar) from the given engine.
ComplexMatrix random_unitary2(std::mt19937_64 &rng);

/// rho_A (x) rho_B for single-qubit density matrices.
DensityMatrix product_state(const ComplexMatrix &rho_a, const ComplexMatrix &rho_b);

/// The two-qubit identity over four.
DensityMatrix maximally_mixed();

}  // namespace qcorr
