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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qcorr {

using Complex = std::complex<double>;

/// Dense square complex matrix for Hilbert spaces of dimension 2^k, k = 1..4.
///
/// Storage is row-major; each entry is a (re, im) pair. Qubit factors follow
/// the Kronecker convention: the first factor is the most significant bit of
/// the row/column index.
class ComplexMatrix {
   public:
    static constexpr std::size_t kMaxDim = 16;

    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix projector(std::span<const Complex> ket);

    std::size_t dim() const {
        return dim_;
    }
    Complex &operator()(std::size_t row, std::size_t col) {
        return entries_[row * dim_ + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    std::span<const Complex> entries() const {
        return entries_;
    }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    /// ||m - m^dagger||_F.
    double hermiticity_defect() const;
    /// (m + m^dagger) / 2.
    ComplexMatrix hermitian_part() const;
    bool all_finite() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        return a += b;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        return a -= b;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
        return a *= s;
    }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
        return a *= s;
    }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    friend bool operator==(const ComplexMatrix &a, const ComplexMatrix &b) = default;

   private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

/// Largest entrywise modulus of a - b. Dimensions must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Kronecker product; the first argument is the more significant factor.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Kronecker product of state vectors.
std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b);

/// Which factor of a bipartite or polarization-path space survives a partial trace.
enum class Subsystem {
    A,             ///< first qubit of a 4-dim space
    B,             ///< second qubit of a 4-dim space
    Polarization,  ///< last two qubits of a 16-dim (path_A, path_B, pol_A, pol_B) space
};

ComplexMatrix partial_trace(const ComplexMatrix &rho, Subsystem keep);

/// Partial trace over all qubits not listed in `keep`. Qubit 0 is the most
/// significant tensor factor. The kept qubits retain their relative order.
ComplexMatrix partial_trace_qubits(const ComplexMatrix &rho, std::span<const std::size_t> keep);

struct HermitianSpectrum {
    std::vector<double> eigenvalues;  // descending
    ComplexMatrix eigenvectors;       // column j pairs with eigenvalues[j]

    ComplexMatrix reconstruct() const;
};

struct JacobiOptions {
    double off_diagonal_tolerance = 1e-13;
    int max_sweeps = 100;
    double hermiticity_tolerance = 1e-10;
};

/// Cyclic complex Jacobi eigensolver. Inputs whose hermiticity defect is below
/// the tolerance are symmetrized first; larger defects are rejected.
HermitianSpectrum hermitian_eig(const ComplexMatrix &m, const JacobiOptions &options = {});

/// Eigenvalues only (same algorithm).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m);

/// f(m) = V diag(f(lambda)) V^dagger for Hermitian m.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix &m, F &&f) {
    HermitianSpectrum spec = hermitian_eig(m);
    for (double &v : spec.eigenvalues) {
        v = f(v);
    }
    return spec.reconstruct();
}

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// Index 0..3 -> I, X, Y, Z.
ComplexMatrix by_index(int index);
}  // namespace pauli

}  // namespace qcorr
