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

#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

bool valid_dim(std::size_t dim) {
    return dim == 1 || dim == 2 || dim == 4 || dim == 8 || dim == 16;
}

void require_valid_dim(std::size_t dim) {
    if (!valid_dim(dim)) {
        throw InvalidInput("matrix dimension " + std::to_string(dim) + " is not one of 1, 2, 4, 8, 16");
    }
}

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw InvalidInput("matrix dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

std::size_t qubit_count(std::size_t dim) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    return n;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    require_valid_dim(dim);
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
    require_valid_dim(dim);
    if (entries_.size() != dim * dim) {
        throw InvalidInput("expected " + std::to_string(dim * dim) + " entries, got " + std::to_string(entries_.size()));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : dim_(rows.size()) {
    require_valid_dim(dim_);
    entries_.reserve(dim_ * dim_);
    for (const auto &row : rows) {
        if (row.size() != dim_) {
            throw InvalidInput("ragged matrix literal");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> ket) {
    ComplexMatrix m(ket.size());
    for (std::size_t i = 0; i < ket.size(); ++i) {
        for (std::size_t j = 0; j < ket.size(); ++j) {
            m(i, j) = ket[i] * std::conj(ket[j]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex &z : entries_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
        }
    }
    return std::sqrt(s);
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
        }
    }
    return out;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Complex &z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_dim(*this, other);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_dim(*this, other);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (Complex &z : entries_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b);
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t n = a.dim() * b.dim();
    if (n > ComplexMatrix::kMaxDim) {
        throw InvalidInput("kron result dimension " + std::to_string(n) + " exceeds 16");
    }
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            for (std::size_t k = 0; k < b.dim(); ++k) {
                for (std::size_t l = 0; l < b.dim(); ++l) {
                    out(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() * b.size() > ComplexMatrix::kMaxDim) {
        throw InvalidInput("kron result dimension exceeds 16");
    }
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (const Complex &x : a) {
        for (const Complex &y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

ComplexMatrix partial_trace_qubits(const ComplexMatrix &rho, std::span<const std::size_t> keep) {
    const std::size_t n = qubit_count(rho.dim());
    if (rho.dim() < 2) {
        throw InvalidInput("partial trace needs at least one qubit");
    }
    std::vector<bool> kept(n, false);
    for (std::size_t q : keep) {
        if (q >= n || kept[q]) {
            throw InvalidInput("invalid or repeated qubit index " + std::to_string(q) + " for a " + std::to_string(n) +
                               "-qubit space");
        }
        kept[q] = true;
    }
    std::vector<std::size_t> keep_sorted(keep.begin(), keep.end());
    std::sort(keep_sorted.begin(), keep_sorted.end());
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; ++q) {
        if (!kept[q]) {
            traced.push_back(q);
        }
    }

    // Bit position of qubit q inside a full index (qubit 0 is the MSB).
    auto bit = [n](std::size_t q) { return n - 1 - q; };
    auto compose = [&](std::size_t kept_index, std::size_t traced_index) {
        std::size_t full = 0;
        for (std::size_t k = 0; k < keep_sorted.size(); ++k) {
            const std::size_t v = (kept_index >> (keep_sorted.size() - 1 - k)) & 1U;
            full |= v << bit(keep_sorted[k]);
        }
        for (std::size_t k = 0; k < traced.size(); ++k) {
            const std::size_t v = (traced_index >> (traced.size() - 1 - k)) & 1U;
            full |= v << bit(traced[k]);
        }
        return full;
    };

    const std::size_t out_dim = std::size_t{1} << keep_sorted.size();
    const std::size_t env_dim = std::size_t{1} << traced.size();
    ComplexMatrix out(out_dim);
    for (std::size_t i = 0; i < out_dim; ++i) {
        for (std::size_t j = 0; j < out_dim; ++j) {
            Complex s = 0.0;
            for (std::size_t e = 0; e < env_dim; ++e) {
                s += rho(compose(i, e), compose(j, e));
            }
            out(i, j) = s;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, Subsystem keep) {
    switch (keep) {
        case Subsystem::A:
        case Subsystem::B: {
            if (rho.dim() != 4) {
                throw InvalidInput("qubit A/B selector requires a 4-dim matrix, got dim " + std::to_string(rho.dim()));
            }
            const std::size_t q = keep == Subsystem::A ? 0 : 1;
            return partial_trace_qubits(rho, std::span<const std::size_t>(&q, 1));
        }
        case Subsystem::Polarization: {
            if (rho.dim() != 16) {
                throw InvalidInput("polarization selector requires a 16-dim matrix, got dim " +
                                   std::to_string(rho.dim()));
            }
            const std::size_t qs[] = {2, 3};
            return partial_trace_qubits(rho, qs);
        }
    }
    throw InvalidInput("unknown subsystem selector");
}

ComplexMatrix HermitianSpectrum::reconstruct() const {
    const std::size_t n = eigenvectors.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                s += eigenvectors(i, k) * eigenvalues[k] * std::conj(eigenvectors(j, k));
            }
            out(i, j) = s;
        }
    }
    return out;
}

HermitianSpectrum hermitian_eig(const ComplexMatrix &m, const JacobiOptions &options) {
    if (!m.all_finite()) {
        throw InvalidInput("matrix has non-finite entries");
    }
    const double defect = m.hermiticity_defect();
    if (defect > options.hermiticity_tolerance) {
        throw InvalidInput("matrix is not Hermitian: ||m - m^dagger||_F = " + std::to_string(defect));
    }
    ComplexMatrix a = m.hermitian_part();
    const std::size_t n = a.dim();
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    s += std::norm(a(i, j));
                }
            }
        }
        return std::sqrt(s);
    };

    const double threshold = options.off_diagonal_tolerance * std::max(1.0, a.frobenius_norm());
    for (int sweep = 0; sweep < options.max_sweeps && off_norm() > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0) {
                    continue;
                }
                // R = diag(1, e^{-i alpha}) on (p,q) followed by a real Givens rotation;
                // the phase makes a_pq real so the classic real update applies.
                const Complex phase = a(p, q) / mag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex rpp = c;
                const Complex rpq = s;
                const Complex rqp = -s * std::conj(phase);
                const Complex rqq = c * std::conj(phase);

                // a <- a R (columns p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * rpp + akq * rqp;
                    a(k, q) = akp * rpq + akq * rqq;
                }
                // a <- R^dagger a (rows p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(rpp) * apk + std::conj(rqp) * aqk;
                    a(q, k) = std::conj(rpq) * apk + std::conj(rqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * rpp + vkq * rqp;
                    v(k, q) = vkp * rpq + vkq * rqq;
                }
            }
        }
    }
    if (off_norm() > 1e3 * threshold) {
        throw ComputationError("Jacobi eigensolver did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

    HermitianSpectrum out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.eigenvectors(i, k) = v(i, order[k]);
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m) {
    return hermitian_eig(m).eigenvalues;
}

namespace pauli {
ComplexMatrix identity() {
    return ComplexMatrix::identity(2);
}
ComplexMatrix x() {
    return {{0.0, 1.0}, {1.0, 0.0}};
}
ComplexMatrix y() {
    return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
}
ComplexMatrix z() {
    return {{1.0, 0.0}, {0.0, -1.0}};
}
ComplexMatrix by_index(int index) {
    switch (index) {
        case 0:
            return identity();
        case 1:
            return x();
        case 2:
            return y();
        case 3:
            return z();
        default:
            throw InvalidInput("Pauli index must be 0..3");
    }
}
}  // namespace pauli

}  // namespace qcorr
