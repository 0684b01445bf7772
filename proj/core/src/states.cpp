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

#include "qcorr/states.hpp"

#include <cmath>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

void require_range(double value, double lo, double hi, const char *name) {
    if (!(value >= lo && value <= hi)) {
        std::ostringstream os;
        os << name << " = " << value << " outside [" << lo << ", " << hi << "]";
        throw InvalidInput(os.str());
    }
}

ComplexMatrix phi_projector(int sign) {
    return ComplexMatrix::projector(phi_ket(0.5, sign));
}

}  // namespace

StateCheck check_density_matrix(const ComplexMatrix &m, double tolerance) {
    if (m.dim() != 4) {
        return {false, "dimension must be 4, got " + std::to_string(m.dim())};
    }
    if (!m.all_finite()) {
        return {false, "entries must be finite"};
    }
    const double defect = m.hermiticity_defect();
    if (defect > tolerance) {
        std::ostringstream os;
        os << "not Hermitian: ||rho - rho^dagger||_F = " << defect;
        return {false, os.str()};
    }
    const Complex tr = m.trace();
    if (std::abs(tr - 1.0) > tolerance) {
        std::ostringstream os;
        os << "trace must be 1, got " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag() << "i";
        return {false, os.str()};
    }
    const double min_eig = hermitian_eigenvalues(m).back();
    if (min_eig < -tolerance) {
        std::ostringstream os;
        os << "not positive semidefinite: minimum eigenvalue " << min_eig;
        return {false, os.str()};
    }
    return {};
}

DensityMatrix::DensityMatrix(ComplexMatrix m) {
    const StateCheck check = check_density_matrix(m);
    if (!check.ok) {
        throw InvalidInput("invalid density matrix: " + check.message);
    }
    // Bit-identical for inputs that are already exactly Hermitian.
    m_ = m.hermitian_part();
    HermitianSpectrum spec = hermitian_eig(m_);
    if (spec.eigenvalues.back() < -1e-12) {
        double total = 0.0;
        for (double &v : spec.eigenvalues) {
            v = std::max(v, 0.0);
            total += v;
        }
        for (double &v : spec.eigenvalues) {
            v /= total;
        }
        m_ = spec.reconstruct();
    }
}

double DensityMatrix::purity() const {
    double s = 0.0;
    for (const Complex &z : m_.entries()) {
        s += std::norm(z);
    }
    return s;
}

std::vector<Complex> phi_ket(double p, int sign) {
    require_range(p, 0.0, 1.0, "p");
    if (sign != 1 && sign != -1) {
        throw InvalidInput("sign must be +1 or -1");
    }
    return {std::sqrt(p), 0.0, 0.0, static_cast<double>(sign) * std::sqrt(1.0 - p)};
}

DensityMatrix bell_phi(double p, int sign) {
    return DensityMatrix(ComplexMatrix::projector(phi_ket(p, sign)));
}

DensityMatrix werner(double eps) {
    require_range(eps, 0.0, 1.0, "eps");
    return DensityMatrix((1.0 - eps) * phi_projector(+1) + (eps / 4.0) * ComplexMatrix::identity(4));
}

DensityMatrix mems_ree(double a, double r) {
    require_range(a, 0.0, 1.0 / 3.0, "a");
    if (!(r >= 0.0 && r <= 1.0 - a + 1e-15)) {
        std::ostringstream os;
        os << "mems_ree weights negative: r = " << r << " must lie in [0, 1 - a = " << 1.0 - a << "]";
        throw InvalidInput(os.str());
    }
    const double plus = (1.0 - a + r) / 2.0;
    const double minus = std::max(0.0, (1.0 - a - r) / 2.0);
    ComplexMatrix m = plus * phi_projector(+1) + minus * phi_projector(-1);
    m(1, 1) += a;
    return DensityMatrix(std::move(m));
}

DensityMatrix rho_down(double q) {
    require_range(q, 0.0, 0.5, "q");
    return DensityMatrix((1.0 - q) * phi_projector(+1) + q * phi_projector(-1));
}

DensityMatrix rho_up(double eps, double p) {
    require_range(eps, 0.0, 1.0, "eps");
    require_range(p, 0.0, 1.0, "p");
    ComplexMatrix m = (1.0 - eps) * ComplexMatrix::projector(phi_ket(p, +1));
    m(1, 1) += eps;
    return DensityMatrix(std::move(m));
}

DensityMatrix xstate(const XStateParams &x) {
    const double diag[] = {x.rho11, x.rho22, x.rho33, x.rho44};
    double total = 0.0;
    for (double d : diag) {
        if (!(d >= 0.0)) {
            throw InvalidInput("X-state populations must be non-negative");
        }
        total += d;
    }
    if (std::abs(total - 1.0) > DensityMatrix::kTolerance) {
        throw InvalidInput("X-state populations must sum to 1");
    }
    if (std::norm(x.rho14) > x.rho11 * x.rho44 + DensityMatrix::kTolerance ||
        std::norm(x.rho23) > x.rho22 * x.rho33 + DensityMatrix::kTolerance) {
        throw InvalidInput("X-state coherences violate positivity (|rho14|^2 <= rho11 rho44, |rho23|^2 <= rho22 rho33)");
    }
    ComplexMatrix m = ComplexMatrix::diagonal(diag);
    m(0, 3) = x.rho14;
    m(3, 0) = std::conj(x.rho14);
    m(1, 2) = x.rho23;
    m(2, 1) = std::conj(x.rho23);
    return DensityMatrix(std::move(m));
}

std::mt19937_64 make_rng(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z = z ^ (z >> 31);
    return std::mt19937_64(z);
}

DensityMatrix random_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix g(4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    ComplexMatrix w = g * g.adjoint();
    const double tr = w.trace().real();
    w *= 1.0 / tr;
    return DensityMatrix(w.hermitian_part());
}

DensityMatrix random_state(std::uint64_t seed) {
    std::mt19937_64 rng = make_rng(seed);
    return random_state(rng);
}

ComplexMatrix random_unitary2(std::mt19937_64 &rng) {
    // Haar unitary via normalized quaternion plus a global phase.
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    double q[4];
    double norm = 0.0;
    for (double &v : q) {
        v = normal(rng);
        norm += v * v;
    }
    norm = std::sqrt(norm);
    for (double &v : q) {
        v /= norm;
    }
    const Complex a(q[0], q[1]);
    const Complex b(q[2], q[3]);
    const Complex phase = std::polar(1.0, angle(rng));
    return phase * ComplexMatrix{{a, -std::conj(b)}, {b, std::conj(a)}};
}

DensityMatrix apply_local_unitary(const DensityMatrix &rho, const ComplexMatrix &ua, const ComplexMatrix &ub) {
    const ComplexMatrix u = kron(ua, ub);
    return DensityMatrix((u * rho.matrix() * u.adjoint()).hermitian_part());
}

DensityMatrix product_state(const ComplexMatrix &rho_a, const ComplexMatrix &rho_b) {
    if (rho_a.dim() != 2 || rho_b.dim() != 2) {
        throw InvalidInput("product_state expects single-qubit factors");
    }
    return DensityMatrix(kron(rho_a, rho_b));
}

DensityMatrix maximally_mixed() {
    return DensityMatrix(0.25 * ComplexMatrix::identity(4));
}

}  // namespace qcorr
