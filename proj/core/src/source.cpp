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

#include "qcorr/source.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

void require_unit_interval(double v, const char *name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << name << " = " << v << " outside [0, 1]";
        throw InvalidInput(os.str());
    }
}

ComplexMatrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return {{s, s}, {s, -s}};
}

}  // namespace

std::string_view recipe_name(Recipe r) {
    switch (r) {
        case Recipe::Up:
            return "up";
        case Recipe::Down:
            return "down";
        case Recipe::Werner:
            return "werner";
        case Recipe::MemsRee:
            return "mems_ree";
    }
    return "unknown";
}

Recipe parse_recipe(std::string_view name) {
    for (Recipe r : {Recipe::Up, Recipe::Down, Recipe::Werner, Recipe::MemsRee}) {
        if (recipe_name(r) == name) {
            return r;
        }
    }
    throw InvalidInput("unknown recipe '" + std::string(name) + "' (expected up, down, werner or mems_ree)");
}

void validate(const SourceConfig &c) {
    require_unit_interval(c.eps, "eps");
    require_unit_interval(c.p, "p");
    if (!std::isfinite(c.path_phase_gamma)) {
        throw InvalidInput("path_phase_gamma must be finite");
    }
    if (!(c.quartz_C >= 0.0) || !std::isfinite(c.quartz_C)) {
        throw InvalidInput("quartz_C must be finite and non-negative");
    }
    switch (c.recipe) {
        case Recipe::Up:
            if (c.quartz_C != 0.0) {
                throw InvalidInput("recipe 'up' uses no quartz plate; quartz_C must be 0");
            }
            break;
        case Recipe::Down:
            if (c.eps != 0.0 || c.p != 0.5) {
                throw InvalidInput("recipe 'down' selects only the correlated |r l> modes with p = 1/2; eps must be 0 and p 0.5");
            }
            break;
        case Recipe::Werner:
            if (c.p != 0.5) {
                throw InvalidInput("recipe 'werner' requires p = 0.5");
            }
            if (c.quartz_C < kWernerMinQuartzC) {
                std::ostringstream msg;
                msg << "recipe 'werner' needs a fully dephased identity branch; quartz_C must be >= "
                    << kWernerMinQuartzC;
                throw InvalidInput(msg.str());
            }
            break;
        case Recipe::MemsRee:
            if (c.p != 0.5) {
                throw InvalidInput("recipe 'mems_ree' requires p = 0.5");
            }
            if (c.eps > 1.0 / 3.0) {
                throw InvalidInput("recipe 'mems_ree' requires eps (the |01> weight a) <= 1/3");
            }
            break;
    }
}

double FourQubitState::norm() const {
    double s = 0.0;
    for (const Complex &z : amplitudes) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

ComplexMatrix FourQubitState::density() const {
    return ComplexMatrix::projector(amplitudes);
}

FourQubitState xi_state(double eps, double p, double path_phase_gamma) {
    require_unit_interval(eps, "eps");
    require_unit_interval(p, "p");
    FourQubitState xi;
    const auto phi = phi_ket(p, +1);
    for (std::size_t pol = 0; pol < 4; ++pol) {
        xi.amplitudes[kPathRL * 4 + pol] = std::sqrt(1.0 - eps) * phi[pol];
    }
    // |H V> is polarization index 0b01.
    xi.amplitudes[kPathLR * 4 + 0b01] = std::polar(std::sqrt(eps), path_phase_gamma);
    return xi;
}

DensityMatrix trace_path(const ComplexMatrix &rho16) {
    if (rho16.dim() != 16) {
        throw InvalidInput("trace_path expects a 16-dim polarization-path state");
    }
    return DensityMatrix(partial_trace(rho16, Subsystem::Polarization).hermitian_part());
}

DensityMatrix trace_path(const FourQubitState &xi) {
    if (std::abs(xi.norm() - 1.0) > 1e-12) {
        throw InvalidInput("four-qubit state is not normalized");
    }
    return trace_path(xi.density());
}

double coherence_factor(double quartz_C) {
    if (!(quartz_C >= 0.0)) {
        throw InvalidInput("quartz_C must be non-negative");
    }
    return std::exp(-0.5 * quartz_C * quartz_C);
}

double dephasing_q(double quartz_C) {
    return 0.5 * (1.0 - coherence_factor(quartz_C));
}

double quartz_C_for_q(double q) {
    if (!(q >= 0.0 && q <= 0.5)) {
        throw InvalidInput("q must lie in [0, 1/2]");
    }
    if (q == 0.5) {
        return std::numeric_limits<double>::infinity();
    }
    return std::sqrt(-2.0 * std::log(1.0 - 2.0 * q));
}

ComplexMatrix dephase_matrix(const ComplexMatrix &rho4, double quartz_C, DephaseTarget target) {
    if (rho4.dim() != 4) {
        throw InvalidInput("dephase expects a two-qubit (4-dim) matrix");
    }
    const double g = coherence_factor(quartz_C);
    const bool on_a = target != DephaseTarget::B;
    const bool on_b = target != DephaseTarget::A;
    ComplexMatrix out = rho4;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            double f = 1.0;
            if (on_a && ((i >> 1) != (j >> 1))) {
                f *= g;
            }
            if (on_b && ((i & 1U) != (j & 1U))) {
                f *= g;
            }
            out(i, j) *= f;
        }
    }
    return out;
}

DensityMatrix dephase(const DensityMatrix &rho, double quartz_C, DephaseTarget target) {
    return DensityMatrix(dephase_matrix(rho.matrix(), quartz_C, target));
}

ComplexMatrix apply_branch_unitary(const ComplexMatrix &rho16, std::size_t path, const ComplexMatrix &u4) {
    if (rho16.dim() != 16 || u4.dim() != 4 || path > 3) {
        throw InvalidInput("apply_branch_unitary: need a 16-dim state, a 4-dim unitary and a path index 0..3");
    }
    ComplexMatrix u(16);
    for (std::size_t b = 0; b < 4; ++b) {
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                u(b * 4 + i, b * 4 + j) = b == path ? u4(i, j) : (i == j ? Complex(1.0) : Complex(0.0));
            }
        }
    }
    return u * rho16 * u.adjoint();
}

ComplexMatrix dephase_branch(const ComplexMatrix &rho16, std::size_t path, double quartz_C, DephaseTarget target) {
    if (rho16.dim() != 16 || path > 3) {
        throw InvalidInput("dephase_branch: need a 16-dim state and a path index 0..3");
    }
    ComplexMatrix out(16);
    for (std::size_t b = 0; b < 4; ++b) {
        ComplexMatrix block(4);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                block(i, j) = rho16(b * 4 + i, b * 4 + j);
            }
        }
        if (b == path) {
            block = dephase_matrix(block, quartz_C, target);
        }
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                out(b * 4 + i, b * 4 + j) = block(i, j);
            }
        }
    }
    return out;
}

DensityMatrix engineer(const SourceConfig &c) {
    validate(c);
    switch (c.recipe) {
        case Recipe::Up:
            return trace_path(xi_state(c.eps, c.p, c.path_phase_gamma));
        case Recipe::Down: {
            // Correlated modes only, p = 1/2, one quartz plate on photon A.
            ComplexMatrix rho = xi_state(0.0, 0.5, c.path_phase_gamma).density();
            rho = dephase_branch(rho, kPathRL, c.quartz_C, DephaseTarget::A);
            return trace_path(rho);
        }
        case Recipe::Werner: {
            // |l r> branch: HWP2 at 45 deg gives |H V>; rotating HWP2 and HWP3 to
            // 22.5 deg instead prepares |++> from |H H>, which two quartz plates
            // then dephase in the H/V basis.
            FourQubitState xi;
            const auto phi = phi_ket(0.5, +1);
            for (std::size_t pol = 0; pol < 4; ++pol) {
                xi.amplitudes[kPathRL * 4 + pol] = std::sqrt(1.0 - c.eps) * phi[pol];
            }
            xi.amplitudes[kPathLR * 4 + 0b00] = std::polar(std::sqrt(c.eps), c.path_phase_gamma);
            ComplexMatrix rho = xi.density();
            rho = apply_branch_unitary(rho, kPathLR, kron(hadamard(), hadamard()));
            rho = dephase_branch(rho, kPathLR, c.quartz_C, DephaseTarget::Both);
            return trace_path(rho);
        }
        case Recipe::MemsRee: {
            // rho_up at p = 1/2 with the Phi+ branch partially dephased.
            ComplexMatrix rho = xi_state(c.eps, 0.5, c.path_phase_gamma).density();
            rho = dephase_branch(rho, kPathRL, c.quartz_C, DephaseTarget::A);
            return trace_path(rho);
        }
    }
    throw InvalidInput("unknown recipe");
}

std::pair<Family, std::vector<double>> equivalent_family(const SourceConfig &c) {
    validate(c);
    switch (c.recipe) {
        case Recipe::Up:
            return {Family::RhoUp, {c.eps, c.p}};
        case Recipe::Down:
            return {Family::RhoDown, {dephasing_q(c.quartz_C)}};
        case Recipe::Werner:
            return {Family::Werner, {c.eps}};
        case Recipe::MemsRee:
            return {Family::MemsRee, {c.eps, (1.0 - c.eps) * coherence_factor(c.quartz_C)}};
    }
    throw InvalidInput("unknown recipe");
}

}  // namespace qcorr
