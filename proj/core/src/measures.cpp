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

#include "qcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qcorr/errors.hpp"
#include "qcorr/optimize.hpp"

namespace qcorr {

namespace {

constexpr double kNegligibleProbability = 1e-12;
constexpr double kClampTolerance = 1e-9;

double xlog2x(double x) {
    return x <= kNegligibleProbability ? 0.0 : x * std::log2(x);
}

/// Entropy of a qubit whose Bloch vector has length `len`.
double qubit_entropy_from_length(double len) {
    len = std::clamp(len, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + len));
}

double norm3(const std::array<double, 3> &v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

double dot3(const std::array<double, 3> &u, const std::array<double, 3> &v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

std::array<double, 3> bloch_from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

/// T n when measuring B, T^T n when measuring A.
std::array<double, 3> correlate(const BlochForm &f, const std::array<double, 3> &n, Side measured) {
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            out[i] += measured == Side::B ? f.t[i][j] * n[j] : f.t[j][i] * n[j];
        }
    }
    return out;
}

/// Post-measurement conditional entropy from the Bloch form.
double conditional_entropy_bloch(const BlochForm &f, const std::array<double, 3> &n, Side measured) {
    const std::array<double, 3> &own = measured == Side::B ? f.b : f.a;
    const std::array<double, 3> &rest = measured == Side::B ? f.a : f.b;
    const std::array<double, 3> tn = correlate(f, n, measured);
    const double bn = dot3(own, n);
    double h = 0.0;
    for (double s : {1.0, -1.0}) {
        const double w = 1.0 + s * bn;
        const double p = 0.5 * w;
        if (p <= kNegligibleProbability) {
            continue;
        }
        const std::array<double, 3> u{rest[0] + s * tn[0], rest[1] + s * tn[1], rest[2] + s * tn[2]};
        h += p * qubit_entropy_from_length(norm3(u) / w);
    }
    return h;
}

double outcome_mutual_information(const BlochForm &f, const std::array<double, 3> &m, const std::array<double, 3> &n) {
    const double am = dot3(f.a, m);
    const double bn = dot3(f.b, n);
    const std::array<double, 3> tn = correlate(f, n, Side::B);
    const double mtn = dot3(m, tn);
    double joint[4];
    for (int k = 0; k < 2; ++k) {
        const double sk = k == 0 ? 1.0 : -1.0;
        for (int l = 0; l < 2; ++l) {
            const double sl = l == 0 ? 1.0 : -1.0;
            joint[2 * k + l] = std::max(0.0, 0.25 * (1.0 + sk * am + sl * bn + sk * sl * mtn));
        }
    }
    const double pa[2] = {joint[0] + joint[1], joint[2] + joint[3]};
    const double pb[2] = {joint[0] + joint[2], joint[1] + joint[3]};
    return shannon_entropy(pa) + shannon_entropy(pb) - shannon_entropy(joint);
}

double clamp_nonnegative(double value, const char *what) {
    if (value >= 0.0) {
        return value;
    }
    if (value >= -kClampTolerance) {
        return 0.0;
    }
    std::ostringstream os;
    os << what << " is negative beyond rounding tolerance: " << value;
    throw ComputationError(os.str());
}

std::array<Axis, 2> single_axes(const MeasureOptions &o) {
    return {Axis{0.0, std::numbers::pi, o.single_grid, false}, Axis{0.0, 2.0 * std::numbers::pi, o.single_grid, true}};
}

std::array<Axis, 4> bilocal_axes(const MeasureOptions &o) {
    const Axis theta{0.0, std::numbers::pi, o.bilocal_grid, false};
    const Axis phi{0.0, 2.0 * std::numbers::pi, o.bilocal_grid, true};
    return {theta, phi, theta, phi};
}

StagedOptions staged(const MeasureOptions &o) {
    return {o.refine_starts, o.value_tolerance, o.max_evaluations};
}

struct MinConditional {
    double entropy;
    MeasurementBasis basis;
    std::size_t evaluations;
    bool converged;
};

MinConditional minimize_conditional_entropy(const DensityMatrix &rho, Side measured, const MeasureOptions &options) {
    const BlochForm form = bloch_form(rho);
    const auto axes = single_axes(options);
    OptimizeResult r = staged_minimize(
        [&](std::span<const double> x) { return conditional_entropy_bloch(form, bloch_from_angles(x[0], x[1]), measured); },
        axes, staged(options));
    return {std::max(0.0, r.value), MeasurementBasis{r.x[0], r.x[1]}.canonical(), r.evaluations, r.converged};
}

}  // namespace

std::array<Complex, 2> MeasurementBasis::ket() const {
    return {std::cos(0.5 * theta), std::polar(1.0, phi) * std::sin(0.5 * theta)};
}

std::array<double, 3> MeasurementBasis::bloch() const {
    return bloch_from_angles(theta, phi);
}

ComplexMatrix MeasurementBasis::projector(int outcome) const {
    if (outcome != 0 && outcome != 1) {
        throw InvalidInput("measurement outcome must be 0 or 1");
    }
    const auto v = ket();
    ComplexMatrix p = ComplexMatrix::projector(v);
    return outcome == 0 ? p : ComplexMatrix::identity(2) - p;
}

MeasurementBasis MeasurementBasis::canonical() const {
    const auto n = bloch();
    const double theta_c = std::acos(std::clamp(n[2], -1.0, 1.0));
    double phi_c = std::atan2(n[1], n[0]);
    if (phi_c < 0.0) {
        phi_c += 2.0 * std::numbers::pi;
    }
    if (phi_c >= 2.0 * std::numbers::pi) {
        phi_c = 0.0;
    }
    return {theta_c, phi_c};
}

ComplexMatrix BiLocalBasis::projector(int k, int l) const {
    return kron(a.projector(k), b.projector(l));
}

BlochForm bloch_form(const DensityMatrix &rho) {
    BlochForm f;
    const ComplexMatrix &m = rho.matrix();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == 0 && j == 0) {
                continue;
            }
            const ComplexMatrix op = kron(pauli::by_index(i), pauli::by_index(j));
            // Tr(rho op) = sum_kl rho_kl op_lk
            Complex s = 0.0;
            for (std::size_t k = 0; k < 4; ++k) {
                for (std::size_t l = 0; l < 4; ++l) {
                    s += m(k, l) * op(l, k);
                }
            }
            const double c = s.real();
            if (j == 0) {
                f.a[i - 1] = c;
            } else if (i == 0) {
                f.b[j - 1] = c;
            } else {
                f.t[i - 1][j - 1] = c;
            }
        }
    }
    return f;
}

double shannon_entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities) {
        h -= xlog2x(p);
    }
    return h;
}

double binary_entropy(double x) {
    return -xlog2x(x) - xlog2x(1.0 - x);
}

double vn_entropy(const ComplexMatrix &rho) {
    double s = 0.0;
    for (double v : hermitian_eigenvalues(rho)) {
        s -= xlog2x(v);
    }
    return std::max(0.0, s);
}

double vn_entropy(const DensityMatrix &rho) {
    return vn_entropy(rho.matrix());
}

ComplexMatrix reduced_state(const DensityMatrix &rho, Side keep) {
    return partial_trace(rho.matrix(), keep == Side::A ? Subsystem::A : Subsystem::B);
}

double mutual_information(const DensityMatrix &rho) {
    const double i = vn_entropy(reduced_state(rho, Side::A)) + vn_entropy(reduced_state(rho, Side::B)) - vn_entropy(rho);
    return clamp_nonnegative(i, "mutual information");
}

double conditional_entropy_post_meas(const DensityMatrix &rho, const MeasurementBasis &basis, Side measured) {
    const Side keep = other(measured);
    double h = 0.0;
    for (int outcome = 0; outcome < 2; ++outcome) {
        const ComplexMatrix pi = basis.projector(outcome);
        const ComplexMatrix lifted =
            measured == Side::B ? kron(ComplexMatrix::identity(2), pi) : kron(pi, ComplexMatrix::identity(2));
        const ComplexMatrix post = lifted * rho.matrix() * lifted;
        ComplexMatrix conditional = partial_trace(post, keep == Side::A ? Subsystem::A : Subsystem::B);
        const double p = conditional.trace().real();
        if (p <= kNegligibleProbability) {
            continue;
        }
        conditional *= 1.0 / p;
        h += p * vn_entropy(conditional.hermitian_part());
    }
    return h;
}

double measured_mutual_information(const DensityMatrix &rho, const BiLocalBasis &basis) {
    double joint[4];
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            joint[2 * k + l] = std::max(0.0, (basis.projector(k, l) * rho.matrix()).trace().real());
        }
    }
    const double pa[2] = {joint[0] + joint[1], joint[2] + joint[3]};
    const double pb[2] = {joint[0] + joint[2], joint[1] + joint[3]};
    return std::max(0.0, shannon_entropy(pa) + shannon_entropy(pb) - shannon_entropy(joint));
}

OneSidedResult classical_correlation(const DensityMatrix &rho, Side measured, const MeasureOptions &options) {
    const MinConditional m = minimize_conditional_entropy(rho, measured, options);
    const double s_unmeasured = vn_entropy(reduced_state(rho, other(measured)));
    const double j = clamp_nonnegative(s_unmeasured - m.entropy, "classical correlation");
    return {j, m.basis, m.evaluations, m.converged};
}

OneSidedResult discord(const DensityMatrix &rho, Side measured, const MeasureOptions &options) {
    OneSidedResult j = classical_correlation(rho, measured, options);
    const double i = mutual_information(rho);
    j.value = clamp_nonnegative(i - j.value, "discord");
    return j;
}

double discord_sym(const DensityMatrix &rho, const MeasureOptions &options) {
    return std::max(discord(rho, Side::B, options).value, discord(rho, Side::A, options).value);
}

BiLocalResult classical_mutual_info(const DensityMatrix &rho, const MeasureOptions &options) {
    const BlochForm form = bloch_form(rho);
    const auto axes = bilocal_axes(options);
    OptimizeResult r = staged_maximize(
        [&](std::span<const double> x) {
            return outcome_mutual_information(form, bloch_from_angles(x[0], x[1]), bloch_from_angles(x[2], x[3]));
        },
        axes, staged(options));
    BiLocalBasis basis{MeasurementBasis{r.x[0], r.x[1]}.canonical(), MeasurementBasis{r.x[2], r.x[3]}.canonical()};
    return {std::max(0.0, r.value), basis, r.evaluations, r.converged};
}

double amid(const DensityMatrix &rho, const MeasureOptions &options) {
    return clamp_nonnegative(mutual_information(rho) - classical_mutual_info(rho, options).value, "AMID");
}

CorrelationReport discord_report(const DensityMatrix &rho, const MeasureOptions &options) {
    CorrelationReport r;
    r.S = vn_entropy(rho);
    r.S_A = vn_entropy(reduced_state(rho, Side::A));
    r.S_B = vn_entropy(reduced_state(rho, Side::B));
    r.I = clamp_nonnegative(r.S_A + r.S_B - r.S, "mutual information");

    const MinConditional left = minimize_conditional_entropy(rho, Side::B, options);
    const MinConditional right = minimize_conditional_entropy(rho, Side::A, options);
    r.J_left = clamp_nonnegative(r.S_A - left.entropy, "J_left");
    r.J_right = clamp_nonnegative(r.S_B - right.entropy, "J_right");
    r.D_left = clamp_nonnegative(r.I - r.J_left, "D_left");
    r.D_right = clamp_nonnegative(r.I - r.J_right, "D_right");
    r.D_sym = std::max(r.D_left, r.D_right);
    r.basis_left = left.basis;
    r.basis_right = right.basis;
    r.optimizer_evals = left.evaluations + right.evaluations;
    r.converged = left.converged && right.converged;
    return r;
}

CorrelationReport correlation_report(const DensityMatrix &rho, const MeasureOptions &options) {
    CorrelationReport r = discord_report(rho, options);
    const BiLocalResult c = classical_mutual_info(rho, options);
    r.I_c = c.value;
    r.A = clamp_nonnegative(r.I - r.I_c, "AMID");
    r.basis_bilocal = c.basis;
    r.optimizer_evals += c.evaluations;
    r.converged = r.converged && c.converged;
    return r;
}

}  // namespace qcorr
