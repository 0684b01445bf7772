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

#include "qcorr/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qcorr/errors.hpp"
#include "qcorr/optimize.hpp"

namespace qcorr {

namespace {

constexpr char kLabels[6] = {'H', 'V', 'D', 'A', 'R', 'L'};
// Measurement basis per label pair: Z (H/V), X (D/A), Y (R/L), as Pauli indices.
constexpr int kBasisPauli[3] = {3, 1, 2};

std::size_t label_index(char c) {
    for (std::size_t i = 0; i < 6; ++i) {
        if (kLabels[i] == c) {
            return i;
        }
    }
    throw InvalidInput(std::string("unknown polarization label '") + c + "'");
}

void check_counts(const TomographyDataset &data) {
    for (std::size_t s = 0; s < kNumSettings; ++s) {
        const double n = data.counts[s];
        if (!std::isfinite(n) || n < 0.0) {
            throw InvalidInput("count for setting " + setting_label(s) + " is negative or non-finite");
        }
    }
}

std::array<ComplexMatrix, kNumSettings> all_projectors() {
    std::array<ComplexMatrix, kNumSettings> out;
    for (std::size_t s = 0; s < kNumSettings; ++s) {
        out[s] = setting_projector(s);
    }
    return out;
}

const std::array<ComplexMatrix, kNumSettings> &projectors() {
    static const std::array<ComplexMatrix, kNumSettings> cache = all_projectors();
    return cache;
}

double total_counts(const TomographyDataset &data) {
    double t = 0.0;
    for (double n : data.counts) {
        t += n;
    }
    return t;
}

// rho = T^dagger T / Tr with T lower triangular: 4 real diagonal entries then
// (re, im) for each i > j in row-major order.
ComplexMatrix rho_from_params(std::span<const double> x) {
    ComplexMatrix t(4);
    std::size_t k = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        t(i, i) = x[k++];
    }
    for (std::size_t i = 1; i < 4; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            t(i, j) = Complex(x[k], x[k + 1]);
            k += 2;
        }
    }
    ComplexMatrix rho = t.adjoint() * t;
    const double tr = rho.trace().real();
    if (!(tr > 0.0)) {
        return ComplexMatrix::identity(4) * Complex(0.25);
    }
    return (rho * Complex(1.0 / tr)).hermitian_part();
}

// Inverse of rho_from_params for a full-rank rho: T = J L^dagger J with J rho J = L L^dagger.
std::vector<double> params_from_rho(const ComplexMatrix &rho) {
    ComplexMatrix r(4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            r(i, j) = rho(3 - i, 3 - j);
        }
    }
    ComplexMatrix l(4);
    for (std::size_t j = 0; j < 4; ++j) {
        Complex d = r(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            d -= l(j, k) * std::conj(l(j, k));
        }
        const double djj = std::sqrt(std::max(d.real(), 1e-300));
        l(j, j) = djj;
        for (std::size_t i = j + 1; i < 4; ++i) {
            Complex s = r(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                s -= l(i, k) * std::conj(l(j, k));
            }
            l(i, j) = s / djj;
        }
    }
    ComplexMatrix t(4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            t(i, j) = std::conj(l(3 - j, 3 - i));
        }
    }
    std::vector<double> x;
    x.reserve(16);
    for (std::size_t i = 0; i < 4; ++i) {
        x.push_back(t(i, i).real());
    }
    for (std::size_t i = 1; i < 4; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            x.push_back(t(i, j).real());
            x.push_back(t(i, j).imag());
        }
    }
    return x;
}

}  // namespace

std::array<Complex, 2> polarization_ket(char label) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (label_index(label)) {
        case 0:
            return {1.0, 0.0};
        case 1:
            return {0.0, 1.0};
        case 2:
            return {s, s};
        case 3:
            return {s, -s};
        case 4:
            return {Complex(s), Complex(0.0, s)};
        default:
            return {Complex(s), Complex(0.0, -s)};
    }
}

std::string setting_label(std::size_t s) {
    if (s >= kNumSettings) {
        throw InvalidInput("setting index out of range");
    }
    return {kLabels[s / 6], kLabels[s % 6]};
}

std::size_t setting_index(std::string_view label) {
    if (label.size() != 2) {
        throw InvalidInput("setting label must have two characters, got '" + std::string(label) + "'");
    }
    return label_index(label[0]) * 6 + label_index(label[1]);
}

ComplexMatrix setting_projector(std::size_t s) {
    const std::string l = setting_label(s);
    const auto a = polarization_ket(l[0]);
    const auto b = polarization_ket(l[1]);
    return ComplexMatrix::projector(kron(a, b));
}

TomographyDataset expected_counts(const DensityMatrix &rho, double n_nominal) {
    if (!(n_nominal >= 0.0) || !std::isfinite(n_nominal)) {
        throw InvalidInput("n_nominal must be finite and non-negative");
    }
    TomographyDataset d;
    d.n_nominal = static_cast<std::uint64_t>(std::llround(n_nominal));
    for (std::size_t s = 0; s < kNumSettings; ++s) {
        d.counts[s] = n_nominal * std::max(0.0, (projectors()[s] * rho.matrix()).trace().real());
    }
    return d;
}

TomographyDataset simulate_counts(const DensityMatrix &rho, std::uint64_t n_nominal, std::uint64_t seed) {
    const TomographyDataset mean = expected_counts(rho, static_cast<double>(n_nominal));
    TomographyDataset d;
    d.n_nominal = n_nominal;
    d.seed = seed;
    auto rng = make_rng(seed);
    for (std::size_t s = 0; s < kNumSettings; ++s) {
        if (mean.counts[s] > 0.0) {
            std::poisson_distribution<std::uint64_t> dist(mean.counts[s]);
            d.counts[s] = static_cast<double>(dist(rng));
        }
    }
    return d;
}

ComplexMatrix linear_inversion(const TomographyDataset &data) {
    check_counts(data);
    // expectation[i][j] of sigma_i (x) sigma_j, Pauli indices 0..3.
    double expectation[4][4] = {};
    double marg_a_num[4] = {}, marg_a_den[4] = {};
    double marg_b_num[4] = {}, marg_b_den[4] = {};
    expectation[0][0] = 1.0;
    for (std::size_t ba = 0; ba < 3; ++ba) {
        for (std::size_t bb = 0; bb < 3; ++bb) {
            double total = 0.0, corr = 0.0, sa = 0.0, sb = 0.0;
            for (std::size_t oa = 0; oa < 2; ++oa) {
                for (std::size_t ob = 0; ob < 2; ++ob) {
                    const double n = data.counts[(2 * ba + oa) * 6 + (2 * bb + ob)];
                    const double ea = oa == 0 ? 1.0 : -1.0;
                    const double eb = ob == 0 ? 1.0 : -1.0;
                    total += n;
                    corr += ea * eb * n;
                    sa += ea * n;
                    sb += eb * n;
                }
            }
            if (!(total > 0.0)) {
                throw InvalidInput("no counts recorded for basis pair " + setting_label(12 * ba + 2 * bb) +
                                   "; all 36 settings are required");
            }
            const int pa = kBasisPauli[ba];
            const int pb = kBasisPauli[bb];
            expectation[pa][pb] = corr / total;
            marg_a_num[pa] += sa;
            marg_a_den[pa] += total;
            marg_b_num[pb] += sb;
            marg_b_den[pb] += total;
        }
    }
    for (int k = 1; k < 4; ++k) {
        expectation[k][0] = marg_a_num[k] / marg_a_den[k];
        expectation[0][k] = marg_b_num[k] / marg_b_den[k];
    }
    ComplexMatrix rho(4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            rho += kron(pauli::by_index(i), pauli::by_index(j)) * Complex(0.25 * expectation[i][j]);
        }
    }
    return rho.hermitian_part();
}

std::vector<double> project_to_simplex(std::vector<double> v) {
    if (v.empty()) {
        throw InvalidInput("cannot project an empty vector onto the simplex");
    }
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double tau = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        cumulative += u[k];
        const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (u[k] - t > 0.0) {
            tau = t;
        } else {
            break;
        }
    }
    for (double &x : v) {
        x = std::max(x - tau, 0.0);
    }
    return v;
}

DensityMatrix project_physical(const ComplexMatrix &m) {
    if (m.dim() != 4) {
        throw InvalidInput("project_physical expects a 4-dim matrix");
    }
    if (!m.all_finite()) {
        throw InvalidInput("matrix has non-finite entries");
    }
    HermitianSpectrum spec = hermitian_eig(m);
    spec.eigenvalues = project_to_simplex(spec.eigenvalues);
    return DensityMatrix(spec.reconstruct().hermitian_part());
}

double log_likelihood(const ComplexMatrix &rho, const TomographyDataset &data) {
    check_counts(data);
    const double intensity = total_counts(data) / 9.0;
    double ll = 0.0;
    for (std::size_t s = 0; s < kNumSettings; ++s) {
        const double n = data.counts[s];
        const double prob = (projectors()[s] * rho).trace().real();
        const double lambda = intensity * prob;
        if (n > 0.0) {
            if (!(lambda > 0.0)) {
                return -std::numeric_limits<double>::infinity();
            }
            ll += n * std::log(lambda);
        }
        ll -= lambda;
        ll -= std::lgamma(n + 1.0);
    }
    return ll;
}

MleResult mle_reconstruct(const TomographyDataset &data, const MleOptions &opts) {
    check_counts(data);
    const double total = total_counts(data);
    if (!(total > 0.0)) {
        throw InvalidInput("dataset has no counts");
    }
    const DensityMatrix initial = project_physical(linear_inversion(data));
    const double initial_ll = log_likelihood(initial.matrix(), data);

    // Counts-normalized negative log-likelihood; probabilities floored so rank-deficient
    // trial states stay finite.
    const double intensity = total / 9.0;
    const Objective objective = [&](std::span<const double> x) {
        const ComplexMatrix rho = rho_from_params(x);
        double nll = 0.0;
        for (std::size_t s = 0; s < kNumSettings; ++s) {
            const double prob = std::max((projectors()[s] * rho).trace().real(), 1e-300);
            nll -= data.counts[s] * std::log(intensity * prob) - intensity * prob;
        }
        return nll / total;
    };

    // Start from a slightly mixed copy so the triangular factor is full rank.
    constexpr double kMix = 1e-6;
    const ComplexMatrix start = initial.matrix() * Complex(1.0 - kMix) + ComplexMatrix::identity(4) * Complex(kMix / 4);
    std::vector<double> x = params_from_rho(start);
    std::vector<double> steps(x.size(), 0.05);

    std::size_t used = 0;
    double best = objective(x);
    ++used;
    bool converged = false;
    while (used < opts.max_evaluations) {
        NelderMeadOptions nm;
        nm.value_tolerance = opts.value_tolerance;
        nm.max_evaluations = opts.max_evaluations - used;
        const OptimizeResult r = nelder_mead_minimize(objective, x, steps, nm);
        used += r.evaluations;
        const double gain = best - r.value;
        if (r.value < best) {
            best = r.value;
            x = r.x;
        }
        if (r.converged && gain < opts.value_tolerance) {
            converged = true;
            break;
        }
        // Restart with a smaller simplex around the incumbent.
        for (double &s : steps) {
            s = std::max(s * 0.5, 1e-4);
        }
    }

    MleResult out{initial, initial_ll, initial_ll, used, converged};
    const ComplexMatrix fitted = rho_from_params(x);
    const double fitted_ll = log_likelihood(fitted, data);
    if (fitted_ll >= initial_ll) {
        out.rho = DensityMatrix(fitted);
        out.log_likelihood = fitted_ll;
    }
    return out;
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    const ComplexMatrix sr = hermitian_function(rho.matrix(), [](double v) { return std::sqrt(std::max(v, 0.0)); });
    const ComplexMatrix middle = (sr * sigma.matrix() * sr).hermitian_part();
    double root_sum = 0.0;
    for (double v : hermitian_eigenvalues(middle)) {
        root_sum += std::sqrt(std::max(v, 0.0));
    }
    return std::min(1.0, root_sum * root_sum);
}

}  // namespace qcorr
