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

#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr::oracle {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::array<Complex, 2> ket(double theta, double phi, int outcome) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    if (outcome == 0) {
        return {Complex(c), std::polar(s, phi)};
    }
    return {-std::polar(s, -phi), Complex(c)};
}

// <u|M|u> for a 2x2 block of rho selected by a fixed index on the other qubit.
ComplexMatrix conditional_block(const ComplexMatrix &rho, int measured, const std::array<Complex, 2> &k) {
    ComplexMatrix out(2);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            Complex acc = 0.0;
            for (int m = 0; m < 2; ++m) {
                for (int n = 0; n < 2; ++n) {
                    const std::size_t row = measured == 1 ? 2 * x + m : 2 * m + x;
                    const std::size_t col = measured == 1 ? 2 * y + n : 2 * n + y;
                    acc += std::conj(k[m]) * rho(row, col) * k[n];
                }
            }
            out(x, y) = acc;
        }
    }
    return out;
}

using Fn = std::function<double(const std::vector<double> &)>;

struct Candidate {
    double value;
    std::vector<double> x;
};

// Visits every point of an n-per-axis grid over [lo, hi] per axis.
template <typename Visit>
void grid(const std::vector<double> &lo, const std::vector<double> &hi, const std::vector<std::size_t> &n, Visit &&visit) {
    const std::size_t d = lo.size();
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d);
    while (true) {
        for (std::size_t k = 0; k < d; ++k) {
            x[k] = n[k] == 1 ? lo[k] : lo[k] + (hi[k] - lo[k]) * static_cast<double>(idx[k]) / static_cast<double>(n[k] - 1);
        }
        visit(x);
        std::size_t k = 0;
        while (k < d && ++idx[k] == n[k]) {
            idx[k] = 0;
            ++k;
        }
        if (k == d) {
            return;
        }
    }
}

Maximum grid_zoom(const Fn &f, const std::vector<double> &lo, const std::vector<double> &hi,
                  const std::vector<std::size_t> &coarse, std::size_t zoom_points, std::size_t starts) {
    std::vector<Candidate> best;
    grid(lo, hi, coarse, [&](const std::vector<double> &x) {
        const double v = f(x);
        if (best.size() < starts || v > best.back().value) {
            best.push_back({v, x});
            std::sort(best.begin(), best.end(), [](const Candidate &a, const Candidate &b) { return a.value > b.value; });
            if (best.size() > starts) {
                best.pop_back();
            }
        }
    });
    Maximum result{best.front().value, best.front().x};
    const std::size_t d = lo.size();
    for (const Candidate &start : best) {
        Candidate c = start;
        std::vector<double> half(d);
        for (std::size_t k = 0; k < d; ++k) {
            half[k] = 1.5 * (hi[k] - lo[k]) / static_cast<double>(coarse[k] - 1);
        }
        while (half[0] > 1e-8) {
            std::vector<double> a(d), b(d);
            for (std::size_t k = 0; k < d; ++k) {
                a[k] = c.x[k] - half[k];
                b[k] = c.x[k] + half[k];
            }
            Candidate local = c;
            grid(a, b, std::vector<std::size_t>(d, zoom_points), [&](const std::vector<double> &x) {
                const double v = f(x);
                if (v > local.value) {
                    local = {v, x};
                }
            });
            c = local;
            for (double &h : half) {
                h *= 2.0 / static_cast<double>(zoom_points - 1);
            }
        }
        if (c.value > result.value) {
            result = {c.value, c.x};
        }
    }
    return result;
}

}  // namespace

double shannon(const std::vector<double> &p) {
    double h = 0.0;
    for (double x : p) {
        if (x > 1e-15) {
            h -= x * std::log2(x);
        }
    }
    return h;
}

double entropy2(const ComplexMatrix &m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double off = std::abs(m(0, 1));
    const double disc = std::sqrt((a - d) * (a - d) + 4.0 * off * off);
    return shannon({(a + d + disc) / 2, (a + d - disc) / 2});
}

ComplexMatrix reduce(const ComplexMatrix &rho, int keep) {
    ComplexMatrix out(2);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            Complex acc = 0.0;
            for (int m = 0; m < 2; ++m) {
                acc += keep == 0 ? rho(2 * x + m, 2 * y + m) : rho(2 * m + x, 2 * m + y);
            }
            out(x, y) = acc;
        }
    }
    return out;
}

double one_sided_j(const ComplexMatrix &rho, int measured, double theta, double phi) {
    double h = 0.0;
    for (int k = 0; k < 2; ++k) {
        ComplexMatrix block = conditional_block(rho, measured, ket(theta, phi, k));
        const double p = block.trace().real();
        if (p > 1e-12) {
            block *= Complex(1.0 / p);
            h += p * entropy2(block);
        }
    }
    return entropy2(reduce(rho, 1 - measured)) - h;
}

double bilocal_mi(const ComplexMatrix &rho, const std::array<double, 4> &angles) {
    std::vector<double> joint(4), pa(2, 0.0), pb(2, 0.0);
    for (int k = 0; k < 2; ++k) {
        const auto a = ket(angles[0], angles[1], k);
        for (int l = 0; l < 2; ++l) {
            const auto b = ket(angles[2], angles[3], l);
            const Complex v[4] = {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
            Complex acc = 0.0;
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    acc += std::conj(v[i]) * rho(i, j) * v[j];
                }
            }
            const double p = std::max(acc.real(), 0.0);
            joint[2 * k + l] = p;
            pa[k] += p;
            pb[l] += p;
        }
    }
    return shannon(pa) + shannon(pb) - shannon(joint);
}

Maximum max_one_sided_j(const ComplexMatrix &rho, int measured) {
    const Fn f = [&](const std::vector<double> &x) { return one_sided_j(rho, measured, x[0], x[1]); };
    return grid_zoom(f, {0.0, 0.0}, {kPi, 2 * kPi * 255.0 / 256.0}, {256, 256}, 9, 3);
}

Maximum max_bilocal_mi(const ComplexMatrix &rho) {
    const Fn f = [&](const std::vector<double> &x) { return bilocal_mi(rho, {x[0], x[1], x[2], x[3]}); };
    const double phi_hi = 2 * kPi * 31.0 / 32.0;
    return grid_zoom(f, {0.0, 0.0, 0.0, 0.0}, {kPi, phi_hi, kPi, phi_hi}, {32, 32, 32, 32}, 7, 3);
}

double mutual_information(const ComplexMatrix &rho) {
    std::vector<double> ev = hermitian_eigenvalues(rho);
    for (double &v : ev) {
        v = std::max(v, 0.0);
    }
    return entropy2(reduce(rho, 0)) + entropy2(reduce(rho, 1)) - shannon(ev);
}

double discord(const ComplexMatrix &rho, int measured) {
    return mutual_information(rho) - max_one_sided_j(rho, measured).value;
}

double classical_mutual_info(const ComplexMatrix &rho) {
    return max_bilocal_mi(rho).value;
}

double propagated_stddev(const std::function<double(const std::vector<double> &)> &f, const std::vector<double> &x,
                         const std::vector<double> &sigmas, double h) {
    double var = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::vector<double> up = x, down = x;
        up[i] += h;
        down[i] -= h;
        const double g = (f(up) - f(down)) / (2 * h);
        var += g * g * sigmas[i] * sigmas[i];
    }
    return std::sqrt(var);
}

}  // namespace qcorr::oracle
