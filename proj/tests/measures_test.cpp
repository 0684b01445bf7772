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

#include <gtest/gtest.h>

#include <cmath>

#include "qcorr/measures.hpp"
#include "qcorr/states.hpp"
#include "support/oracles.hpp"

namespace qcorr {
namespace {

double h2(double p) {
    return oracle::shannon({p, 1.0 - p});
}

DensityMatrix product_of(const DensityMatrix &a_src, const DensityMatrix &b_src) {
    return product_state(reduced_state(a_src, Side::A), reduced_state(b_src, Side::B));
}

double table_mi(const std::vector<double> &p) {
    return oracle::shannon({p[0] + p[1], p[2] + p[3]}) + oracle::shannon({p[0] + p[2], p[1] + p[3]}) -
           oracle::shannon(p);
}

TEST(MeasurementBasis, ProjectorsFormCompleteOrthogonalPair) {
    for (double theta : {0.0, 0.7, 2.0, M_PI}) {
        for (double phi : {0.0, 1.3, 4.0}) {
            const MeasurementBasis b{theta, phi};
            const ComplexMatrix p0 = b.projector(0);
            const ComplexMatrix p1 = b.projector(1);
            EXPECT_LT(max_abs_diff(p0 + p1, ComplexMatrix::identity(2)), 1e-12);
            EXPECT_LT(max_abs_diff(p0 * p0, p0), 1e-12);
            EXPECT_LT(max_abs_diff(p1 * p1, p1), 1e-12);
            EXPECT_GE(b.ket()[0].real(), 0.0);
            EXPECT_EQ(b.ket()[0].imag(), 0.0);
        }
    }
}

TEST(BiLocalBasis, ProjectorsSumToIdentity) {
    const BiLocalBasis b{{0.4, 1.1}, {2.2, 5.0}};
    ComplexMatrix sum(4);
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            sum += b.projector(k, l);
        }
    }
    EXPECT_LT(max_abs_diff(sum, ComplexMatrix::identity(4)), 1e-12);
}

TEST(Entropy, PureMixedAndWerner) {
    EXPECT_NEAR(vn_entropy(bell_phi(0.3)), 0.0, 1e-12);
    EXPECT_NEAR(vn_entropy(maximally_mixed()), 2.0, 1e-12);
    const double expected = oracle::shannon({0.6805, 0.1065, 0.1065, 0.1065});
    EXPECT_NEAR(vn_entropy(werner(0.426)), expected, 1e-12);
    EXPECT_NEAR(expected, 1.41023, 1e-5);
}

TEST(Entropy, AdditiveOnProducts) {
    auto rng = make_rng(77);
    for (int t = 0; t < 50; ++t) {
        const DensityMatrix x = random_state(rng);
        const DensityMatrix y = random_state(rng);
        const ComplexMatrix ra = reduced_state(x, Side::A);
        const ComplexMatrix rb = reduced_state(y, Side::B);
        EXPECT_NEAR(vn_entropy(product_state(ra, rb)), vn_entropy(ra) + vn_entropy(rb), 1e-10);
    }
}

TEST(MutualInformation, Examples) {
    auto rng = make_rng(5);
    const DensityMatrix r = random_state(rng);
    EXPECT_NEAR(mutual_information(product_of(r, random_state(rng))), 0.0, 1e-10);
    EXPECT_NEAR(mutual_information(bell_phi(0.5)), 2.0, 1e-12);
    const double expected = 2.0 - oracle::shannon({0.625, 0.125, 0.125, 0.125});
    EXPECT_NEAR(mutual_information(werner(0.5)), expected, 1e-12);
    EXPECT_NEAR(expected, 0.4512, 1e-4);
}

TEST(ConditionalEntropy, ProductStateGivesUnmeasuredEntropy) {
    auto rng = make_rng(6);
    const DensityMatrix rho = product_of(random_state(rng), random_state(rng));
    const double sa = vn_entropy(reduced_state(rho, Side::A));
    for (double theta : {0.0, 1.0, 2.5}) {
        EXPECT_NEAR(conditional_entropy_post_meas(rho, {theta, 0.3}, Side::B), sa, 1e-10);
    }
}

TEST(ConditionalEntropy, BellInZIsZero) {
    EXPECT_NEAR(conditional_entropy_post_meas(bell_phi(0.5), {0.0, 0.0}, Side::B), 0.0, 1e-12);
}

TEST(ConditionalEntropy, WernerHalfInZ) {
    // Outcome 0 on B leaves A with <00|rho|00> = 3/8 and <10|rho|10> = 1/8,
    // i.e. conditional populations {3/4, 1/4}; outcome 1 mirrors it.
    const DensityMatrix rho = werner(0.5);
    EXPECT_NEAR(rho(0, 0).real(), 0.375, 1e-15);
    EXPECT_NEAR(rho(2, 2).real(), 0.125, 1e-15);
    EXPECT_NEAR(conditional_entropy_post_meas(rho, {0.0, 0.0}, Side::B), h2(0.25), 1e-12);
    EXPECT_NEAR(conditional_entropy_post_meas(rho, {0.0, 0.0}, Side::A), h2(0.25), 1e-12);
}

TEST(ConditionalEntropy, MatchesOracleOnRandomStates) {
    auto rng = make_rng(31);
    for (int t = 0; t < 30; ++t) {
        const DensityMatrix rho = random_state(rng);
        const MeasurementBasis b{0.1 * t, 0.37 * t};
        const double sa = vn_entropy(reduced_state(rho, Side::A));
        EXPECT_NEAR(sa - conditional_entropy_post_meas(rho, b, Side::B),
                    oracle::one_sided_j(rho.matrix(), 1, b.theta, b.phi), 1e-10);
        const BiLocalBasis bl{{0.2 * t, 0.1}, {1.0, 0.3 * t}};
        EXPECT_NEAR(measured_mutual_information(rho, bl),
                    oracle::bilocal_mi(rho.matrix(), {bl.a.theta, bl.a.phi, bl.b.theta, bl.b.phi}), 1e-10);
    }
}

TEST(ClassicalCorrelation, ClassicalStateGivesTableMutualInformation) {
    const std::vector<double> p = {0.4, 0.1, 0.2, 0.3};
    const DensityMatrix rho{ComplexMatrix::diagonal(p)};
    EXPECT_NEAR(classical_correlation(rho, Side::B).value, table_mi(p), 1e-8);
    EXPECT_NEAR(classical_correlation(rho, Side::A).value, table_mi(p), 1e-8);
}

TEST(ClassicalCorrelation, BellAndProduct) {
    EXPECT_NEAR(classical_correlation(bell_phi(0.5), Side::B).value, 1.0, 1e-9);
    auto rng = make_rng(8);
    const DensityMatrix prod = product_of(random_state(rng), random_state(rng));
    EXPECT_NEAR(classical_correlation(prod, Side::B).value, 0.0, 1e-9);
}

TEST(Discord, PureStatesGiveEntanglementEntropy) {
    for (double p : {0.1, 0.3, 0.5, 0.8, 1.0}) {
        const DensityMatrix rho = bell_phi(p);
        EXPECT_NEAR(discord(rho, Side::B).value, h2(p), 1e-6) << "p = " << p;
        EXPECT_NEAR(discord(rho, Side::A).value, h2(p), 1e-6) << "p = " << p;
    }
}

TEST(Discord, ClassicalCornerOfUpperFamily) {
    EXPECT_NEAR(discord(rho_up(0.2, 1.0), Side::B).value, 0.0, 1e-9);
    EXPECT_NEAR(discord(rho_up(0.2, 1.0), Side::A).value, 0.0, 1e-9);
}

TEST(Discord, WernerMatchesOracle) {
    const DensityMatrix rho = werner(0.3);
    EXPECT_NEAR(discord(rho, Side::B).value, oracle::discord(rho.matrix(), 1), 1e-4);
    EXPECT_NEAR(discord(rho, Side::A).value, oracle::discord(rho.matrix(), 0), 1e-4);
}

TEST(Discord, NeverNegative) {
    const DensityMatrix rho = maximally_mixed();
    EXPECT_GE(discord(rho, Side::B).value, 0.0);
}

TEST(DiscordSym, QuantumClassicalStateIsAsymmetric) {
    // 1/2 |0><0| (x) |0><0| + 1/2 |+><+| (x) |1><1|.
    const Complex h = 1.0 / std::sqrt(2.0);
    const Complex zero[] = {1.0, 0.0};
    const Complex plus[] = {h, h};
    const ComplexMatrix p0 = ComplexMatrix::projector(zero);
    const ComplexMatrix pp = ComplexMatrix::projector(plus);
    const double b0[] = {1.0, 0.0};
    const double b1[] = {0.0, 1.0};
    const ComplexMatrix m = kron(p0, ComplexMatrix::diagonal(b0)) * Complex(0.5) +
                            kron(pp, ComplexMatrix::diagonal(b1)) * Complex(0.5);
    const DensityMatrix rho{m};
    const double left = discord(rho, Side::B).value;
    EXPECT_NEAR(left, 0.0, 1e-7);
    EXPECT_NEAR(oracle::discord(m, 1), 0.0, 1e-7);
    EXPECT_GT(discord(rho, Side::A).value, 1e-2);
    EXPECT_GT(discord_sym(rho), 1e-2);
}

TEST(DiscordSym, WernerIsSymmetric) {
    for (double eps : {0.1, 0.3, 0.6, 0.9}) {
        const DensityMatrix rho = werner(eps);
        const double left = discord(rho, Side::B).value;
        const double right = discord(rho, Side::A).value;
        EXPECT_NEAR(left, right, 1e-5);
        EXPECT_NEAR(discord_sym(rho), left, 1e-5);
    }
}

TEST(DiscordSym, ClassicalDiagonalIsZero) {
    const double d[] = {0.4, 0.1, 0.2, 0.3};
    EXPECT_NEAR(discord_sym(DensityMatrix{ComplexMatrix::diagonal(d)}), 0.0, 1e-9);
}

TEST(ClassicalMutualInfo, Examples) {
    EXPECT_NEAR(classical_mutual_info(bell_phi(0.5)).value, 1.0, 1e-8);
    auto rng = make_rng(12);
    EXPECT_NEAR(classical_mutual_info(product_of(random_state(rng), random_state(rng))).value, 0.0, 1e-9);
    const std::vector<double> p = {0.4, 0.1, 0.2, 0.3};
    const BiLocalResult r = classical_mutual_info(DensityMatrix{ComplexMatrix::diagonal(p)});
    EXPECT_NEAR(r.value, table_mi(p), 1e-8);
    EXPECT_NEAR(measured_mutual_information(DensityMatrix{ComplexMatrix::diagonal(p)}, BiLocalBasis{}), table_mi(p),
                1e-12);
}

TEST(Amid, Examples) {
    EXPECT_NEAR(amid(bell_phi(0.5)), 1.0, 1e-8);
    EXPECT_NEAR(amid(maximally_mixed()), 0.0, 1e-9);
}

TEST(Report, InvariantsOnRandomStates) {
    auto rng = make_rng(2);
    for (int t = 0; t < 30; ++t) {
        const DensityMatrix rho = random_state(rng);
        const CorrelationReport r = correlation_report(rho);
        EXPECT_EQ(r.D_sym, std::max(r.D_left, r.D_right));
        EXPECT_EQ(r.A, std::max(0.0, r.I - r.I_c));
        EXPECT_GE(r.A, r.D_sym - 1e-4);
        EXPECT_GE(r.D_left, 0.0);
        EXPECT_GE(r.D_right, 0.0);
        EXPECT_LE(r.D_left, r.I + 1e-9);
        EXPECT_LE(r.D_right, r.I + 1e-9);
        EXPECT_GE(r.I_c, -1e-9);
        EXPECT_TRUE(r.converged);
        EXPECT_GT(r.optimizer_evals, 0u);
    }
}

TEST(Report, PureStatesHaveEqualAmidAndDiscord) {
    auto rng = make_rng(3);
    for (int t = 0; t < 10; ++t) {
        // Schmidt form hidden behind random local unitaries.
        const double p = 0.05 + 0.09 * t;
        const DensityMatrix rho =
            apply_local_unitary(bell_phi(p), random_unitary2(rng), random_unitary2(rng));
        const CorrelationReport r = correlation_report(rho);
        EXPECT_NEAR(r.A, r.D_sym, 1e-4);
        EXPECT_NEAR(r.D_sym, h2(p), 1e-5);
    }
}

TEST(Report, LocalUnitaryInvariance) {
    auto rng = make_rng(4);
    for (int t = 0; t < 5; ++t) {
        const DensityMatrix rho = random_state(rng);
        const DensityMatrix rotated = apply_local_unitary(rho, random_unitary2(rng), random_unitary2(rng));
        const CorrelationReport a = correlation_report(rho);
        const CorrelationReport b = correlation_report(rotated);
        EXPECT_NEAR(a.S, b.S, 1e-9);
        EXPECT_NEAR(a.I, b.I, 1e-9);
        EXPECT_NEAR(a.D_left, b.D_left, 1e-6);
        EXPECT_NEAR(a.D_right, b.D_right, 1e-6);
        EXPECT_NEAR(a.I_c, b.I_c, 1e-6);
        EXPECT_NEAR(a.A, b.A, 1e-6);
    }
}

TEST(Report, MatchesBruteForceOracle) {
    auto rng = make_rng(100);
    for (int t = 0; t < 8; ++t) {
        const DensityMatrix rho = random_state(rng);
        const CorrelationReport r = correlation_report(rho);
        EXPECT_NEAR(r.D_left, oracle::discord(rho.matrix(), 1), 1e-4);
        EXPECT_NEAR(r.D_right, oracle::discord(rho.matrix(), 0), 1e-4);
        EXPECT_NEAR(r.I_c, oracle::classical_mutual_info(rho.matrix()), 1e-4);
    }
}

TEST(Report, DiscordReportSkipsBilocalSearch) {
    const CorrelationReport full = correlation_report(werner(0.4));
    const CorrelationReport part = discord_report(werner(0.4));
    EXPECT_EQ(part.D_sym, full.D_sym);
    EXPECT_LT(part.optimizer_evals, full.optimizer_evals);
}

}  // namespace
}  // namespace qcorr
