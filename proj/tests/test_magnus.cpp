// Copyright 2026 The ionmed Authors
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

#include <random>

#include "ionmed/magnus.hpp"
#include "ionmed/quadrature.hpp"

namespace ionmed {
namespace {

SystemParams lossless() {
    SystemParams p = reference_params();
    p.gamma = 0.0;
    return p;
}

double period(const SystemParams& p) { return two_pi / p.omega_i; }

TEST(Quadrature, ClosedForms) {
    const double w = 3.0;
    const double T = two_pi / w;
    EXPECT_LT(std::abs(integrate([w](double t) { return std::exp(cplx(0.0, -w * t)); }, 0.0, T)), 1e-14);
    EXPECT_NEAR(integrate([](double t) { return cplx(t * t); }, 0.0, 2.0).real(), 8.0 / 3.0, 1e-14);
    const cplx osc = integrate([w](double t) { return t * std::exp(cplx(0.0, w * t)); }, 0.0, 5 * T, T);
    // int_0^{5T} t e^{iwt} dt = 5T/(i w) since the boundary term of e^{iwt} vanishes.
    EXPECT_LT(std::abs(osc - 5.0 * T / cplx(0.0, w)), 1e-12);
    EXPECT_EQ(integrate([](double) { return cplx(1.0); }, 1.0, 1.0), cplx(0.0));
}

TEST(Phi1, ConstantHamiltonian) {
    TermSum h(2);
    Matrix m(2, 2);
    m << 1.0, cplx(0.0, 2.0), cplx(0.0, -2.0), -1.0;
    h.add("m", "1", 0, constant(3.0), m);
    EXPECT_LT((phi1(h, 0.7) - 3.0 * 0.7 * m).norm(), 1e-13);
    EXPECT_EQ(phi1(h, 0.0).norm(), 0.0);
    EXPECT_THROW(phi1(h, -1.0), std::invalid_argument);
}

TEST(Phi1, LinearInTimeCoefficient) {
    TermSum h(2);
    h.add("a", "1", 0, constant(1.0), Matrix::Identity(2, 2));
    h.add("b", "t", 0, [](double t) { return cplx(t); }, Matrix::Ones(2, 2));
    const double t = 1.3;
    const Matrix expected = t * Matrix::Identity(2, 2) + 0.5 * t * t * Matrix::Ones(2, 2);
    EXPECT_LT((phi1(h, t) - expected).norm(), 1e-13);
}

TEST(Phi1, FullHamiltonianOverOneIonPeriod) {
    const SystemParams p = lossless();
    const TermSum h = full_hamiltonian(p);
    const double T = period(p);
    Matrix expected = Matrix::Zero(h.dim(), h.dim());
    for (const Term& term : h) {
        if (term.order == 0) expected += term.coefficient(0.0) * term.matrix * T;
    }
    const Matrix got = phi1(h, T, T);
    EXPECT_LT((got - expected).norm(), 1e-10 * std::max(1.0, expected.norm()));
}

TEST(Phi2, CommutingFamilyGivesZero) {
    TermSum h(3);
    h.add("d1", "cos", 0, [](double t) { return cplx(std::cos(t)); }, Matrix(Eigen::Vector3cd(1.0, 2.0, 3.0).asDiagonal()));
    h.add("d2", "t", 1, [](double t) { return cplx(t * t); }, Matrix(Eigen::Vector3cd(-1.0, 0.5, 0.0).asDiagonal()));
    EXPECT_EQ(phi2_numeric(h, 2.0).norm(), 0.0);
}

TEST(Phi2, TwoLevelClosedForm) {
    // H = sigma_z + t sigma_x: [H(t'), H(t'')] = (t'' - t') [sz, sx] = 2i (t'' - t') sy,
    // so phi2 = -(i/2) 2i sy int int (t'' - t') = sy * (-t^3/6).
    Matrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, cplx(0, -1), cplx(0, 1), 0;
    sz << 1, 0, 0, -1;
    TermSum h(2);
    h.add("z", "1", 0, constant(1.0), sz);
    h.add("x", "t", 0, [](double t) { return cplx(t); }, sx);
    const double t = 0.9;
    EXPECT_LT((phi2_numeric(h, t) - (-t * t * t / 6.0) * sy).norm(), 1e-13);
}

TEST(Phi2, HermitianForHermitianHamiltonian) {
    const SystemParams p = lossless();
    const TermSum h = full_hamiltonian(p, PulseConfig::only(Atom::first));
    Phi2Options opts;
    opts.panel = period(p);
    const Matrix m = phi2_numeric(h, 0.77 * period(p), opts);
    EXPECT_LT((m - m.adjoint()).norm(), 1e-10 * m.norm());
}

TEST(Magnus, AnalyticGeneratorVanishesAtTimeZero) {
    const SystemParams p = lossless();
    EXPECT_EQ(h_eff_second_order_analytic(p, PulseConfig{}, 0.0).norm(), 0.0);
}

TEST(Magnus, OnePeriodIntegralMatchesNumericSecondOrder) {
    const SystemParams p = lossless();
    const MagnusReport r = magnus_check(p, PulseConfig::only(Atom::first), period(p));
    EXPECT_LT(r.relative_deviation, 1e-6) << "deviation " << r.deviation;
    EXPECT_NEAR(r.beta, derive_couplings(p).beta1, 1e-15);
    EXPECT_GT(operator_norm(r.h2_analytic_integral), 0.0);
}

// Finite-difference oracle: d/dt phi2_numeric equals the analytic generator,
// compared below the phonon cutoff where the truncated ladder algebra is exact.
TEST(Magnus, FiniteDifferenceDerivativeMatchesAnalyticGenerator) {
    const SystemParams p = lossless();
    const PulseConfig cfg = PulseConfig::only(Atom::first);
    const TermSum h = full_hamiltonian(p, cfg);
    const JointBasis b(p.n_max);
    const Matrix q = below_cutoff_projector(b);
    Phi2Options opts;
    opts.drop_zeroth_order_pairs = true;
    opts.panel = period(p);
    const double step = 1e-2 / p.omega_i;

    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int i = 0; i < 4; ++i) {
        const double t0 = u(rng) * M_PI / p.rabi1;
        auto f = [&](double s) { return phi2_numeric(h, t0 + s * step, opts); };
        const Matrix fd = (-f(2) + 8.0 * f(1) - 8.0 * f(-1) + f(-2)) / (12.0 * step);
        const Matrix analytic = h_eff_second_order_analytic(p, cfg, t0);
        const double rel = operator_norm(q * (fd - analytic) * q) / operator_norm(q * analytic * q);
        EXPECT_LT(rel, 1e-6) << "t0=" << t0;
    }
}

TEST(Magnus, SlopeOfExactPowerLaw) {
    EXPECT_NEAR(loglog_slope({1.0, 2.0, 4.0}, {3.0, 24.0, 192.0}), 3.0, 1e-12);
    EXPECT_THROW(loglog_slope({1.0}, {1.0}), std::invalid_argument);
}

TEST(Magnus, BetaScalingReportsPointsOverBudget) {
    const BetaScalingResult r = beta_scaling(lossless(), {0.005, 0.004}, 200, 1);
    ASSERT_EQ(r.points.size(), 2u);
    EXPECT_FALSE(r.all_resolved());
    for (const BetaScalingPoint& pt : r.points) {
        EXPECT_FALSE(pt.resolved);
        EXPECT_TRUE(std::isnan(pt.deviation));
        EXPECT_GT(pt.steps, 1.0);
    }
    EXPECT_TRUE(std::isnan(r.slope));
}

TEST(Magnus, OperatorNorm) {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 1) = 2.0;
    m(2, 2) = cplx(0.0, -3.0);
    EXPECT_NEAR(operator_norm(m), 3.0, 1e-14);
}

}  // namespace
}  // namespace ionmed
