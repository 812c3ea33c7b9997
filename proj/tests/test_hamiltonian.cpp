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

#include <Eigen/Eigenvalues>
#include <map>
#include <random>

#include "ionmed/hamiltonian.hpp"
#include "ionmed/magnus.hpp"

namespace ionmed {
namespace {

const Term& find_term(const TermSum& h, const std::string& label) {
    for (const Term& t : h) {
        if (t.label == label) return t;
    }
    throw std::runtime_error("no term " + label);
}

SystemParams lossless() {
    SystemParams p = reference_params();
    p.gamma = 0.0;
    return p;
}

TEST(TermSum, EvaluatesSumAndRejectsBadDimensions) {
    TermSum h(2);
    h.add("a", "1", 0, constant(2.0), Matrix::Identity(2, 2));
    h.add("b", "t", 1, [](double t) { return cplx(t); }, Matrix::Ones(2, 2));
    const Matrix m = h(3.0);
    EXPECT_EQ(m(0, 0), cplx(5.0));
    EXPECT_EQ(m(0, 1), cplx(3.0));
    EXPECT_EQ(h.filter_order(1, 1).size(), 1u);
    EXPECT_THROW(h.add("c", "", 0, constant(1.0), Matrix::Identity(3, 3)), std::invalid_argument);
    EXPECT_THROW(h.add("d", "", 0, constant(1.0), Matrix::Zero(2, 3)), std::invalid_argument);
    Matrix buf = Matrix::Constant(2, 2, 99.0);
    h.evaluate_into(3.0, buf);
    EXPECT_EQ(buf, m);
}

TEST(Laser, ZeroRabiAndDetuningGivesZero) {
    const JointBasis b(3);
    EXPECT_EQ(laser_term(b, Atom::first, 0.0, 0.0)(0.0).norm(), 0.0);
}

TEST(Laser, ResonantDoubletAndMatrixElement) {
    const JointBasis b(3);
    const double rabi = mhz_over_2pi(0.16);
    const Matrix h = laser_term(b, Atom::first, rabi, 0.0)(0.0);
    for (int n = 0; n <= 3; ++n) {
        const int from = b.index(AtomLevel::level1, AtomLevel::level0, n);
        const int to = b.index(AtomLevel::rydberg, AtomLevel::level0, n);
        EXPECT_EQ(h(to, from), cplx(0.5 * rabi));
        Eigen::Matrix2cd block;
        block << h(from, from), h(from, to), h(to, from), h(to, to);
        const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(block).eigenvalues();
        EXPECT_NEAR(ev(0), -0.5 * rabi, 1e-9);
        EXPECT_NEAR(ev(1), 0.5 * rabi, 1e-9);
    }
    // |0> is never laser coupled.
    const int dark = b.index(AtomLevel::level0, AtomLevel::level1, 0);
    EXPECT_EQ(h.col(dark).norm(), 0.0);
}

TEST(Laser, DetuningSign) {
    const JointBasis b(2);
    const Matrix h = laser_term(b, Atom::second, 0.0, 5.0)(0.0);
    EXPECT_EQ(h(b.index(AtomLevel::level0, AtomLevel::rydberg, 1), b.index(AtomLevel::level0, AtomLevel::rydberg, 1)),
              cplx(-5.0));
}

TEST(FullHamiltonian, PhononCouplingAtTimeZero) {
    const SystemParams p = lossless();
    const DerivedCouplings d = derive_couplings(p);
    const JointBasis b(p.n_max);
    const TermSum h = full_hamiltonian(p);
    const auto [a, ad] = ladder_ops(p.n_max);
    const Matrix expected = d.u0_1 * phonon_embed(b, (a + ad) / std::sqrt(2.0)) *
                            embed(b, Atom::first, atom_projector(AtomLevel::rydberg));
    const Matrix got = find_term(h, "phonon_coupling_a[1]").coefficient(0.0) * find_term(h, "phonon_coupling_a[1]").matrix +
                       find_term(h, "phonon_coupling_adag[1]").coefficient(0.0) *
                           find_term(h, "phonon_coupling_adag[1]").matrix;
    EXPECT_LT((got - expected).norm(), 1e-14 * expected.norm());
}

TEST(FullHamiltonian, WithoutIonCouplingHasNoPhononContent) {
    SystemParams p = lossless();
    p.c4 = 0.0;
    const JointBasis b(p.n_max);
    const auto [a, ad] = ladder_ops(p.n_max);
    const Matrix num = phonon_embed(b, ad * a);
    const TermSum h = full_hamiltonian(p);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> t(0.0, 2e-5);
    for (int i = 0; i < 20; ++i) {
        const Matrix m = h(t(rng));
        EXPECT_LT((m * num - num * m).norm(), 1e-12);
    }
    // Only lasers and the direct |rr> shift remain.
    const Matrix expected = laser_term(b, Atom::first, p.rabi1, 0.0)(0.0) + laser_term(b, Atom::second, p.rabi2, 0.0)(0.0) +
                            derive_couplings(p).v_rr_direct * rr_projector(b);
    EXPECT_LT((h(1.234e-6) - expected).norm(), 1e-9);
}

TEST(FullHamiltonian, HermitianAtRandomTimes) {
    const TermSum full = full_hamiltonian(lossless());
    const TermSum eff = effective_hamiltonian(lossless());
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> t(0.0, 15e-6);
    for (int i = 0; i < 1000; ++i) {
        const double s = t(rng);
        const Matrix f = full(s);
        const Matrix e = eff(s);
        ASSERT_LT((f - f.adjoint()).norm(), 1e-12) << "t=" << s;
        ASSERT_LT((e - e.adjoint()).norm(), 1e-12) << "t=" << s;
    }
}

TEST(FullHamiltonian, LabelsAndOrders) {
    const TermSum h = effective_hamiltonian(reference_params(), PulseConfig::only(Atom::second));
    std::map<std::string, int> order;
    for (const Term& t : h) order[t.label] = t.order;
    EXPECT_EQ(order.at("laser_rabi[2]"), 0);
    EXPECT_EQ(order.at("static_shift[1]"), 0);
    EXPECT_EQ(order.at("phonon_coupling_a[1]"), 1);
    EXPECT_EQ(order.at("mediated_rabi_adag[2]"), 2);
    EXPECT_EQ(order.at("vdw_mediated"), 2);
    EXPECT_EQ(order.at("vdw_direct"), 0);
    EXPECT_EQ(order.at("rydberg_decay"), 0);
    EXPECT_EQ(order.count("mediated_rabi_a[1]"), 0u);
    for (const Term& t : h) EXPECT_FALSE(t.formula.empty()) << t.label;
}

TEST(Decay, ZeroGammaIsZeroAndNegativeRejected) {
    const JointBasis b(2);
    EXPECT_EQ(decay_term(b, 0.0)(0.0).norm(), 0.0);
    EXPECT_THROW(decay_term(b, -1.0), std::invalid_argument);
    const Matrix m = decay_term(b, 2.0)(0.0);
    EXPECT_LT((m + m.adjoint()).norm(), 1e-15);
    const int rr = b.index(AtomLevel::rydberg, AtomLevel::rydberg, 0);
    EXPECT_EQ(m(rr, rr), cplx(0.0, -2.0));
}

TEST(EffectiveHamiltonian, EnvelopesAtZeroAndHalfPeriod) {
    const SystemParams p = lossless();
    const DerivedCouplings d = derive_couplings(p);
    const TermSum h = effective_hamiltonian(p);
    EXPECT_EQ(find_term(h, "vdw_mediated").coefficient(0.0), cplx(0.0));
    EXPECT_EQ(find_term(h, "quadratic_shift[1]").coefficient(0.0), cplx(0.0));
    const double half = M_PI / p.omega_i;
    const cplx peak = find_term(h, "vdw_mediated").coefficient(half);
    EXPECT_NEAR(peak.real(), -2.0 * d.u0_1 * d.u0_2 / p.omega_i, 1e-9 * std::abs(peak));
    EXPECT_NEAR(std::abs(peak), mhz_over_2pi(0.85), 0.05 * mhz_over_2pi(0.85));
    EXPECT_NEAR(find_term(h, "quadratic_shift[2]").coefficient(half).real(),
                -d.u0_2 * d.u0_2 / p.omega_i, 1e-6);
}

TEST(EffectiveHamiltonian, EqualsFullPlusSecondOrderTermByTerm) {
    const SystemParams p = reference_params();
    const PulseConfig cfg = PulseConfig::only(Atom::first);
    const TermSum full = full_hamiltonian(p, cfg);
    const TermSum second = second_order_terms(p, cfg);
    const TermSum eff = effective_hamiltonian(p, cfg);
    ASSERT_EQ(eff.size(), full.size() + second.size());
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> t(0.0, 6.25e-6);
    for (int i = 0; i < 50; ++i) {
        const double s = t(rng);
        EXPECT_LT((eff(s) - full(s) - h_eff_second_order_analytic(p, cfg, s)).norm(), 1e-6);
        const auto& et = eff.terms();
        for (std::size_t k = 0; k < full.size(); ++k) {
            EXPECT_EQ(et[k].label, full.terms()[k].label);
            EXPECT_EQ(et[k].coefficient(s), full.terms()[k].coefficient(s));
        }
        for (std::size_t k = 0; k < second.size(); ++k) {
            EXPECT_EQ(et[full.size() + k].coefficient(s), second.terms()[k].coefficient(s));
        }
    }
}

TEST(EffectiveHamiltonian, MediatedRabiTermIsHermitian) {
    const SystemParams p = lossless();
    const TermSum h = second_order_terms(p, PulseConfig::only(Atom::first));
    const Term& ta = find_term(h, "mediated_rabi_a[1]");
    const Term& tb = find_term(h, "mediated_rabi_adag[1]");
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> t(0.0, 6.25e-6);
    for (int i = 0; i < 100; ++i) {
        const double s = t(rng);
        const Matrix m = ta.coefficient(s) * ta.matrix + tb.coefficient(s) * tb.matrix;
        EXPECT_LT((m - m.adjoint()).norm(), 1e-12 * std::max(1.0, m.norm()));
    }
}

TEST(EffectiveHamiltonian, ReducesToFullWithoutIonCoupling) {
    SystemParams p = reference_params();
    p.c4 = 0.0;
    const TermSum full = full_hamiltonian(p);
    const TermSum eff = effective_hamiltonian(p);
    for (double t : {0.0, 1e-6, 3.3e-6, 12e-6}) EXPECT_EQ((eff(t) - full(t)).norm(), 0.0);
}

TEST(EffectiveHamiltonian, MediatedTermsVanishWithoutRydbergComponent) {
    const SystemParams p = lossless();
    const JointBasis b(p.n_max);
    const TermSum med = second_order_terms(p);
    std::mt19937 rng(17);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        Vector psi = Vector::Zero(b.dim());
        for (int k = 0; k < b.dim(); ++k) {
            const BasisState s = b.state(k);
            if (s.a1 != AtomLevel::rydberg && s.a2 != AtomLevel::rydberg) psi(k) = cplx(g(rng), g(rng));
        }
        psi.normalize();
        const double t = 1e-6 * (trial + 0.5);
        EXPECT_LT(std::abs(psi.dot(med(t) * psi)), 1e-9);
    }
}

TEST(EffectiveHamiltonian, RejectsActiveLaserWithZeroRabi) {
    SystemParams p = reference_params();
    p.rabi2 = 0.0;
    EXPECT_THROW(effective_hamiltonian(p, PulseConfig{true, true}), ParameterError);
    EXPECT_NO_THROW(effective_hamiltonian(p, PulseConfig::only(Atom::first)));
}

TEST(HamiltonianKind, ParseAndPrint) {
    EXPECT_EQ(parse_hamiltonian_kind("full"), HamiltonianKind::full);
    EXPECT_EQ(to_string(HamiltonianKind::effective), "effective");
    EXPECT_THROW(parse_hamiltonian_kind("bogus"), std::invalid_argument);
}

}  // namespace
}  // namespace ionmed
