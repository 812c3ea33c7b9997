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

#pragma once

#include <vector>

#include "ionmed/hamiltonian.hpp"
#include "ionmed/term_sum.hpp"

namespace ionmed {

// Magnus expansion of U(t) = T exp(-i int_0^t H), truncated at second order:
//   phi1(t) = int_0^t H(t') dt'
//   phi2(t) = -(i/2) int_0^t dt' int_0^t' dt'' [H(t'), H(t'')]
// with H already divided by hbar. Both exploit the term-sum structure, so
// every integral is a scalar quadrature of coefficient products.

struct Phi2Options {
    /// Drop commutators between two order-0 terms (lasers, static shifts,
    /// decay among themselves). The analytic second-order generator does
    /// not contain them.
    bool drop_zeroth_order_pairs = false;
    /// Quadrature panel length (typically one ion period); 0 disables splitting.
    double panel = 0.0;
    double rel_tol = 1e-13;
};

Matrix phi1(const TermSum& h, double t, double panel = 0.0);

Matrix phi2_numeric(const TermSum& h, double t, const Phi2Options& opts = {});

/// Second-order effective generator as a term sum (order 2): the
/// ion-mediated |1> <-> |r> coupling for every atom whose laser is on, the
/// quadratic single-atom shift, and the mediated |rr> shift.
///
/// The mediated coupling multiplies (|r><1| - |1><r|) by
///   -i u0_j Omega_j / 4 * [ xi(t) t + pi(t)/omega_i - pi(0)/omega_i ],
/// which is the exact time derivative of phi2; it vanishes at t = 0.
TermSum second_order_terms(const SystemParams& params, const PulseConfig& cfg = {});

Matrix h_eff_second_order_analytic(const SystemParams& params, const PulseConfig& cfg, double t);

struct MagnusReport {
    double t = 0.0;
    double beta = 0.0;
    Matrix phi1;
    Matrix phi2_numeric;
    Matrix h2_analytic_integral;
    /// || Q (phi2_numeric - int H2) Q ||_2, Q = projector below the phonon cutoff.
    double deviation = 0.0;
    double relative_deviation = 0.0;
};

/// Compares the numerically integrated phi2 of full_hamiltonian (order-0
/// pairs removed) against the integral of the analytic generator.
MagnusReport magnus_check(const SystemParams& params, const PulseConfig& cfg, double t);

/// Spectral norm.
double operator_norm(const Matrix& m);

struct BetaScalingPoint {
    double beta = 0.0;
    double z_scale = 0.0;
    double deviation = 0.0;  // || U_full - U_eff ||_2 over one pulse, NaN if unresolved
    double steps = 0.0;      // steps per propagator the point needs
    bool resolved = false;   // false when steps exceeded the budget and nothing was run
};

struct BetaScalingResult {
    std::vector<BetaScalingPoint> points;
    /// Least-squares d log(deviation) / d log(beta) over the resolved points;
    /// NaN with fewer than two.
    double slope = 0.0;
    bool all_resolved() const;
};

/// Scales both atom positions so that beta_1 takes each requested value and
/// compares full and effective propagators over a pi pulse on atom 1.
BetaScalingResult beta_scaling(const SystemParams& params, const std::vector<double>& betas,
                               int steps_per_period = 200, long max_steps = 200000);

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ionmed
