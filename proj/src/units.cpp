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

#include "ionmed/units.hpp"

#include <cmath>
#include <sstream>

namespace ionmed {

namespace {

constexpr double kMaxBeta = 0.1;

double signum(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

void SystemParams::validate() const {
    if (!(omega_i > 0.0)) throw ParameterError("omega_i must be positive");
    if (!(ion_mass > 0.0)) throw ParameterError("ion_mass must be positive");
    if (z1 == 0.0 || z2 == 0.0) throw ParameterError("atom positions must be nonzero");
    if (signum(z1) == signum(z2)) {
        throw ParameterError("atoms must sit on opposite sides of the ion (sign(z1) != sign(z2))");
    }
    if (n_max < 2) throw ParameterError("n_max must be at least 2");
    if (gamma < 0.0) throw ParameterError("gamma must be non-negative");
    if (!std::isfinite(c4) || !std::isfinite(c6)) throw ParameterError("C4/C6 must be finite");
}

double atomic_units_to_si_c4(double value_au) {
    const double a2 = si::bohr * si::bohr;
    return value_au * si::hartree * a2 * a2;
}

double c6_from_h_thz_um6(double value) {
    const double um6 = std::pow(si::micron, 6);
    return value * 1e12 * si::planck * um6;
}

double direct_vdw_strength(const SystemParams& params) {
    const double r = std::abs(params.z1 - params.z2);
    if (!(r > 0.0)) throw ParameterError("atom separation must be positive");
    return -params.c6 / (si::hbar * std::pow(r, 6));
}

DerivedCouplings derive_couplings(const SystemParams& params) {
    params.validate();

    DerivedCouplings d;
    d.lambda_i = std::sqrt(si::hbar / (params.ion_mass * params.omega_i));
    d.beta1 = 4.0 * d.lambda_i / std::abs(params.z1);
    d.beta2 = 4.0 * d.lambda_i / std::abs(params.z2);
    for (Atom a : {Atom::first, Atom::second}) {
        const double b = d.beta(a);
        if (!(b < kMaxBeta)) {
            std::ostringstream msg;
            msg << "beta for atom " << index_of(a) + 1 << " is " << b
                << " (>= " << kMaxBeta << "); ion-atom expansion is not perturbative";
            throw ParameterError(msg.str());
        }
    }

    d.v0_1 = params.c4 / (si::hbar * std::pow(params.z1, 4));
    d.v0_2 = params.c4 / (si::hbar * std::pow(params.z2, 4));
    d.u0_1 = d.v0_1 * d.beta1;
    d.u0_2 = d.v0_2 * d.beta2;
    d.detuning1 = params.detuning1.value_or(d.v0_1);
    d.detuning2 = params.detuning2.value_or(d.v0_2);

    d.v_rr_direct = direct_vdw_strength(params);
    d.v_med_peak = 2.0 * d.u0_1 * d.u0_2 / params.omega_i;
    d.v_med_mean = 0.5 * d.v_med_peak;

    const double w2 = params.omega_i * params.omega_i;
    d.kappa1 = d.u0_1 * params.rabi1 / (4.0 * w2);
    d.kappa2 = d.u0_2 * params.rabi2 / (4.0 * w2);
    d.kappa1_rate = d.u0_1 * params.rabi1 / (4.0 * params.omega_i);
    d.kappa2_rate = d.u0_2 * params.rabi2 / (4.0 * params.omega_i);
    return d;
}

SystemParams reference_params() { return SystemParams{}; }

}  // namespace ionmed
