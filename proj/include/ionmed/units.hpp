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

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace ionmed {

/// CODATA 2018 values, SI.
namespace si {
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double planck = 6.62607015e-34;
inline constexpr double atomic_mass_unit = 1.66053906660e-27;
inline constexpr double hartree = 4.3597447222071e-18;
inline constexpr double bohr = 5.29177210903e-11;
inline constexpr double micron = 1e-6;
}  // namespace si

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Angular frequency (rad/s) from a value quoted as f/(2 pi) in MHz.
constexpr double mhz_over_2pi(double f) { return two_pi * f * 1e6; }
constexpr double khz_over_2pi(double f) { return two_pi * f * 1e3; }
constexpr double to_mhz_over_2pi(double w) { return w / (two_pi * 1e6); }

enum class Atom { first, second };

constexpr int index_of(Atom a) { return a == Atom::first ? 0 : 1; }

class ParameterError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Physical inputs. Frequencies are angular (rad/s), lengths in m,
/// energies as SI coefficients. Everything downstream works in units
/// of energy/hbar.
struct SystemParams {
    double ion_mass = 40.0 * si::atomic_mass_unit;
    double atom_mass = 86.909180527 * si::atomic_mass_unit;  // not used by the dynamics
    double omega_i = mhz_over_2pi(0.32);
    double z1 = -10.5 * si::micron;
    double z2 = 10.5 * si::micron;
    // -160 a.u. ground-state value scaled by 5.07e10 for the n ~ 90 S level
    double c4 = -160.0 * 5.07e10 * si::hartree * si::bohr * si::bohr * si::bohr * si::bohr;  // J m^4
    // -h * 16.69 THz um^6
    double c6 = -16.69e12 * si::planck * 1e-36;  // J m^6
    double rabi1 = mhz_over_2pi(0.16);
    double rabi2 = mhz_over_2pi(0.16);
    // Unset means "cancel the static ion-induced shift" (detuning = v0_j).
    std::optional<double> detuning1;
    std::optional<double> detuning2;
    double gamma = khz_over_2pi(10.0);
    int n_max = 5;

    double rabi(Atom a) const { return a == Atom::first ? rabi1 : rabi2; }
    double z(Atom a) const { return a == Atom::first ? z1 : z2; }

    /// Throws ParameterError on any violated invariant (sign, range, truncation).
    void validate() const;
};

struct DerivedCouplings {
    double lambda_i = 0.0;   // m
    double beta1 = 0.0;
    double beta2 = 0.0;
    double v0_1 = 0.0;       // rad/s
    double v0_2 = 0.0;
    double u0_1 = 0.0;
    double u0_2 = 0.0;
    double detuning1 = 0.0;  // resolved laser detunings, rad/s
    double detuning2 = 0.0;
    double v_rr_direct = 0.0;
    double v_med_peak = 0.0;
    double v_med_mean = 0.0;
    double kappa1 = 0.0;     // u0_j rabi_j / (4 omega_i^2)
    double kappa2 = 0.0;
    // u0_j rabi_j / (4 omega_i), the frequency-valued form, rad/s
    double kappa1_rate = 0.0;
    double kappa2_rate = 0.0;

    double beta(Atom a) const { return a == Atom::first ? beta1 : beta2; }
    double v0(Atom a) const { return a == Atom::first ? v0_1 : v0_2; }
    double u0(Atom a) const { return a == Atom::first ? u0_1 : u0_2; }
    double detuning(Atom a) const { return a == Atom::first ? detuning1 : detuning2; }
};

/// Hartree * bohr^4, i.e. one atomic unit of C4 in J m^4.
double atomic_units_to_si_c4(double value_au);

/// Rydberg-Rydberg coefficient from h * (value) * THz um^6.
double c6_from_h_thz_um6(double value);

/// Signed direct van der Waals shift of |rr>, -C6/(hbar |z1-z2|^6), rad/s.
double direct_vdw_strength(const SystemParams& params);

/// All couplings the Hamiltonians need. Rejects beta_j >= 0.1.
DerivedCouplings derive_couplings(const SystemParams& params);

/// The Rb/Ca+ operating point used throughout the examples and defaults.
SystemParams reference_params();

}  // namespace ionmed
