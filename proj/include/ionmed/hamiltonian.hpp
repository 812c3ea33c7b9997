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

#include <string_view>

#include "ionmed/term_sum.hpp"
#include "ionmed/units.hpp"

namespace ionmed {

enum class HamiltonianKind { full, effective };

std::string_view to_string(HamiltonianKind k);
HamiltonianKind parse_hamiltonian_kind(std::string_view s);

/// Which lasers are switched on during a pulse.
struct PulseConfig {
    bool laser1 = true;
    bool laser2 = true;

    bool laser(Atom a) const { return a == Atom::first ? laser1 : laser2; }
    static PulseConfig only(Atom a) { return {a == Atom::first, a == Atom::second}; }
};

/// Phonon operators lifted to the joint space, shared by the builders.
struct PhononOps {
    Matrix a;       // 1 (x) a
    Matrix a_dag;   // 1 (x) a^dagger
    explicit PhononOps(const JointBasis& basis);
};

/// -detuning |r><r| + (rabi/2)(|r><1| + |1><r|) on one atom, time independent.
TermSum laser_term(const JointBasis& basis, Atom atom, double rabi, double detuning);

/// -i (gamma/2) sum_j |r><r|_j. Anti-Hermitian amplitude damping.
TermSum decay_term(const JointBasis& basis, double gamma);

/// u0 xi(t) |r><r|_j with xi(t) = (a e^{-i w t} + a^dagger e^{i w t})/sqrt(2),
/// split into its a and a^dagger parts.
TermSum phonon_coupling_term(const JointBasis& basis, const PhononOps& ops, Atom atom, double u0,
                             double omega_i);

/// Linearised ion-atom Hamiltonian in the phonon interaction picture:
/// lasers, static shifts, first-order phonon coupling, direct |rr> shift
/// and decay. This is the brute-force reference for the effective model.
TermSum full_hamiltonian(const SystemParams& params, const PulseConfig& cfg = {});

/// full_hamiltonian plus the second-order generator (mediated Rabi
/// coupling, quadratic single-atom shift, mediated |rr> shift).
/// Throws ParameterError if cfg switches on a laser whose Rabi frequency is 0.
TermSum effective_hamiltonian(const SystemParams& params, const PulseConfig& cfg = {});

TermSum build_hamiltonian(HamiltonianKind kind, const SystemParams& params,
                          const PulseConfig& cfg = {});

}  // namespace ionmed
