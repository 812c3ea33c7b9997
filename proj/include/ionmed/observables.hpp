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

#include <string>
#include <vector>

#include "ionmed/hilbert.hpp"
#include "ionmed/propagator.hpp"

namespace ionmed {

/// Diagonal of the reduced phonon density matrix of a pure (possibly
/// sub-normalised) state. Sums to ||psi||^2.
struct PhononDistribution {
    std::vector<double> probabilities;
    std::string tag;

    double total() const;
};

PhononDistribution phonon_distribution(const StateVector& state, const JointBasis& basis,
                                       std::string tag = {});

/// Sum_n |<rr,n|psi>|^2.
double rydberg_pair_population(const Vector& psi, const JointBasis& basis);

struct StateFidelity {
    double fidelity = 0.0;  // |<target|psi>|^2
    cplx overlap;           // <target|psi>, target carries its ideal phase
};

/// Overlap with coefficient * |target>.
StateFidelity state_fidelity(const StateVector& final, const JointBasis& basis,
                             const BasisState& target, cplx coefficient = 1.0);

/// Ideal CZ = diag(1, -1, -1, -1) sign for a computational label "00".."11".
double cz_sign(const BasisState& s);

/// Plain numeric table; column names are the CSV header.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// time_us, omega_t_over_pi, norm, then re_<label>, im_<label> per label.
/// Throws std::invalid_argument naming any unknown label.
/// CSV-safe column stem for a basis state, e.g. "r0_n1".
std::string column_label(const BasisState& s);

/// time_us, omega_t_over_pi (rabi t / pi), norm, then re_/im_ pairs for
/// each labelled basis state.
Table amplitude_series(const EvolutionTrace& trace, const JointBasis& basis,
                       const std::vector<std::string>& labels, double rabi);

}  // namespace ionmed
