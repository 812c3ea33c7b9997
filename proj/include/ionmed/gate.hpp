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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ionmed/hamiltonian.hpp"
#include "ionmed/observables.hpp"
#include "ionmed/propagator.hpp"

namespace ionmed {

using GateMatrix = Eigen::Matrix4cd;

struct Pulse {
    Atom target = Atom::first;
    double area = 0.0;      // rad
    double duration = 0.0;  // s
    HamiltonianKind kind = HamiltonianKind::effective;
    /// Restart the Hamiltonian clock at the start of this pulse.
    bool reset_clock = true;
};

struct PulseSchedule {
    std::vector<Pulse> pulses;

    double total_duration() const;
};

struct ProtocolOptions {
    HamiltonianKind kind = HamiltonianKind::effective;
    int steps_per_period = 200;
    /// Overrides the 2 pi / Omega_2 duration of the target pulse.
    std::optional<double> pulse2_duration;
    int trace_stride = 1;
};

/// pi on atom 1, 2 pi on atom 2, pi on atom 1. The effective model restarts
/// its clock every pulse; the full model keeps one global phonon frame.
PulseSchedule cz_schedule(const SystemParams& params, const ProtocolOptions& opts = {});

struct ProtocolRun {
    StateVector initial;
    StateVector final;
    EvolutionTrace trace;
    std::vector<StateVector> after_pulse;
    std::vector<double> pulse_end_times;  // lab time, s
};

/// Holds the per-pulse Hamiltonians so that several input channels can be
/// run against one schedule. Immutable after construction; run() is reentrant.
class CzProtocol {
   public:
    CzProtocol(const SystemParams& params, const ProtocolOptions& opts = {});

    ProtocolRun run(const BasisState& initial) const;
    ProtocolRun run(const std::string& label) const;

    /// Largest |rr> population while pulse `k` acts on `start`, sampled at
    /// `samples` evenly spaced instants that do not depend on the step size.
    double max_rydberg_pair(const StateVector& start, std::size_t k, int samples = 512) const;

    const SystemParams& params() const { return params_; }
    const JointBasis& basis() const { return basis_; }
    const PulseSchedule& schedule() const { return schedule_; }
    double dt_max() const { return dt_max_; }

   private:
    SystemParams params_;
    ProtocolOptions opts_;
    JointBasis basis_;
    PulseSchedule schedule_;
    std::vector<TermSum> hamiltonians_;
    double dt_max_;
};

/// Runs the schedule from |label> (x) |n>. label is one of 00, 01, 10, 11.
ProtocolRun run_protocol(const std::string& two_qubit_label, int initial_phonon_n,
                         const SystemParams& params, const ProtocolOptions& opts = {});

/// [Tr(M M^dagger) + |Tr M|^2] / 20 with M = u_p^dagger u_i.
double gate_fidelity(const GateMatrix& u_i, const GateMatrix& u_p);

GateMatrix cz_target();

/// Wraps to (-pi, pi].
double wrap_phase(double phase);

struct GateReport {
    GateMatrix realized;
    GateMatrix target;
    double fidelity = 0.0;
    double theta = 0.0;   // arg U[11][11] - arg U[00][00]
    double theta1 = 0.0;  // phase of -i e^{i theta1} |r1> after the target pulse
    StateFidelity state_fidelity_11;
    std::array<double, 4> final_norm{};  // ||psi||^2 per input channel
    std::array<double, 4> leakage{};     // 1 - sum_k |U[k][j]|^2
    double blockade_max = 0.0;           // max |rr> population during pulse 2, |11> channel
    std::vector<PhononDistribution> phonons_11;  // |11> channel after each pulse
    int projected_n = 0;
};

/// Runs the four computational inputs with the phonon in |n0> and projects
/// the outputs back onto |n0>.
GateReport extract_gate_matrix(const SystemParams& params, const ProtocolOptions& opts = {},
                               int n0 = 0);

struct ThetaTuning {
    bool converged = false;
    double pulse2_duration = 0.0;
    double theta = 0.0;
    int evaluations = 0;
};

/// Adjusts the target-pulse duration within [0.5, 1.5] x nominal so that
/// theta = pi to within tol.
ThetaTuning tune_theta(const SystemParams& params, const ProtocolOptions& opts = {},
                       double tol = 1e-3);

}  // namespace ionmed
