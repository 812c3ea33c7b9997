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

#include <stdexcept>
#include <vector>

#include "ionmed/term_sum.hpp"

namespace ionmed {

/// Amplitudes over a JointBasis plus a lab-time stamp (s). Amplitudes live
/// in the phonon interaction picture.
struct StateVector {
    Vector amplitudes;
    double time = 0.0;

    double norm() const { return amplitudes.norm(); }
    static StateVector basis_state(int dim, int index, double time = 0.0);
};

/// Sampled amplitudes, strictly increasing lab times.
struct EvolutionTrace {
    std::vector<double> times;
    std::vector<Vector> amplitudes;
    std::vector<double> norms;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
    void push(double t, const Vector& psi);
    /// Appends other, skipping its first sample if it repeats our last time.
    void extend(const EvolutionTrace& other);
};

class StepError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kMinStep = 1e-15;

struct EvolveResult {
    StateVector state;
    EvolutionTrace trace;
};

/// Integrates i d/dt psi = H(t) psi from Hamiltonian-clock time t0 to t1 with
/// a fixed-step sixth-order Magnus (three Gauss-Legendre nodes) exponential
/// integrator, n = ceil((t1-t0)/dt_max) equal steps. The trace records every
/// trace_stride-th step in lab time (state.time + t - t0) and always the end.
EvolveResult evolve(const StateVector& state, const TermSum& h, double t0, double t1,
                    double dt_max, int trace_stride = 1);

/// Columns are the evolved basis vectors.
Matrix propagator_matrix(const TermSum& h, double t0, double t1, double dt_max);

/// Number of equal steps used for [t0, t1] under dt_max; throws StepError on
/// bad input or steps below kMinStep.
int step_count(double t0, double t1, double dt_max);

}  // namespace ionmed
