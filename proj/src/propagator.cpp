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

#include "ionmed/propagator.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

namespace ionmed {

namespace {

const double kGaussOffset = std::sqrt(15.0) / 10.0;

/// One sixth-order Magnus step exp(Omega) for [t, t + dt], built from three
/// Gauss-Legendre samples A_i = -i dt H(t_i):
///   B1 = A2, B2 = sqrt(15)/3 (A3 - A1), B3 = 10/3 (A3 - 2 A2 + A1)
///   Omega = B1 + B3/12 + [-20 B1 - B3 + [B1,B2], B2 - [B1, 2 B3 + [B1,B2]]/60] / 240
class MagnusStepper {
   public:
    explicit MagnusStepper(const TermSum& h) : h_(h) {}

    const Matrix& step(double t, double dt) {
        const cplx f(0.0, -dt);
        h_.evaluate_into(t + dt * (0.5 - kGaussOffset), a1_);
        h_.evaluate_into(t + 0.5 * dt, a2_);
        h_.evaluate_into(t + dt * (0.5 + kGaussOffset), a3_);
        a1_ *= f;
        a2_ *= f;
        a3_ *= f;
        b2_ = (std::sqrt(15.0) / 3.0) * (a3_ - a1_);
        b3_ = (10.0 / 3.0) * (a3_ - 2.0 * a2_ + a1_);
        commutator(a2_, b2_, c1_);
        x_ = -20.0 * a2_ - b3_ + c1_;
        tmp_ = 2.0 * b3_ + c1_;
        commutator(a2_, tmp_, c2_);
        y_ = b2_ - c2_ / 60.0;
        commutator(x_, y_, c2_);
        gen_ = a2_ + b3_ / 12.0 + c2_ / 240.0;
        exp_ = gen_.exp();
        return exp_;
    }

   private:
    static void commutator(const Matrix& a, const Matrix& b, Matrix& out) {
        out.noalias() = a * b;
        out.noalias() -= b * a;
    }

    const TermSum& h_;
    Matrix a1_, a2_, a3_, b2_, b3_, c1_, c2_, x_, y_, tmp_, gen_, exp_;
};

}  // namespace

StateVector StateVector::basis_state(int dim, int index, double time) {
    StateVector s;
    s.amplitudes = Vector::Zero(dim);
    s.amplitudes(index) = 1.0;
    s.time = time;
    return s;
}

void EvolutionTrace::push(double t, const Vector& psi) {
    if (!times.empty() && !(t > times.back())) {
        throw std::logic_error("trace times must be strictly increasing");
    }
    times.push_back(t);
    amplitudes.push_back(psi);
    norms.push_back(psi.norm());
}

void EvolutionTrace::extend(const EvolutionTrace& other) {
    for (std::size_t i = 0; i < other.size(); ++i) {
        if (!times.empty() && other.times[i] <= times.back()) continue;
        times.push_back(other.times[i]);
        amplitudes.push_back(other.amplitudes[i]);
        norms.push_back(other.norms[i]);
    }
}

int step_count(double t0, double t1, double dt_max) {
    if (!(t1 > t0)) throw StepError("evolve requires t1 > t0");
    if (!(dt_max > 0.0)) throw StepError("dt_max must be positive");
    const double n = std::ceil((t1 - t0) / dt_max * (1.0 - 1e-12));
    if (n > static_cast<double>(std::numeric_limits<int>::max())) {
        throw StepError("step count overflow");
    }
    const int steps = std::max(1, static_cast<int>(n));
    if ((t1 - t0) / steps < kMinStep) {
        std::ostringstream msg;
        msg << "step size " << (t1 - t0) / steps << " s underflows the minimum of " << kMinStep
            << " s";
        throw StepError(msg.str());
    }
    return steps;
}

EvolveResult evolve(const StateVector& state, const TermSum& h, double t0, double t1,
                    double dt_max, int trace_stride) {
    if (state.amplitudes.size() != h.dim()) {
        throw std::invalid_argument("state dimension does not match Hamiltonian");
    }
    const int steps = step_count(t0, t1, dt_max);
    const double dt = (t1 - t0) / steps;
    trace_stride = std::max(1, trace_stride);

    EvolveResult out;
    Vector psi = state.amplitudes;
    out.trace.push(state.time, psi);

    MagnusStepper stepper(h);
    for (int k = 0; k < steps; ++k) {
        const double t = t0 + k * dt;
        psi = stepper.step(t, dt) * psi;
        if (!psi.allFinite()) throw StepError("non-finite amplitude during evolution");
        if ((k + 1) % trace_stride == 0 || k + 1 == steps) {
            out.trace.push(state.time + (k + 1) * dt, psi);
        }
    }
    out.state.amplitudes = std::move(psi);
    out.state.time = state.time + (t1 - t0);
    return out;
}

Matrix propagator_matrix(const TermSum& h, double t0, double t1, double dt_max) {
    const int steps = step_count(t0, t1, dt_max);
    const double dt = (t1 - t0) / steps;
    Matrix u = Matrix::Identity(h.dim(), h.dim());
    MagnusStepper stepper(h);
    for (int k = 0; k < steps; ++k) {
        u = stepper.step(t0 + k * dt, dt) * u;
    }
    return u;
}

}  // namespace ionmed
