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

#include "ionmed/gate.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ionmed {

namespace {

constexpr double kPi = std::numbers::pi;

const std::array<BasisState, 4> kComputational = {{
    {AtomLevel::level0, AtomLevel::level0, 0},
    {AtomLevel::level0, AtomLevel::level1, 0},
    {AtomLevel::level1, AtomLevel::level0, 0},
    {AtomLevel::level1, AtomLevel::level1, 0},
}};

BasisState with_phonon(BasisState s, int n) {
    s.n = n;
    return s;
}

}  // namespace

double PulseSchedule::total_duration() const {
    double t = 0.0;
    for (const Pulse& p : pulses) t += p.duration;
    return t;
}

PulseSchedule cz_schedule(const SystemParams& params, const ProtocolOptions& opts) {
    params.validate();
    if (!(params.rabi1 > 0.0) || !(params.rabi2 > 0.0)) {
        throw ParameterError("CZ schedule needs positive Rabi frequencies on both atoms");
    }
    const bool reset = opts.kind == HamiltonianKind::effective;
    const double pulse2 = opts.pulse2_duration.value_or(2.0 * kPi / params.rabi2);
    if (!(pulse2 > 0.0)) throw ParameterError("pulse durations must be positive");
    PulseSchedule s;
    s.pulses.push_back({Atom::first, kPi, kPi / params.rabi1, opts.kind, reset});
    s.pulses.push_back({Atom::second, 2.0 * kPi, pulse2, opts.kind, reset});
    s.pulses.push_back({Atom::first, kPi, kPi / params.rabi1, opts.kind, reset});
    return s;
}

CzProtocol::CzProtocol(const SystemParams& params, const ProtocolOptions& opts)
    : params_(params),
      opts_(opts),
      basis_(params.n_max),
      schedule_(cz_schedule(params, opts)),
      dt_max_(two_pi / params.omega_i / opts.steps_per_period) {
    if (opts.steps_per_period < 1) throw std::invalid_argument("steps_per_period must be >= 1");
    for (const Pulse& p : schedule_.pulses) {
        hamiltonians_.push_back(build_hamiltonian(p.kind, params_, PulseConfig::only(p.target)));
    }
}

ProtocolRun CzProtocol::run(const BasisState& initial) const {
    ProtocolRun out;
    out.initial = StateVector::basis_state(basis_.dim(), basis_.index(initial));
    StateVector psi = out.initial;
    for (std::size_t k = 0; k < schedule_.pulses.size(); ++k) {
        const Pulse& p = schedule_.pulses[k];
        const double t0 = p.reset_clock ? 0.0 : psi.time;
        EvolveResult r = evolve(psi, hamiltonians_[k], t0, t0 + p.duration, dt_max_,
                                opts_.trace_stride);
        out.trace.extend(r.trace);
        psi = std::move(r.state);
        out.after_pulse.push_back(psi);
        out.pulse_end_times.push_back(psi.time);
    }
    out.final = psi;
    return out;
}

ProtocolRun CzProtocol::run(const std::string& label) const { return run(basis_.parse(label)); }

double CzProtocol::max_rydberg_pair(const StateVector& start, std::size_t k, int samples) const {
    if (k >= schedule_.pulses.size()) throw std::invalid_argument("pulse index out of range");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    const Pulse& p = schedule_.pulses[k];
    const double t0 = p.reset_clock ? 0.0 : start.time;
    StateVector psi = start;
    double best = rydberg_pair_population(psi.amplitudes, basis_);
    for (int i = 0; i < samples; ++i) {
        const double a = t0 + p.duration * i / samples;
        const double b = t0 + p.duration * (i + 1) / samples;
        psi = evolve(psi, hamiltonians_[k], a, b, dt_max_, std::numeric_limits<int>::max()).state;
        best = std::max(best, rydberg_pair_population(psi.amplitudes, basis_));
    }
    return best;
}

ProtocolRun run_protocol(const std::string& two_qubit_label, int initial_phonon_n,
                         const SystemParams& params, const ProtocolOptions& opts) {
    const JointBasis basis(params.n_max);
    const BasisState s = basis.parse(two_qubit_label + ",n=" + std::to_string(initial_phonon_n));
    if (s.a1 == AtomLevel::rydberg || s.a2 == AtomLevel::rydberg) {
        throw std::invalid_argument("initial label must be one of 00, 01, 10, 11");
    }
    return CzProtocol(params, opts).run(s);
}

GateMatrix cz_target() { return GateMatrix(Eigen::Vector4cd(1.0, -1.0, -1.0, -1.0).asDiagonal()); }

double gate_fidelity(const GateMatrix& u_i, const GateMatrix& u_p) {
    const GateMatrix m = u_p.adjoint() * u_i;
    const double tr_mm = (m * m.adjoint()).trace().real();
    return (tr_mm + std::norm(m.trace())) / 20.0;
}

double wrap_phase(double phase) {
    double w = std::remainder(phase, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

GateReport extract_gate_matrix(const SystemParams& params, const ProtocolOptions& opts, int n0) {
    const CzProtocol protocol(params, opts);
    const JointBasis& basis = protocol.basis();
    if (n0 < 0 || n0 > basis.n_max()) throw std::invalid_argument("projection phonon out of range");

    std::array<std::future<ProtocolRun>, 4> jobs;
    for (int j = 0; j < 4; ++j) {
        jobs[j] = std::async(std::launch::async,
                             [&protocol, j, n0] { return protocol.run(with_phonon(kComputational[j], n0)); });
    }
    std::array<ProtocolRun, 4> runs;
    for (int j = 0; j < 4; ++j) runs[j] = jobs[j].get();

    GateReport r;
    r.projected_n = n0;
    r.target = cz_target();
    for (int j = 0; j < 4; ++j) {
        double kept = 0.0;
        for (int k = 0; k < 4; ++k) {
            r.realized(k, j) = runs[j].final.amplitudes(basis.index(with_phonon(kComputational[k], n0)));
            kept += std::norm(r.realized(k, j));
        }
        r.final_norm[j] = runs[j].final.amplitudes.squaredNorm();
        r.leakage[j] = 1.0 - kept;
    }
    r.fidelity = gate_fidelity(r.realized, r.target);
    r.theta = wrap_phase(std::arg(r.realized(3, 3)) - std::arg(r.realized(0, 0)));

    const ProtocolRun& ch11 = runs[3];
    const cplx after2 = ch11.after_pulse[1].amplitudes(
        basis.index(AtomLevel::rydberg, AtomLevel::level1, n0));
    r.theta1 = wrap_phase(std::arg(after2) + 0.5 * kPi);
    r.state_fidelity_11 =
        state_fidelity(ch11.final, basis, with_phonon(kComputational[3], n0), cz_sign(kComputational[3]));

    r.blockade_max = protocol.max_rydberg_pair(ch11.after_pulse[0], 1);
    const char* tags[] = {"end_pulse1", "end_pulse2", "end_pulse3"};
    for (std::size_t k = 0; k < ch11.after_pulse.size(); ++k) {
        r.phonons_11.push_back(phonon_distribution(ch11.after_pulse[k], basis, tags[k]));
    }
    return r;
}

ThetaTuning tune_theta(const SystemParams& params, const ProtocolOptions& opts, double tol) {
    const double nominal = 2.0 * kPi / params.rabi2;
    const JointBasis basis(params.n_max);
    const int idx00 = basis.index(AtomLevel::level0, AtomLevel::level0, 0);
    const int idx11 = basis.index(AtomLevel::level1, AtomLevel::level1, 0);

    ThetaTuning out;
    const double phase00 = [&] {
        const ProtocolRun r = CzProtocol(params, opts).run(kComputational[0]);
        return std::arg(r.final.amplitudes(idx00));
    }();
    auto mismatch = [&](double duration) {
        ProtocolOptions o = opts;
        o.pulse2_duration = duration;
        const ProtocolRun r = CzProtocol(params, o).run(kComputational[3]);
        ++out.evaluations;
        return wrap_phase(std::arg(r.final.amplitudes(idx11)) - phase00 - kPi);
    };

    constexpr int kGrid = 20;
    double prev_d = 0.5 * nominal;
    double prev_f = mismatch(prev_d);
    for (int k = 1; k <= kGrid; ++k) {
        const double d = nominal * (0.5 + static_cast<double>(k) / kGrid);
        const double f = mismatch(d);
        // A sign change across a wrap (|jump| ~ 2 pi) is not a root.
        if (std::signbit(f) != std::signbit(prev_f) && std::abs(f - prev_f) < kPi) {
            double lo = prev_d, hi = d;
            double flo = prev_f;
            for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = mismatch(mid);
                if (std::abs(fm) < tol) {
                    out.converged = true;
                    out.pulse2_duration = mid;
                    out.theta = wrap_phase(fm + kPi);
                    return out;
                }
                if (std::signbit(fm) == std::signbit(flo)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
        }
        prev_d = d;
        prev_f = f;
    }
    out.pulse2_duration = nominal;
    out.theta = wrap_phase(mismatch(nominal) + kPi);
    return out;
}

}  // namespace ionmed
