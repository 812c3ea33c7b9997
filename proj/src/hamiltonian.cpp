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

#include "ionmed/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#include "ionmed/magnus.hpp"

namespace ionmed {

namespace {

std::string tag(std::string_view base, Atom a) {
    return std::string(base) + "[" + std::to_string(index_of(a) + 1) + "]";
}

}  // namespace

std::string_view to_string(HamiltonianKind k) {
    return k == HamiltonianKind::full ? "full" : "effective";
}

HamiltonianKind parse_hamiltonian_kind(std::string_view s) {
    if (s == "full") return HamiltonianKind::full;
    if (s == "effective") return HamiltonianKind::effective;
    throw std::invalid_argument("unknown hamiltonian kind '" + std::string(s) +
                                "' (expected full|effective)");
}

PhononOps::PhononOps(const JointBasis& basis) {
    auto [a_small, ad_small] = ladder_ops(basis.n_max());
    a = phonon_embed(basis, a_small);
    a_dag = phonon_embed(basis, ad_small);
}

TermSum laser_term(const JointBasis& basis, Atom atom, double rabi, double detuning) {
    TermSum h(basis.dim());
    const Matrix pr = embed(basis, atom, atom_projector(AtomLevel::rydberg));
    const Matrix flip = embed(basis, atom,
                              atom_transition(AtomLevel::rydberg, AtomLevel::level1) +
                                  atom_transition(AtomLevel::level1, AtomLevel::rydberg));
    h.add(tag("laser_detuning", atom), "-delta_j", 0, constant(-detuning), pr);
    h.add(tag("laser_rabi", atom), "Omega_j/2", 0, constant(0.5 * rabi), flip);
    return h;
}

TermSum decay_term(const JointBasis& basis, double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("gamma must be non-negative");
    TermSum h(basis.dim());
    const Matrix pr = embed(basis, Atom::first, atom_projector(AtomLevel::rydberg)) +
                      embed(basis, Atom::second, atom_projector(AtomLevel::rydberg));
    h.add("rydberg_decay", "-i gamma/2", 0, constant(cplx(0.0, -0.5 * gamma)), pr);
    return h;
}

TermSum phonon_coupling_term(const JointBasis& basis, const PhononOps& ops, Atom atom, double u0,
                             double omega_i) {
    TermSum h(basis.dim());
    const Matrix pr = embed(basis, atom, atom_projector(AtomLevel::rydberg));
    const double amp = u0 / std::sqrt(2.0);
    h.add(tag("phonon_coupling_a", atom), "u0_j e^{-i w t}/sqrt2", 1,
          [amp, omega_i](double t) { return amp * std::exp(cplx(0.0, -omega_i * t)); }, ops.a * pr);
    h.add(tag("phonon_coupling_adag", atom), "u0_j e^{+i w t}/sqrt2", 1,
          [amp, omega_i](double t) { return amp * std::exp(cplx(0.0, omega_i * t)); },
          ops.a_dag * pr);
    return h;
}

TermSum full_hamiltonian(const SystemParams& params, const PulseConfig& cfg) {
    const DerivedCouplings d = derive_couplings(params);
    const JointBasis basis(params.n_max);
    const PhononOps ops(basis);

    TermSum h(basis.dim());
    for (Atom a : {Atom::first, Atom::second}) {
        h.append(laser_term(basis, a, cfg.laser(a) ? params.rabi(a) : 0.0, d.detuning(a)));
        h.add(tag("static_shift", a), "V0_j", 0, constant(d.v0(a)),
              embed(basis, a, atom_projector(AtomLevel::rydberg)));
        h.append(phonon_coupling_term(basis, ops, a, d.u0(a), params.omega_i));
    }
    h.add("vdw_direct", "V_rr = -C6/|z1-z2|^6", 0, constant(d.v_rr_direct), rr_projector(basis));
    if (params.gamma > 0.0) h.append(decay_term(basis, params.gamma));
    return h;
}

TermSum effective_hamiltonian(const SystemParams& params, const PulseConfig& cfg) {
    TermSum h = full_hamiltonian(params, cfg);
    h.append(second_order_terms(params, cfg));
    return h;
}

TermSum build_hamiltonian(HamiltonianKind kind, const SystemParams& params,
                          const PulseConfig& cfg) {
    return kind == HamiltonianKind::full ? full_hamiltonian(params, cfg)
                                         : effective_hamiltonian(params, cfg);
}

}  // namespace ionmed
