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

#include "ionmed/observables.hpp"

#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ionmed {

double PhononDistribution::total() const {
    return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

PhononDistribution phonon_distribution(const StateVector& state, const JointBasis& basis,
                                       std::string tag) {
    if (state.amplitudes.size() != basis.dim()) {
        throw std::invalid_argument("state dimension does not match basis");
    }
    PhononDistribution out;
    out.tag = std::move(tag);
    out.probabilities.assign(basis.phonon_dim(), 0.0);
    for (int k = 0; k < basis.dim(); ++k) {
        out.probabilities[k % basis.phonon_dim()] += std::norm(state.amplitudes(k));
    }
    return out;
}

double rydberg_pair_population(const Vector& psi, const JointBasis& basis) {
    double p = 0.0;
    for (int n = 0; n <= basis.n_max(); ++n) {
        p += std::norm(psi(basis.index(AtomLevel::rydberg, AtomLevel::rydberg, n)));
    }
    return p;
}

StateFidelity state_fidelity(const StateVector& final, const JointBasis& basis,
                             const BasisState& target, cplx coefficient) {
    const cplx amp = final.amplitudes(basis.index(target));
    StateFidelity f;
    f.overlap = std::conj(coefficient) * amp;
    f.fidelity = std::norm(f.overlap);
    return f;
}

double cz_sign(const BasisState& s) {
    if (s.a1 == AtomLevel::rydberg || s.a2 == AtomLevel::rydberg) {
        throw std::invalid_argument("CZ acts on computational labels only");
    }
    return (s.a1 == AtomLevel::level0 && s.a2 == AtomLevel::level0) ? 1.0 : -1.0;
}

std::string column_label(const BasisState& s) {
    static constexpr char kLevel[] = {'0', '1', 'r'};
    std::string out{kLevel[static_cast<int>(s.a1)], kLevel[static_cast<int>(s.a2)]};
    return out + "_n" + std::to_string(s.n);
}

Table amplitude_series(const EvolutionTrace& trace, const JointBasis& basis,
                       const std::vector<std::string>& labels, double rabi) {
    std::vector<int> idx;
    idx.reserve(labels.size());
    Table t;
    t.columns = {"time_us", "omega_t_over_pi", "norm"};
    for (const std::string& l : labels) {
        const BasisState s = basis.parse(l);
        idx.push_back(basis.index(s));
        t.columns.push_back("re_" + column_label(s));
        t.columns.push_back("im_" + column_label(s));
    }
    for (std::size_t s = 0; s < trace.size(); ++s) {
        std::vector<double> row{trace.times[s] * 1e6, rabi * trace.times[s] / std::numbers::pi,
                                trace.norms[s]};
        for (int k : idx) {
            row.push_back(trace.amplitudes[s](k).real());
            row.push_back(trace.amplitudes[s](k).imag());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace ionmed
