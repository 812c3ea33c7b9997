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

#include "ionmed/hilbert.hpp"

#include <cmath>
#include <regex>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace ionmed {

namespace {

AtomLevel level_from_char(char c) {
    switch (c) {
        case '0': return AtomLevel::level0;
        case '1': return AtomLevel::level1;
        case 'r': return AtomLevel::rydberg;
        default: throw std::invalid_argument(std::string("unknown atomic level '") + c + "'");
    }
}

}  // namespace

char level_symbol(AtomLevel a) {
    switch (a) {
        case AtomLevel::level0: return '0';
        case AtomLevel::level1: return '1';
        case AtomLevel::rydberg: return 'r';
    }
    return '?';
}

JointBasis::JointBasis(int n_max) : n_max_(n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
}

int JointBasis::index(AtomLevel a1, AtomLevel a2, int n) const {
    if (n < 0 || n > n_max_) {
        throw std::out_of_range("phonon number " + std::to_string(n) + " outside 0.." +
                                std::to_string(n_max_));
    }
    return (static_cast<int>(a1) * kAtomLevels + static_cast<int>(a2)) * phonon_dim() + n;
}

BasisState JointBasis::state(int flat) const {
    if (flat < 0 || flat >= dim()) throw std::out_of_range("basis index out of range");
    const int n = flat % phonon_dim();
    const int atoms = flat / phonon_dim();
    return {static_cast<AtomLevel>(atoms / kAtomLevels), static_cast<AtomLevel>(atoms % kAtomLevels),
            n};
}

BasisState JointBasis::parse(const std::string& label) const {
    static const std::regex pattern(R"(^\s*([01r])([01r])\s*,\s*n\s*=\s*(\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(label, m, pattern)) {
        throw std::invalid_argument("unknown basis label '" + label + "' (expected e.g. \"11,n=0\")");
    }
    const int n = std::stoi(m[3].str());
    if (n > n_max_) {
        throw std::invalid_argument("basis label '" + label + "' exceeds n_max = " +
                                    std::to_string(n_max_));
    }
    return {level_from_char(m[1].str()[0]), level_from_char(m[2].str()[0]), n};
}

std::string JointBasis::label(const BasisState& s) const {
    return std::string{level_symbol(s.a1), level_symbol(s.a2)} + ",n=" + std::to_string(s.n);
}

AtomMatrix atom_transition(AtomLevel to, AtomLevel from) {
    AtomMatrix m = AtomMatrix::Zero();
    m(static_cast<int>(to), static_cast<int>(from)) = 1.0;
    return m;
}

AtomMatrix atom_projector(AtomLevel a) { return atom_transition(a, a); }

std::pair<Matrix, Matrix> ladder_ops(int n_max) {
    if (n_max < 2) throw std::invalid_argument("ladder_ops needs n_max >= 2");
    const int d = n_max + 1;
    Matrix a = Matrix::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    Matrix ad = a.adjoint();
    return {std::move(a), std::move(ad)};
}

Matrix embed(const JointBasis& basis, Atom atom, const AtomMatrix& op) {
    const Matrix id3 = Matrix::Identity(kAtomLevels, kAtomLevels);
    const Matrix idn = Matrix::Identity(basis.phonon_dim(), basis.phonon_dim());
    const Matrix full_op = op;
    const Matrix atoms = atom == Atom::first ? Matrix(Eigen::kroneckerProduct(full_op, id3))
                                             : Matrix(Eigen::kroneckerProduct(id3, full_op));
    return Eigen::kroneckerProduct(atoms, idn);
}

Matrix phonon_embed(const JointBasis& basis, const Matrix& phonon_op) {
    if (phonon_op.rows() != basis.phonon_dim() || phonon_op.cols() != basis.phonon_dim()) {
        throw std::invalid_argument("phonon operator dimension does not match basis");
    }
    const Matrix id9 = Matrix::Identity(kAtomLevels * kAtomLevels, kAtomLevels * kAtomLevels);
    return Eigen::kroneckerProduct(id9, phonon_op);
}

Matrix rr_projector(const JointBasis& basis) {
    const AtomMatrix pr = atom_projector(AtomLevel::rydberg);
    return embed(basis, Atom::first, pr) * embed(basis, Atom::second, pr);
}

Matrix below_cutoff_projector(const JointBasis& basis) {
    Matrix q = Matrix::Identity(basis.phonon_dim(), basis.phonon_dim());
    q(basis.n_max(), basis.n_max()) = 0.0;
    return phonon_embed(basis, q);
}

}  // namespace ionmed
