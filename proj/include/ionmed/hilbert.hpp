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

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>

#include "ionmed/units.hpp"

namespace ionmed {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using AtomMatrix = Eigen::Matrix3cd;

inline constexpr cplx I{0.0, 1.0};

/// Electronic levels of one atom. |0> is never laser coupled.
enum class AtomLevel { level0 = 0, level1 = 1, rydberg = 2 };

inline constexpr int kAtomLevels = 3;

char level_symbol(AtomLevel a);

struct BasisState {
    AtomLevel a1;
    AtomLevel a2;
    int n;

    bool operator==(const BasisState&) const = default;
};

/// |a1 a2> (x) |n> with flat index (a1 * 3 + a2) * (n_max + 1) + n.
class JointBasis {
   public:
    explicit JointBasis(int n_max);

    int n_max() const { return n_max_; }
    int phonon_dim() const { return n_max_ + 1; }
    int dim() const { return kAtomLevels * kAtomLevels * phonon_dim(); }

    int index(AtomLevel a1, AtomLevel a2, int n) const;
    int index(const BasisState& s) const { return index(s.a1, s.a2, s.n); }
    BasisState state(int flat) const;

    /// Parses labels like "11,n=0" or "r0,n=2".
    BasisState parse(const std::string& label) const;
    std::string label(const BasisState& s) const;
    std::string label(int flat) const { return label(state(flat)); }

   private:
    int n_max_;
};

/// |to><from| on one atom.
AtomMatrix atom_transition(AtomLevel to, AtomLevel from);
AtomMatrix atom_projector(AtomLevel a);

/// Annihilation and creation operators on the (n_max+1)-dim phonon factor,
/// hard truncated so that a^dagger |n_max> = 0.
std::pair<Matrix, Matrix> ladder_ops(int n_max);

/// op (x) 1 (x) 1 or 1 (x) op (x) 1 on the joint space.
Matrix embed(const JointBasis& basis, Atom atom, const AtomMatrix& op);

/// 1_atoms (x) op.
Matrix phonon_embed(const JointBasis& basis, const Matrix& phonon_op);

/// |rr><rr| (x) 1_phonon.
Matrix rr_projector(const JointBasis& basis);

/// Projector onto phonon numbers n < n_max: the subspace on which the
/// truncated ladder operators obey [a, a^dagger] = 1.
Matrix below_cutoff_projector(const JointBasis& basis);

}  // namespace ionmed
