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

#include "ionmed/term_sum.hpp"

#include <stdexcept>

namespace ionmed {

void TermSum::add(Term term) {
    if (term.matrix.rows() != term.matrix.cols()) {
        throw std::invalid_argument("term '" + term.label + "' is not square");
    }
    if (dim_ == 0) dim_ = static_cast<int>(term.matrix.rows());
    if (term.matrix.rows() != dim_) {
        throw std::invalid_argument("term '" + term.label + "' has mismatched dimension");
    }
    terms_.push_back(std::move(term));
}

void TermSum::add(std::string label, std::string formula, int order, Coefficient c, Matrix m) {
    add(Term{std::move(label), std::move(formula), order, std::move(c), std::move(m)});
}

void TermSum::append(const TermSum& other) {
    for (const Term& t : other.terms_) add(t);
    if (dim_ == 0) dim_ = other.dim_;
}

Matrix TermSum::operator()(double t) const {
    Matrix out;
    evaluate_into(t, out);
    return out;
}

void TermSum::evaluate_into(double t, Matrix& out) const {
    out.setZero(dim_, dim_);
    for (const Term& term : terms_) {
        const cplx c = term.coefficient(t);
        if (c != cplx{}) out.noalias() += c * term.matrix;
    }
}

TermSum TermSum::filter_order(int lo, int hi) const {
    TermSum out(dim_);
    for (const Term& t : terms_) {
        if (t.order >= lo && t.order <= hi) out.add(t);
    }
    return out;
}

}  // namespace ionmed
