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

#include <functional>
#include <string>
#include <vector>

#include "ionmed/hilbert.hpp"

namespace ionmed {

using Coefficient = std::function<cplx(double)>;

/// One c(t) * M contribution to H(t)/hbar.
struct Term {
    std::string label;
    std::string formula;  // human-readable form of the coefficient
    int order = 0;        // power of the ion-atom expansion parameter
    Coefficient coefficient;
    Matrix matrix;
};

/// H(t)/hbar = sum_k c_k(t) M_k, in rad/s. All matrices share one dimension.
class TermSum {
   public:
    TermSum() = default;
    explicit TermSum(int dim) : dim_(dim) {}

    void add(Term term);
    void add(std::string label, std::string formula, int order, Coefficient c, Matrix m);
    void append(const TermSum& other);

    Matrix operator()(double t) const;
    /// Same as operator() but accumulates into an existing buffer.
    void evaluate_into(double t, Matrix& out) const;

    int dim() const { return dim_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    /// Terms whose order lies in [lo, hi].
    TermSum filter_order(int lo, int hi) const;

   private:
    int dim_ = 0;
    std::vector<Term> terms_;
};

inline Coefficient constant(cplx value) {
    return [value](double) { return value; };
}

}  // namespace ionmed
