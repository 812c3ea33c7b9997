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

#include "ionmed/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <limits>

namespace ionmed {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

// One non-adaptive Kronrod pass. Boost reports the error estimate on the
// reference interval [-1, 1], so it is rescaled here; L1 is already scaled.
std::complex<double> kronrod(const ScalarFn& f, double a, double b, double& err, double& l1) {
    const std::complex<double> est = Rule::integrate(f, a, b, 0, 0.0, &err, &l1);
    err *= 0.5 * (b - a);
    return est;
}

constexpr int kMaxDepth = 30;

// Plain recursive bisection on the Kronrod error estimate. The tolerance is
// absolute (rel_tol times the L1 norm of f over the whole interval), so
// integrals that cancel to zero do not force bisection down to round-off.
std::complex<double> adapt(const ScalarFn& f, double a, double b, double abs_tol, int depth) {
    double err = 0.0;
    double l1 = 0.0;
    const std::complex<double> est = kronrod(f, a, b, err, l1);
    // Below ~100 eps of the local L1 norm the estimate is round-off.
    const double floor = 100.0 * std::numeric_limits<double>::epsilon() * l1;
    if (err <= std::max(abs_tol, floor) || depth >= kMaxDepth) return est;
    const double mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.5 * abs_tol, depth + 1) + adapt(f, mid, b, 0.5 * abs_tol, depth + 1);
}

std::complex<double> integrate_piece(const ScalarFn& f, double a, double b, double rel_tol) {
    double err = 0.0;
    double l1 = 0.0;
    const std::complex<double> est = kronrod(f, a, b, err, l1);
    const double abs_tol = rel_tol * std::max(l1, std::abs(est));
    if (err <= std::max(abs_tol, 100.0 * std::numeric_limits<double>::epsilon() * l1)) return est;
    return adapt(f, a, b, abs_tol, 0);
}

}  // namespace

std::complex<double> integrate(const ScalarFn& f, double a, double b, double panel,
                               double rel_tol) {
    if (a == b) return {};
    if (b < a) return -integrate(f, b, a, panel, rel_tol);
    if (!(panel > 0.0)) return integrate_piece(f, a, b, rel_tol);

    std::complex<double> sum{};
    double lo = a;
    double next = (std::floor(a / panel) + 1.0) * panel;
    while (next < b * (1.0 - 1e-14)) {
        sum += integrate_piece(f, lo, next, rel_tol);
        lo = next;
        next += panel;
    }
    sum += integrate_piece(f, lo, b, rel_tol);
    return sum;
}

}  // namespace ionmed
