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

#include <complex>
#include <functional>

namespace ionmed {

using ScalarFn = std::function<std::complex<double>(double)>;

/// Adaptive 7/15-point Gauss-Kronrod integral of f over [a, b]. When panel > 0
/// the interval is first cut at every multiple of panel so that each piece
/// holds at most one oscillation period.
std::complex<double> integrate(const ScalarFn& f, double a, double b, double panel = 0.0,
                               double rel_tol = 1e-13);

}  // namespace ionmed
