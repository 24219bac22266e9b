// Copyright 2026 The tfqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <vector>

#include "tfq/errors.hpp"

// Grid-free quadrature. Acceptance checks compare grid results against these
// integrals of the continuous wavefunctions.
namespace tfq::oracle {

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cplx(double)>;

// Adaptive Gauss-Kronrod on [a, b], split at `breaks` (sorted or not).
double integrate(const RealFn& f, double a, double b,
                 std::vector<double> breaks = {}, double tol = 1e-13);
cplx integrate_complex(const ComplexFn& f, double a, double b,
                       std::vector<double> breaks = {}, double tol = 1e-13);

// Points a + k*step (and half steps between) inside (a, b): segment
// boundaries that keep every comb tooth inside its own panel.
std::vector<double> lattice_breaks(double a, double b, double origin,
                                   double step);

}  // namespace tfq::oracle
