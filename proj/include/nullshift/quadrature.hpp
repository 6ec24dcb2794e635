// Copyright 2026 The nullshift Authors
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
#include <span>

#include "nullshift/types.hpp"

namespace nullshift {

struct QuadratureSpec {
  /// Upper limit T of the inversion integral; <= 0 picks T automatically by
  /// doubling until |phi(T)|/T < abs_tol/10.
  double truncation = 0.0;
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  int max_evals = 2'000'000;
};

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;
  int evals = 0;
};

using RealFn = std::function<double(double)>;
using CharFn = std::function<Complex(double)>;

/// Global adaptive 7/15-point Gauss-Kronrod integration of f over the
/// partition given by `breakpoints` (at least two, increasing). Bisects the
/// panel with the largest error estimate until the total estimate is within
/// max(abs_tol, rel_tol*|I|). Throws NumericalError (with the achieved
/// estimate) once max_evals would be exceeded.
IntegralResult integrate_adaptive(const RealFn& f, std::span<const double> breakpoints,
                                  const QuadratureSpec& q);

IntegralResult integrate_adaptive(const RealFn& f, double a, double b,
                                  const QuadratureSpec& q);

/// F(x) = 1/2 - (1/pi) * int_0^T Im[phi(t) e^{-itx}] / t dt, clamped to [0,1].
/// `scale` is the natural t-scale of phi (1/typical magnitude of the variable);
/// it only shapes the initial partition.
IntegralResult gil_pelaez(const CharFn& phi, double x, const QuadratureSpec& q,
                          double scale = 1.0);

double gil_pelaez_cdf(const CharFn& phi, double x, const QuadratureSpec& q);

}  // namespace nullshift
