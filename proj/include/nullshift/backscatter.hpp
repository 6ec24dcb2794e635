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

#include "nullshift/types.hpp"
#include "nullshift/waveform.hpp"

namespace nullshift {

/// Polar reflection coefficient of the backscatter device; 0 <= magnitude <= 1.
struct ReflectionCoefficient {
  double magnitude = 0.0;
  double phase = 0.0;  // radians

  ReflectionCoefficient() = default;
  /// Throws ConfigError unless 0 <= magnitude <= 1.
  ReflectionCoefficient(double magnitude, double phase = 0.0);

  Complex value() const { return std::polar(magnitude, phase); }
};

/// Gamma = (Z_L - conj(Z_A)) / (Z_L - Z_A), evaluated as written.
///
/// Throws SingularInputError when Z_L == Z_A, and ConfigError when the result
/// has magnitude above one (not a passive reflection).
ReflectionCoefficient reflection_coefficient(Complex z_antenna, Complex z_load);

/// One OFDM symbol (N samples) of the device's modulating signal b[n].
struct BdWaveform {
  ComplexVector samples;
  int bit = 0;
  Scheme scheme = Scheme::kOok;
};

/// OOK bit 0 is the all-zero waveform; every other case is the unit tone
/// exp(j*2*pi*s*n/N) with s = tone_shift(scheme, bit, zeta).
BdWaveform bd_waveform(Scheme scheme, int bit, int zeta, int n);

/// output[i] = gamma * wave[(i - cp) mod N] * signal[i]. The device multiplies
/// through the cyclic prefix, so a circular spectrum shift survives CP removal.
/// Throws ArgumentError unless signal length == N + cp_len.
TimeSignal apply_backscatter(const TimeSignal& signal_at_bd, const BdWaveform& wave,
                             const ReflectionCoefficient& gamma);

}  // namespace nullshift
