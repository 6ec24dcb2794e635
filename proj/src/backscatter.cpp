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

#include "nullshift/backscatter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nullshift/simd/kernels.hpp"

namespace nullshift {

ReflectionCoefficient::ReflectionCoefficient(double magnitude_in, double phase_in)
    : magnitude(magnitude_in), phase(phase_in) {
  if (!(magnitude >= 0.0 && magnitude <= 1.0)) {
    throw ConfigError("reflection magnitude must lie in [0, 1], got " +
                      std::to_string(magnitude));
  }
}

ReflectionCoefficient reflection_coefficient(Complex z_antenna, Complex z_load) {
  const Complex den = z_load - z_antenna;
  if (den == Complex{}) {
    throw SingularInputError("reflection_coefficient: Z_L == Z_A");
  }
  const Complex gamma = (z_load - std::conj(z_antenna)) / den;
  const double mag = std::abs(gamma);
  // Rounding can push an exactly-unit result a few ulps over one.
  if (mag > 1.0 + 1e-12) {
    throw ConfigError("reflection_coefficient: |Gamma| = " + std::to_string(mag) +
                      " exceeds 1 for this load");
  }
  return ReflectionCoefficient(std::min(mag, 1.0), std::arg(gamma));
}

BdWaveform bd_waveform(Scheme scheme, int bit, int zeta, int n) {
  if (bit != 0 && bit != 1) throw ArgumentError("bd_waveform: bit must be 0 or 1");
  if (n <= 0) throw ArgumentError("bd_waveform: n must be positive");
  BdWaveform wave;
  wave.bit = bit;
  wave.scheme = scheme;
  wave.samples.assign(static_cast<std::size_t>(n), Complex{});
  const auto shift = tone_shift(scheme, bit, zeta);
  if (!shift) return wave;
  for (int i = 0; i < n; ++i) {
    // Reduce the phase index modulo N before scaling to keep the argument small.
    const long long k = (static_cast<long long>(*shift) * i) % n;
    const double angle = 2.0 * kPi * static_cast<double>(k) / n;
    wave.samples[static_cast<std::size_t>(i)] = std::polar(1.0, angle);
  }
  return wave;
}

TimeSignal apply_backscatter(const TimeSignal& signal_at_bd, const BdWaveform& wave,
                             const ReflectionCoefficient& gamma) {
  const std::size_t n = wave.samples.size();
  const std::size_t cp = signal_at_bd.cp_len;
  if (n == 0 || signal_at_bd.samples.size() != n + cp || cp >= n) {
    throw ArgumentError("apply_backscatter: signal length must equal N + cp_len");
  }
  // Cyclic extension of the waveform over the prefix: sample i of the symbol
  // corresponds to waveform index (i - cp) mod N.
  ComplexVector extended(n + cp);
  std::copy(wave.samples.end() - static_cast<std::ptrdiff_t>(cp), wave.samples.end(),
            extended.begin());
  std::copy(wave.samples.begin(), wave.samples.end(),
            extended.begin() + static_cast<std::ptrdiff_t>(cp));

  TimeSignal out;
  out.cp_len = cp;
  out.samples.resize(n + cp);
  simd::multiply_scaled(signal_at_bd.samples, extended, gamma.value(), out.samples);
  return out;
}

}  // namespace nullshift
