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

// Primary OFDM waveform: subcarrier plans that keep null bins free for the
// frequency-shifted backscatter copy, symbol mapping, and CP-OFDM
// (de)modulation.
//
// DFT convention: the IDFT carries the 1/N factor, the forward DFT is
// unnormalized, so ofdm_demodulate(ofdm_modulate(X)) == X.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nullshift/types.hpp"

namespace nullshift {

using IndexSet = std::vector<std::int32_t>;

/// Index sets of one OFDM symbol layout. All sets are sorted ascending.
///
/// For OOK the two landing sets coincide (the single set of null bins the
/// shifted copy lands on). For FSK they are the bins that receive energy
/// under exactly one hypothesis.
struct SubcarrierPlan {
  int n = 0;
  Scheme scheme = Scheme::kOok;
  int zeta = 1;
  IndexSet data_idx;
  IndexSet null_idx_b0;
  IndexSet null_idx_b1;

  /// Landing set read by the detector for BD bit `bit`.
  const IndexSet& landing(int bit) const {
    return bit == 0 ? null_idx_b0 : null_idx_b1;
  }
};

/// Circular bin shift the backscatter device applies for `bit`, or nullopt
/// when it reflects nothing (OOK bit 0).
///   OOK:  1 -> +zeta
///   FSK1: 0 -> -1, 1 -> +1
///   FSK2: 0 -> +1, 1 -> +2
std::optional<int> tone_shift(Scheme scheme, int bit, int zeta);

/// Throws ConfigError for n not a power of two >= 8, zeta < 1, FSK1 with
/// zeta != 1, FSK2 with zeta < 2, OOK with 2*zeta not dividing n, or a
/// layout that leaves no data subcarrier.
SubcarrierPlan build_subcarrier_plan(Scheme scheme, int n, int zeta);

/// Checks every structural invariant of a plan; returns a description of the
/// first violation, or an empty string.
std::string validate_plan(const SubcarrierPlan& plan);

struct FreqGrid {
  ComplexVector values;

  std::size_t n() const { return values.size(); }
};

struct TimeSignal {
  ComplexVector samples;
  std::size_t cp_len = 0;

  std::span<const Complex> body() const {
    return std::span<const Complex>(samples).subspan(cp_len);
  }
};

/// Places data[m] on the m-th data subcarrier; zero elsewhere.
FreqGrid map_symbols(const SubcarrierPlan& plan, std::span<const Complex> data);

/// IDFT (with 1/N) followed by a cyclic prefix of cp_len samples.
TimeSignal ofdm_modulate(const FreqGrid& x, std::size_t cp_len);

/// Strips cp_len samples and takes the N-point DFT.
FreqGrid ofdm_demodulate(const TimeSignal& y, std::size_t n, std::size_t cp_len);

/// "0,2,4" style rendering used in CSV metadata.
std::string join_indices(const IndexSet& idx);

}  // namespace nullshift
