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

// Non-coherent BD detection (energy on landing bins) and genie-CSI coherent
// BPSK detection of the primary data.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nullshift/types.hpp"
#include "nullshift/waveform.hpp"

namespace nullshift {

struct DetectionOutcome {
  double stat0 = 0.0;      // r for OOK, ts0 for FSK
  double stat1 = 0.0;      // ts1; unused for OOK
  double threshold = 0.0;  // eta; unused for FSK
  int decided = 0;
  int truth = 0;

  bool error() const { return decided != truth; }
};

/// r = sum over the landing set of |Y[k]|^2. Throws ConfigError unless the
/// plan is OOK, ArgumentError if the grid is shorter than plan.n.
double ook_test_statistic(const FreqGrid& y, const SubcarrierPlan& plan);

/// 1 iff r > eta. Throws ArgumentError for eta < 0.
int ook_detect(double r, double eta);

/// (ts0, ts1): landing-set energies for bit 0 and bit 1. FSK plans only.
std::pair<double, double> fsk_metrics(const FreqGrid& y, const SubcarrierPlan& plan);

/// 0 if ts0 >= ts1, else 1.
int fsk_detect(double ts0, double ts1);

inline constexpr int kErasure = -1;

/// BPSK decisions sign(Re{Y[k]/H[k]}) over the data bins, +1 -> bit 0.
/// A data bin with H[k] == 0 yields kErasure. `h_direct` holds N responses.
std::vector<int> primary_detect(const FreqGrid& y, const SubcarrierPlan& plan,
                                std::span<const Complex> h_direct);

/// Bit errors between decisions and truth; an erasure counts as an error.
std::size_t count_bit_errors(std::span<const int> decided, std::span<const int> truth);

}  // namespace nullshift
