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

// End-to-end simulation of one OFDM symbol with a backscatter device, and
// the seeded parallel trial runner behind every Monte Carlo estimate.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nullshift/backscatter.hpp"
#include "nullshift/channel.hpp"
#include "nullshift/config.hpp"
#include "nullshift/rng.hpp"
#include "nullshift/waveform.hpp"

namespace nullshift {

/// Per-experiment constants derived once from a SystemConfig.
struct LinkContext {
  SystemConfig cfg;
  SubcarrierPlan plan;
  ReflectionCoefficient gamma;
  std::array<BdWaveform, 2> waves;

  explicit LinkContext(const SystemConfig& config);
};

/// Channel draw for the configured mode.
ChannelRealization draw_channel(const LinkContext& ctx, Rng& rng);

std::vector<int> draw_bits(std::size_t count, Rng& rng);

/// Received frequency grid for one symbol: direct path plus the device's
/// reflection, CFO over the whole symbol, then AWGN of `noise_var` per time
/// sample (0 disables noise).
FreqGrid transmit_symbol(const LinkContext& ctx, const ChannelRealization& ch,
                         std::span<const int> primary_bits, int bd_bit, double noise_var,
                         double cfo, Rng& rng);

struct TrialTally {
  std::int64_t trials = 0;
  std::int64_t errors = 0;
  std::int64_t units = 0;  // decisions inspected (bits for BER, trials otherwise)

  TrialTally& operator+=(const TrialTally& o) {
    trials += o.trials;
    errors += o.errors;
    units += o.units;
    return *this;
  }
};

struct RunBudget {
  std::int64_t max_trials = 1;
  std::int64_t min_errors = 100;
  std::int64_t batch = 2048;
};

/// Errors and units of one trial (its `trials` field is ignored); `trial`
/// seeds the generator.
using TrialFn = std::function<TrialTally(std::uint64_t trial)>;

/// Runs fixed-size batches of trials until min_errors error events or
/// max_trials. Batch boundaries do not depend on the thread count and counts
/// are integers, so the tally is identical for any `threads`.
TrialTally run_trials(const TrialFn& fn, const RunBudget& budget, int threads);

/// fn(i) for i in [0, count), spread across threads. Exceptions propagate.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn, int threads);

int resolve_threads(int requested);

}  // namespace nullshift
