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

#include "nullshift/link.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "nullshift/simd/kernels.hpp"

namespace nullshift {

LinkContext::LinkContext(const SystemConfig& config)
    : cfg(config),
      plan(build_subcarrier_plan(config.scheme, config.n, config.effective_zeta())),
      gamma(config.gamma, config.gamma_phase),
      waves{bd_waveform(config.scheme, 0, config.effective_zeta(), config.n),
            bd_waveform(config.scheme, 1, config.effective_zeta(), config.n)} {
  cfg.validate();
}

ChannelRealization draw_channel(const LinkContext& ctx, Rng& rng) {
  const auto& c = ctx.cfg;
  if (c.channel_mode == ChannelMode::kIidFrequency) {
    return sample_iid_frequency_channels(c.n, c.sigma_v, rng);
  }
  return sample_channels(c.l_direct, c.l_forward, c.sigma_v, c.n, rng, c.l_backward);
}

std::vector<int> draw_bits(std::size_t count, Rng& rng) {
  std::vector<int> bits(count);
  for (auto& b : bits) b = random_bit(rng);
  return bits;
}

FreqGrid transmit_symbol(const LinkContext& ctx, const ChannelRealization& ch,
                         std::span<const int> primary_bits, int bd_bit, double noise_var,
                         double cfo, Rng& rng) {
  const auto n = static_cast<std::size_t>(ctx.cfg.n);
  const auto cp = static_cast<std::size_t>(ctx.cfg.cp_len());
  if (primary_bits.size() != ctx.plan.data_idx.size()) {
    throw ArgumentError("transmit_symbol: one primary bit per data subcarrier");
  }
  ComplexVector symbols(primary_bits.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) symbols[i] = primary_bits[i] ? -1.0 : 1.0;
  const FreqGrid tx = map_symbols(ctx.plan, symbols);

  TimeSignal direct;
  TimeSignal at_device;
  if (ch.mode == ChannelMode::kIidFrequency) {
    FreqGrid grid{ComplexVector(n)};
    simd::multiply_scaled(ch.freq_direct, tx.values, Complex(1.0), grid.values);
    direct = ofdm_modulate(grid, cp);
    simd::multiply_scaled(ch.freq_forward, tx.values, Complex(1.0), grid.values);
    at_device = ofdm_modulate(grid, cp);
  } else {
    const TimeSignal x = ofdm_modulate(tx, cp);
    direct = apply_channel(ch.taps_direct, x);
    at_device = apply_channel(ch.taps_forward, x);
  }

  TimeSignal rx = std::move(direct);
  if (ctx.gamma.magnitude > 0.0 && (bd_bit == 1 || ctx.plan.scheme != Scheme::kOok)) {
    const TimeSignal reflected =
        apply_backscatter(at_device, ctx.waves[static_cast<std::size_t>(bd_bit)], ctx.gamma);
    const TimeSignal back = apply_channel(ch.taps_backward, reflected);
    for (std::size_t i = 0; i < rx.samples.size(); ++i) rx.samples[i] += back.samples[i];
  }
  if (cfo != 0.0) rx = apply_cfo(rx, CfoSpec{cfo});
  if (noise_var > 0.0) rx = add_awgn(rx, NoiseSpec{noise_var}, rng);
  return ofdm_demodulate(rx, n, cp);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn, int threads) {
  if (count <= 0) return;
  const int workers = static_cast<int>(std::min<std::int64_t>(resolve_threads(threads), count));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    constexpr std::int64_t kChunk = 64;
    try {
      for (;;) {
        const std::int64_t start = next.fetch_add(kChunk);
        if (start >= count) break;
        const std::int64_t stop = std::min(count, start + kChunk);
        for (std::int64_t i = start; i < stop; ++i) fn(i);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(count);
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
}

TrialTally run_trials(const TrialFn& fn, const RunBudget& budget, int threads) {
  if (budget.max_trials < 1 || budget.batch < 1) throw ConfigError("run_trials: empty budget");
  TrialTally total;
  std::vector<TrialTally> slots;
  while (total.trials < budget.max_trials && total.errors < budget.min_errors) {
    const std::int64_t first = total.trials;
    const std::int64_t count = std::min(budget.batch, budget.max_trials - first);
    slots.assign(static_cast<std::size_t>(count), TrialTally{});
    parallel_for(
        count,
        [&](std::int64_t i) {
          slots[static_cast<std::size_t>(i)] = fn(static_cast<std::uint64_t>(first + i));
        },
        threads);
    for (const auto& s : slots) {
      total.errors += s.errors;
      total.units += s.units;
    }
    total.trials += count;
  }
  return total;
}

}  // namespace nullshift
