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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "nullshift/waveform.hpp"

using namespace nullshift;

namespace {

// O(N^2) transforms, independent of the library's FFT backend.
ComplexVector naive_dft(const ComplexVector& x, int sign) {
  const auto n = x.size();
  ComplexVector out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{};
    for (std::size_t i = 0; i < n; ++i) {
      const double angle = sign * 2.0 * kPi * static_cast<double>((k * i) % n) / static_cast<double>(n);
      acc += x[i] * std::polar(1.0, angle);
    }
    out[k] = acc;
  }
  return out;
}

ComplexVector random_grid(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

IndexSet range(int first, int last, int step) {
  IndexSet s;
  for (int k = first; k <= last; k += step) s.push_back(k);
  return s;
}

std::set<int> shifted_set(const IndexSet& idx, int shift, int n) {
  std::set<int> out;
  for (int k : idx) out.insert(((k + shift) % n + n) % n);
  return out;
}

}  // namespace

TEST_CASE("OOK layout at N=8") {
  const auto plan = build_subcarrier_plan(Scheme::kOok, 8, 1);
  CHECK(plan.data_idx == IndexSet{0, 2, 4, 6});
  CHECK(plan.null_idx_b0 == IndexSet{1, 3, 5, 7});
  CHECK(plan.null_idx_b1 == plan.null_idx_b0);
}

TEST_CASE("FSK1 layout at N=64 and brute-force edge sets") {
  const auto plan = build_subcarrier_plan(Scheme::kFsk1, 64, 1);
  CHECK(plan.data_idx == range(0, 60, 2));
  CHECK(plan.data_idx.size() == 31);
  CHECK(64 - plan.data_idx.size() == 33);
  // Bins reached under exactly one hypothesis.
  const auto land0 = shifted_set(plan.data_idx, -1, 64);
  const auto land1 = shifted_set(plan.data_idx, +1, 64);
  IndexSet only0, only1;
  for (int k : land0) {
    if (!land1.count(k)) only0.push_back(k);
  }
  for (int k : land1) {
    if (!land0.count(k)) only1.push_back(k);
  }
  CHECK(only0 == IndexSet{63});
  CHECK(only1 == IndexSet{61});
  CHECK(plan.null_idx_b0 == only0);
  CHECK(plan.null_idx_b1 == only1);
}

TEST_CASE("FSK2 layout at N=64") {
  const auto plan = build_subcarrier_plan(Scheme::kFsk2, 64, 2);
  CHECK(plan.data_idx == range(1, 61, 3));
  CHECK(plan.null_idx_b0 == range(2, 62, 3));
  CHECK(plan.null_idx_b1 == range(3, 63, 3));
  CHECK(plan.data_idx.size() == 21);
  CHECK(plan.null_idx_b0.size() == 21);
  CHECK(plan.null_idx_b1.size() == 21);
}

TEST_CASE("every valid plan satisfies the structural invariants") {
  for (int n = 8; n <= 512; n *= 2) {
    for (Scheme scheme : {Scheme::kOok, Scheme::kFsk1, Scheme::kFsk2}) {
      for (int zeta = 1; zeta <= 8; ++zeta) {
        if (scheme == Scheme::kFsk1 && zeta != 1) continue;
        if (scheme == Scheme::kFsk2 && zeta < 2) continue;
        if (scheme == Scheme::kOok && n % (2 * zeta) != 0) continue;
        CAPTURE(n);
        CAPTURE(zeta);
        const auto plan = build_subcarrier_plan(scheme, n, zeta);
        CHECK(validate_plan(plan).empty());
        const std::set<int> data(plan.data_idx.begin(), plan.data_idx.end());
        for (int bit = 0; bit < 2; ++bit) {
          const auto shift = tone_shift(scheme, bit, zeta);
          if (!shift) continue;
          const auto landed = shifted_set(plan.data_idx, *shift, n);
          for (int k : landed) CHECK_FALSE(data.count(k));
          for (int k : plan.landing(bit)) CHECK(landed.count(k));
          if (scheme == Scheme::kOok) {
            CHECK(IndexSet(landed.begin(), landed.end()) == plan.null_idx_b0);
          } else {
            // The other hypothesis never reaches this landing set.
            const auto other = shifted_set(plan.data_idx, *tone_shift(scheme, 1 - bit, zeta), n);
            for (int k : plan.landing(bit)) CHECK_FALSE(other.count(k));
          }
        }
      }
    }
  }
}

TEST_CASE("invalid plan parameters are rejected") {
  CHECK_THROWS_AS(build_subcarrier_plan(Scheme::kOok, 48, 1), ConfigError);
  CHECK_THROWS_AS(build_subcarrier_plan(Scheme::kOok, 4, 1), ConfigError);
  CHECK_THROWS_AS(build_subcarrier_plan(Scheme::kOok, 64, 0), ConfigError);
  CHECK_THROWS_AS(build_subcarrier_plan(Scheme::kOok, 64, 3), ConfigError);
  CHECK_THROWS_AS(build_subcarrier_plan(Scheme::kOok, 64, 64), ConfigError);
  CHECK_THROWS_AS(build_subcarrier_plan(Scheme::kFsk1, 64, 2), ConfigError);
  CHECK_THROWS_AS(build_subcarrier_plan(Scheme::kFsk2, 64, 1), ConfigError);
}

TEST_CASE("validate_plan spots a corrupted plan") {
  auto plan = build_subcarrier_plan(Scheme::kOok, 16, 1);
  plan.null_idx_b0.push_back(plan.data_idx.front());
  std::sort(plan.null_idx_b0.begin(), plan.null_idx_b0.end());
  CHECK_FALSE(validate_plan(plan).empty());
}

TEST_CASE("symbol mapping") {
  const auto ook = build_subcarrier_plan(Scheme::kOok, 8, 1);
  const ComplexVector ones(4, 1.0);
  CHECK(map_symbols(ook, ones).values == ComplexVector{1, 0, 1, 0, 1, 0, 1, 0});
  CHECK(map_symbols(ook, ComplexVector(4)).values == ComplexVector(8));

  const auto fsk2 = build_subcarrier_plan(Scheme::kFsk2, 64, 2);
  ComplexVector data(21);
  data[0] = -1.0;
  const auto grid = map_symbols(fsk2, data);
  for (int k = 0; k < 64; ++k) CHECK(grid.values[k] == (k == 1 ? Complex(-1.0) : Complex{}));

  CHECK_THROWS_AS(map_symbols(ook, ComplexVector(3)), ArgumentError);
}

TEST_CASE("modulation: DC tone, zeros and the naive IDFT oracle") {
  FreqGrid dc{ComplexVector(64)};
  dc.values[0] = 64.0;
  const auto sig = ofdm_modulate(dc, 8);
  REQUIRE(sig.samples.size() == 72);
  for (const auto& s : sig.samples) CHECK(std::abs(s - Complex(1.0)) < 1e-14);

  const auto zero = ofdm_modulate(FreqGrid{ComplexVector(64)}, 8);
  for (const auto& s : zero.samples) CHECK(s == Complex{});

  std::mt19937_64 rng(5);
  const FreqGrid x{random_grid(64, rng)};
  const auto body = ofdm_modulate(x, 8).body();
  const auto oracle = naive_dft(x.values, +1);
  for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(body[i] - oracle[i] / 64.0) < 1e-12);
}

TEST_CASE("round trip, Parseval and the cyclic prefix") {
  std::mt19937_64 rng(7);
  for (int n : {8, 64, 512}) {
    CAPTURE(n);
    const std::size_t cp = static_cast<std::size_t>(n / 8);
    const FreqGrid x{random_grid(static_cast<std::size_t>(n), rng)};
    const auto sig = ofdm_modulate(x, cp);
    const auto back = ofdm_demodulate(sig, static_cast<std::size_t>(n), cp);
    double grid_energy = 0.0;
    double body_energy = 0.0;
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(back.values[k] - x.values[k]) < 1e-12);
      grid_energy += std::norm(x.values[k]);
    }
    for (const auto& s : sig.body()) body_energy += std::norm(s);
    CHECK(std::abs(body_energy - grid_energy / n) <= 1e-12 * body_energy);
    for (std::size_t i = 0; i < cp; ++i) {
      CHECK(sig.samples[i] == sig.samples[static_cast<std::size_t>(n) + i]);
    }
  }
}

TEST_CASE("demodulation: zero input, pure tone, length checks") {
  TimeSignal zero{ComplexVector(72), 8};
  for (const auto& v : ofdm_demodulate(zero, 64, 8).values) CHECK(v == Complex{});

  TimeSignal tone{ComplexVector(72), 8};
  for (int i = 0; i < 72; ++i) tone.samples[i] = std::polar(1.0, 2.0 * kPi * 3.0 * (i - 8) / 64.0);
  const auto grid = ofdm_demodulate(tone, 64, 8);
  for (int k = 0; k < 64; ++k) {
    CHECK(std::abs(grid.values[k]) == doctest::Approx(k == 3 ? 64.0 : 0.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(ofdm_demodulate(TimeSignal{ComplexVector(70), 8}, 64, 8), ArgumentError);
  CHECK_THROWS(ofdm_modulate(FreqGrid{ComplexVector(8)}, 8));
}
