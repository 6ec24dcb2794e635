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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nullshift/channel.hpp"
#include "nullshift/types.hpp"

namespace nullshift {

enum class BerMetric { kBackscatter, kPrimary };

std::string_view to_string(BerMetric metric);
BerMetric parse_ber_metric(std::string_view text);

/// Every knob of an experiment. Keys accepted by apply_setting() are the
/// field names (dashes and underscores interchangeable).
struct SystemConfig {
  int n = 64;
  Scheme scheme = Scheme::kOok;
  int zeta = 0;  // 0: scheme default (2 for FSK2, else 1)
  double gamma = 0.25;
  double gamma_phase = 0.0;
  std::vector<double> snr_db{0, 5, 10, 15, 20, 25, 30};
  double cfo = 0.0;
  std::vector<double> cfo_grid{0.0, 0.05};
  std::vector<double> eta_grid;  // empty: derived from PFA quantiles
  int l_direct = 4;
  int l_forward = 4;
  int l_backward = 1;
  double sigma_v = 1.0;
  double pfa_target = 1e-3;
  std::int64_t trials = 2'000'000;  // per-point cap
  std::int64_t min_errors = 100;
  std::int64_t roc_trials = 40'000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency; never affects results
  ChannelMode channel_mode = ChannelMode::kTappedDelay;
  BerMetric metric = BerMetric::kBackscatter;
  int payload_bits = 7;
  unsigned crc_preset = 0;

  int cp_len() const { return n / 8; }
  int effective_zeta() const;

  /// Throws ConfigError on any violated invariant.
  void validate() const;
};

struct ConfigKey {
  std::string_view name;
  std::string_view help;
};

/// All keys understood by apply_setting(), in a stable order.
const std::vector<ConfigKey>& config_keys();

/// Sets one field from text. Throws ConfigError for unknown keys or values
/// that do not parse.
void apply_setting(SystemConfig& cfg, std::string_view key, std::string_view value);

/// key = value lines; '#' starts a comment; blank lines ignored.
SystemConfig load_config_file(const std::string& path, SystemConfig base = {});
void apply_config_text(SystemConfig& cfg, std::string_view text);

/// Canonical (key, value) rendering of every result-affecting field.
/// `threads` is omitted: it never changes results.
std::vector<std::pair<std::string, std::string>> describe(const SystemConfig& cfg);

/// "a:step:b" (inclusive) or "x,y,z" or a single number.
std::vector<double> parse_grid(std::string_view text);

/// Shortest round-trip decimal form, '.' separator, independent of locale.
std::string format_double(double x);
double parse_double(std::string_view text);
std::int64_t parse_int(std::string_view text);

}  // namespace nullshift
