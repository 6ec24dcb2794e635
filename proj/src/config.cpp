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

#include "nullshift/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nullshift {

std::string_view to_string(BerMetric metric) {
  return metric == BerMetric::kBackscatter ? "bd" : "primary";
}

BerMetric parse_ber_metric(std::string_view text) {
  if (text == "bd" || text == "backscatter") return BerMetric::kBackscatter;
  if (text == "primary") return BerMetric::kPrimary;
  throw ConfigError("unknown BER metric '" + std::string(text) + "'");
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string normalize_key(std::string_view key) {
  std::string out;
  for (char c : trim(key)) {
    out.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string join_grid(const std::vector<double>& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) out.push_back(',');
    out += format_double(grid[i]);
  }
  return out;
}

}  // namespace

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double x = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("not a number: '" + std::string(text) + "'");
  }
  return x;
}

std::int64_t parse_int(std::string_view text) {
  text = trim(text);
  // Allow 1e6-style counts as long as they are exact integers.
  if (text.find_first_of(".eE") != std::string_view::npos) {
    const double x = parse_double(text);
    if (x != std::floor(x) || std::abs(x) > 9e15) {
      throw ConfigError("not an integer: '" + std::string(text) + "'");
    }
    return static_cast<std::int64_t>(x);
  }
  std::int64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_grid(std::string_view text) {
  text = trim(text);
  std::vector<double> grid;
  if (text.empty()) return grid;
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw ConfigError("grid must be start:step:stop");
    const double start = parse_double(text.substr(0, c1));
    const double step = parse_double(text.substr(c1 + 1, c2 - c1 - 1));
    const double stop = parse_double(text.substr(c2 + 1));
    if (!(step > 0.0) || stop < start) throw ConfigError("grid needs step > 0 and stop >= start");
    const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9));
    if (count > 100000) throw ConfigError("grid too long");
    for (std::int64_t i = 0; i <= count; ++i) grid.push_back(start + static_cast<double>(i) * step);
    return grid;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    grid.push_back(parse_double(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return grid;
}

int SystemConfig::effective_zeta() const {
  if (zeta > 0) return zeta;
  return scheme == Scheme::kFsk2 ? 2 : 1;
}

void SystemConfig::validate() const {
  if (n != 64 && n != 128 && n != 256 && n != 512) {
    throw ConfigError("n must be one of 64, 128, 256, 512");
  }
  if (zeta < 0) throw ConfigError("zeta must be >= 0 (0 selects the scheme default)");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in [0, 1]");
  if (snr_db.empty()) throw ConfigError("snr grid is empty");
  for (double s : snr_db) {
    if (!std::isfinite(s)) throw ConfigError("snr values must be finite");
  }
  if (!std::isfinite(cfo)) throw ConfigError("cfo must be finite");
  if (l_direct < 1 || l_forward < 1 || l_backward < 1) throw ConfigError("tap counts must be >= 1");
  if (l_direct - 1 > cp_len() || l_forward - 1 > cp_len() || l_backward - 1 > cp_len()) {
    throw ConfigError("channel delay spread exceeds the cyclic prefix");
  }
  if (!(sigma_v > 0.0)) throw ConfigError("sigma_v must be positive");
  if (!(pfa_target > 0.0 && pfa_target < 1.0)) throw ConfigError("pfa_target must lie in (0, 1)");
  if (trials < 1 || roc_trials < 1) throw ConfigError("trials must be >= 1");
  if (min_errors < 1) throw ConfigError("min_errors must be >= 1");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  if (payload_bits < 1) throw ConfigError("payload_bits must be >= 1");
  if (crc_preset > 0x1f) throw ConfigError("crc_preset must fit in 5 bits");
}

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys{
      {"n", "DFT size (64, 128, 256, 512); cyclic prefix is n/8"},
      {"scheme", "ook, fsk1 or fsk2"},
      {"zeta", "tone spacing in bins (0: scheme default)"},
      {"gamma", "reflection coefficient magnitude in [0, 1]"},
      {"gamma_phase", "reflection coefficient phase (rad)"},
      {"snr", "SNR grid in dB: a:step:b or comma list"},
      {"cfo", "carrier frequency offset in subcarrier spacings"},
      {"cfo_grid", "CFO values for the cfo study"},
      {"eta_grid", "detection thresholds for the ROC (default: PFA quantiles)"},
      {"l_direct", "direct-link taps"},
      {"l_forward", "forward-link taps"},
      {"l_backward", "backward-link taps (1 for theory comparisons)"},
      {"sigma_v", "RMS backward-link amplitude"},
      {"pfa_target", "false-alarm target for the OOK threshold"},
      {"trials", "trial cap per point"},
      {"min_errors", "stop a point after this many error events"},
      {"roc_trials", "trials per hypothesis for the ROC"},
      {"seed", "master seed"},
      {"threads", "worker threads (0: all cores)"},
      {"channel_mode", "tapped or iid"},
      {"metric", "BER metric: bd or primary"},
      {"payload_bits", "information bits per frame"},
      {"crc_preset", "CRC-5 register preset (0 or 9 for the Gen2 value 01001)"},
  };
  return keys;
}

void apply_setting(SystemConfig& cfg, std::string_view key_in, std::string_view value_in) {
  const std::string key = normalize_key(key_in);
  const std::string_view value = trim(value_in);
  const auto as_int = [&] { return static_cast<int>(parse_int(value)); };
  if (key == "n") {
    cfg.n = as_int();
  } else if (key == "scheme") {
    cfg.scheme = parse_scheme(value);
  } else if (key == "zeta") {
    cfg.zeta = as_int();
  } else if (key == "gamma") {
    cfg.gamma = parse_double(value);
  } else if (key == "gamma_phase") {
    cfg.gamma_phase = parse_double(value);
  } else if (key == "snr" || key == "snr_db") {
    cfg.snr_db = parse_grid(value);
  } else if (key == "cfo") {
    cfg.cfo = parse_double(value);
  } else if (key == "cfo_grid") {
    cfg.cfo_grid = parse_grid(value);
  } else if (key == "eta_grid") {
    cfg.eta_grid = parse_grid(value);
  } else if (key == "l_direct") {
    cfg.l_direct = as_int();
  } else if (key == "l_forward") {
    cfg.l_forward = as_int();
  } else if (key == "l_backward") {
    cfg.l_backward = as_int();
  } else if (key == "sigma_v") {
    cfg.sigma_v = parse_double(value);
  } else if (key == "pfa_target") {
    cfg.pfa_target = parse_double(value);
  } else if (key == "trials") {
    cfg.trials = parse_int(value);
  } else if (key == "min_errors") {
    cfg.min_errors = parse_int(value);
  } else if (key == "roc_trials") {
    cfg.roc_trials = parse_int(value);
  } else if (key == "seed") {
    std::uint64_t s = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), s);
    if (value.empty() || res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
      throw ConfigError("seed must be an unsigned 64-bit integer");
    }
    cfg.seed = s;
  } else if (key == "threads") {
    cfg.threads = as_int();
  } else if (key == "channel_mode") {
    cfg.channel_mode = parse_channel_mode(value);
  } else if (key == "metric") {
    cfg.metric = parse_ber_metric(value);
  } else if (key == "payload_bits") {
    cfg.payload_bits = as_int();
  } else if (key == "crc_preset") {
    cfg.crc_preset = static_cast<unsigned>(parse_int(value));
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key_in) + "'");
  }
}

void apply_config_text(SystemConfig& cfg, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(cfg, view.substr(0, eq), view.substr(eq + 1));
  }
}

SystemConfig load_config_file(const std::string& path, SystemConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(base, buffer.str());
  return base;
}

std::vector<std::pair<std::string, std::string>> describe(const SystemConfig& cfg) {
  return {
      {"n", std::to_string(cfg.n)},
      {"cp_len", std::to_string(cfg.cp_len())},
      {"scheme", std::string(to_string(cfg.scheme))},
      {"zeta", std::to_string(cfg.effective_zeta())},
      {"gamma", format_double(cfg.gamma)},
      {"gamma_phase", format_double(cfg.gamma_phase)},
      {"snr", join_grid(cfg.snr_db)},
      {"snr_def", "post-DFT per-data-subcarrier direct-link SNR"},
      {"cfo", format_double(cfg.cfo)},
      {"l_direct", std::to_string(cfg.l_direct)},
      {"l_forward", std::to_string(cfg.l_forward)},
      {"l_backward", std::to_string(cfg.l_backward)},
      {"sigma_v", format_double(cfg.sigma_v)},
      {"pfa_target", format_double(cfg.pfa_target)},
      {"trials", std::to_string(cfg.trials)},
      {"min_errors", std::to_string(cfg.min_errors)},
      {"seed", std::to_string(cfg.seed)},
      {"channel_mode", std::string(to_string(cfg.channel_mode))},
      {"metric", std::string(to_string(cfg.metric))},
      {"payload_bits", std::to_string(cfg.payload_bits)},
      {"crc_preset", std::to_string(cfg.crc_preset)},
  };
}

}  // namespace nullshift
