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

#include "nullshift/waveform.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <sstream>

#include "fft.hpp"

namespace nullshift {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kOok: return "OOK";
    case Scheme::kFsk1: return "FSK1";
    case Scheme::kFsk2: return "FSK2";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c == '-' || c == '_') continue;
    s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  if (s == "OOK") return Scheme::kOok;
  if (s == "FSK1") return Scheme::kFsk1;
  if (s == "FSK2") return Scheme::kFsk2;
  throw ConfigError("unknown scheme '" + std::string(text) + "'");
}

std::optional<int> tone_shift(Scheme scheme, int bit, int zeta) {
  switch (scheme) {
    case Scheme::kOok:
      if (bit == 0) return std::nullopt;
      return zeta;
    case Scheme::kFsk1:
      return bit == 0 ? -1 : 1;
    case Scheme::kFsk2:
      return bit == 0 ? 1 : 2;
  }
  return std::nullopt;
}

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int wrap(int k, int n) { return ((k % n) + n) % n; }

IndexSet shifted(const IndexSet& idx, int shift, int n) {
  IndexSet out;
  out.reserve(idx.size());
  for (const auto k : idx) out.push_back(wrap(k + shift, n));
  std::sort(out.begin(), out.end());
  return out;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

bool disjoint(const IndexSet& a, const IndexSet& b) {
  IndexSet common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  return common.empty();
}

IndexSet data_layout(Scheme scheme, int n, int zeta) {
  IndexSet data;
  switch (scheme) {
    case Scheme::kOok:
      // Blocks of zeta data bins followed by zeta null bins.
      for (int k = 0; k < n; ++k) {
        if ((k / zeta) % 2 == 0) data.push_back(k);
      }
      break;
    case Scheme::kFsk1:
      // Even bins, stopping early enough that both edge bins stay distinct
      // landing sites: data {0, 2, ..., n-4}.
      for (int k = 0; k <= n - 4; k += 2) data.push_back(k);
      break;
    case Scheme::kFsk2:
      // Period zeta+1 starting at k=1; the +2 landing must not wrap.
      for (int k = 1; k + 2 <= n - 1; k += zeta + 1) data.push_back(k);
      break;
  }
  return data;
}

}  // namespace

SubcarrierPlan build_subcarrier_plan(Scheme scheme, int n, int zeta) {
  if (!is_power_of_two(n) || n < 8) {
    throw ConfigError("DFT size must be a power of two >= 8, got " +
                      std::to_string(n));
  }
  if (zeta < 1) throw ConfigError("zeta must be >= 1");
  switch (scheme) {
    case Scheme::kOok:
      if (zeta > n / 2 || n % (2 * zeta) != 0) {
        throw ConfigError("OOK needs 2*zeta to divide N");
      }
      break;
    case Scheme::kFsk1:
      if (zeta != 1) throw ConfigError("FSK1 shifts by exactly one bin (zeta=1)");
      break;
    case Scheme::kFsk2:
      if (zeta < 2) throw ConfigError("FSK2 needs zeta >= 2 null bins per data bin");
      break;
  }

  SubcarrierPlan plan;
  plan.n = n;
  plan.scheme = scheme;
  plan.zeta = zeta;
  plan.data_idx = data_layout(scheme, n, zeta);
  if (plan.data_idx.empty()) {
    throw ConfigError("zeta too large: no data subcarrier left");
  }

  if (scheme == Scheme::kOok) {
    plan.null_idx_b0 = shifted(plan.data_idx, zeta, n);
    plan.null_idx_b1 = plan.null_idx_b0;
  } else {
    const IndexSet land0 = shifted(plan.data_idx, *tone_shift(scheme, 0, zeta), n);
    const IndexSet land1 = shifted(plan.data_idx, *tone_shift(scheme, 1, zeta), n);
    plan.null_idx_b0 = set_difference(land0, land1);
    plan.null_idx_b1 = set_difference(land1, land0);
  }

  if (const std::string err = validate_plan(plan); !err.empty()) {
    throw ConfigError("inconsistent subcarrier plan: " + err);
  }
  return plan;
}

std::string validate_plan(const SubcarrierPlan& plan) {
  const int n = plan.n;
  auto in_range = [n](const IndexSet& s) {
    return std::all_of(s.begin(), s.end(), [n](int k) { return k >= 0 && k < n; }) &&
           std::is_sorted(s.begin(), s.end()) &&
           std::adjacent_find(s.begin(), s.end()) == s.end();
  };
  if (!in_range(plan.data_idx) || !in_range(plan.null_idx_b0) ||
      !in_range(plan.null_idx_b1)) {
    return "index out of range, unsorted or duplicated";
  }
  if (!disjoint(plan.data_idx, plan.null_idx_b0) ||
      !disjoint(plan.data_idx, plan.null_idx_b1)) {
    return "data and landing sets overlap";
  }
  for (int bit = 0; bit < 2; ++bit) {
    const auto shift = tone_shift(plan.scheme, bit, plan.zeta);
    if (!shift) continue;
    const IndexSet land = shifted(plan.data_idx, *shift, n);
    if (!disjoint(land, plan.data_idx)) {
      return "shifted data lands on data for bit " + std::to_string(bit);
    }
  }
  if (plan.scheme == Scheme::kOok) {
    if (plan.null_idx_b0 != plan.null_idx_b1 ||
        plan.null_idx_b0.size() != plan.data_idx.size() ||
        plan.null_idx_b0 != shifted(plan.data_idx, plan.zeta, n)) {
      return "OOK landing set is not the zeta-shift of the data set";
    }
  } else {
    if (!disjoint(plan.null_idx_b0, plan.null_idx_b1)) {
      return "FSK landing sets overlap";
    }
    if (plan.null_idx_b0.empty() || plan.null_idx_b1.empty()) {
      return "FSK landing set empty";
    }
  }
  return {};
}

FreqGrid map_symbols(const SubcarrierPlan& plan, std::span<const Complex> data) {
  if (data.size() != plan.data_idx.size()) {
    throw ArgumentError("map_symbols: expected " +
                        std::to_string(plan.data_idx.size()) + " symbols, got " +
                        std::to_string(data.size()));
  }
  FreqGrid grid;
  grid.values.assign(static_cast<std::size_t>(plan.n), Complex{});
  for (std::size_t m = 0; m < data.size(); ++m) {
    grid.values[static_cast<std::size_t>(plan.data_idx[m])] = data[m];
  }
  return grid;
}

TimeSignal ofdm_modulate(const FreqGrid& x, std::size_t cp_len) {
  const std::size_t n = x.n();
  if (n == 0) throw ArgumentError("ofdm_modulate: empty grid");
  if (cp_len >= n) throw ArgumentError("ofdm_modulate: cp_len must be < N");

  TimeSignal out;
  out.cp_len = cp_len;
  out.samples.resize(n + cp_len);
  std::span<Complex> body(out.samples.data() + cp_len, n);
  detail::dft_backward(x.values, body);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& s : body) s *= inv_n;
  std::copy(body.end() - static_cast<std::ptrdiff_t>(cp_len), body.end(),
            out.samples.begin());
  return out;
}

FreqGrid ofdm_demodulate(const TimeSignal& y, std::size_t n, std::size_t cp_len) {
  if (y.samples.size() != n + cp_len) {
    throw ArgumentError("ofdm_demodulate: expected " + std::to_string(n + cp_len) +
                        " samples, got " + std::to_string(y.samples.size()));
  }
  FreqGrid grid;
  grid.values.resize(n);
  detail::dft_forward(std::span<const Complex>(y.samples).subspan(cp_len),
                      grid.values);
  return grid;
}

std::string join_indices(const IndexSet& idx) {
  std::ostringstream os;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) os << ',';
    os << idx[i];
  }
  return os.str();
}

}  // namespace nullshift
