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

#include "nullshift/channel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "nullshift/simd/kernels.hpp"

namespace nullshift {

std::string_view to_string(ChannelMode mode) {
  return mode == ChannelMode::kTappedDelay ? "tapped" : "iid";
}

ChannelMode parse_channel_mode(std::string_view text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "tapped" || s == "tapped-delay" || s == "tdl") return ChannelMode::kTappedDelay;
  if (s == "iid" || s == "iid-frequency") return ChannelMode::kIidFrequency;
  throw ConfigError("unknown channel mode '" + std::string(text) + "'");
}

ComplexVector frequency_response(std::span<const Complex> taps, int n) {
  if (taps.size() > static_cast<std::size_t>(n)) {
    throw ArgumentError("frequency_response: more taps than bins");
  }
  ComplexVector padded(static_cast<std::size_t>(n));
  std::copy(taps.begin(), taps.end(), padded.begin());
  ComplexVector out(static_cast<std::size_t>(n));
  detail::dft_forward(padded, out);
  return out;
}

namespace {

ComplexVector draw_taps(int count, double total_power, Rng& rng) {
  ComplexVector taps(static_cast<std::size_t>(count));
  for (auto& t : taps) t = complex_normal(rng, total_power / count);
  return taps;
}

}  // namespace

ChannelRealization sample_channels(int l_direct, int l_forward, double sigma_v,
                                   int n, Rng& rng, int l_backward) {
  if (l_direct < 1 || l_forward < 1 || l_backward < 1) {
    throw ConfigError("channel tap counts must be >= 1");
  }
  if (!(sigma_v > 0.0)) throw ConfigError("sigma_v must be positive");
  ChannelRealization ch;
  ch.mode = ChannelMode::kTappedDelay;
  ch.taps_direct = draw_taps(l_direct, 1.0, rng);
  ch.taps_forward = draw_taps(l_forward, 1.0, rng);
  ch.taps_backward = draw_taps(l_backward, sigma_v * sigma_v, rng);
  ch.freq_direct = frequency_response(ch.taps_direct, n);
  ch.freq_forward = frequency_response(ch.taps_forward, n);
  ch.freq_backward = frequency_response(ch.taps_backward, n);
  return ch;
}

ChannelRealization sample_iid_frequency_channels(int n, double sigma_v, Rng& rng) {
  if (!(sigma_v > 0.0)) throw ConfigError("sigma_v must be positive");
  ChannelRealization ch;
  ch.mode = ChannelMode::kIidFrequency;
  ch.freq_direct = draw_taps(n, static_cast<double>(n), rng);
  ch.freq_forward = draw_taps(n, static_cast<double>(n), rng);
  ch.taps_backward = {complex_normal(rng, sigma_v * sigma_v)};
  ch.freq_backward.assign(static_cast<std::size_t>(n), ch.taps_backward.front());
  return ch;
}

ChannelRealization flat_channels(int n, Complex direct, Complex forward,
                                 Complex backward) {
  ChannelRealization ch;
  ch.mode = ChannelMode::kTappedDelay;
  ch.taps_direct = {direct};
  ch.taps_forward = {forward};
  ch.taps_backward = {backward};
  ch.freq_direct.assign(static_cast<std::size_t>(n), direct);
  ch.freq_forward.assign(static_cast<std::size_t>(n), forward);
  ch.freq_backward.assign(static_cast<std::size_t>(n), backward);
  return ch;
}

TimeSignal apply_channel(std::span<const Complex> taps, const TimeSignal& sig) {
  if (taps.empty()) throw ArgumentError("apply_channel: no taps");
  if (taps.size() - 1 > sig.cp_len) {
    throw ConfigError("apply_channel: delay spread of " +
                      std::to_string(taps.size() - 1) +
                      " samples exceeds cyclic prefix of " + std::to_string(sig.cp_len));
  }
  TimeSignal out;
  out.cp_len = sig.cp_len;
  out.samples.assign(sig.samples.size(), Complex{});
  const std::size_t len = sig.samples.size();
  for (std::size_t l = 0; l < taps.size() && l < len; ++l) {
    simd::accumulate_scaled(taps[l],
                            std::span<const Complex>(sig.samples).first(len - l),
                            std::span<Complex>(out.samples).subspan(l));
  }
  return out;
}

TimeSignal add_awgn(const TimeSignal& sig, const NoiseSpec& spec, Rng& rng) {
  if (!(spec.variance > 0.0)) throw ConfigError("noise variance must be positive");
  TimeSignal out = sig;
  std::normal_distribution<double> gauss(0.0, std::sqrt(spec.variance / 2.0));
  for (auto& s : out.samples) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    s += Complex(re, im);
  }
  return out;
}

TimeSignal apply_cfo(const TimeSignal& sig, const CfoSpec& spec) {
  if (spec.epsilon == 0.0) return sig;
  if (sig.samples.size() <= sig.cp_len) throw ArgumentError("apply_cfo: empty body");
  const double n = static_cast<double>(sig.samples.size() - sig.cp_len);
  const auto cp = static_cast<double>(sig.cp_len);
  ComplexVector rot(sig.samples.size());
  for (std::size_t i = 0; i < rot.size(); ++i) {
    rot[i] = std::polar(1.0, 2.0 * kPi * spec.epsilon * (static_cast<double>(i) - cp) / n);
  }
  TimeSignal out;
  out.cp_len = sig.cp_len;
  out.samples.resize(sig.samples.size());
  simd::multiply_scaled(sig.samples, rot, Complex(1.0, 0.0), out.samples);
  return out;
}

double bin_noise_energy(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

NoiseSpec snr_to_noise_variance(double snr_db, const SubcarrierPlan& plan) {
  return NoiseSpec{bin_noise_energy(snr_db) / static_cast<double>(plan.n)};
}

}  // namespace nullshift
