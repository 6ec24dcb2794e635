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

// Rayleigh links, AWGN and carrier frequency offset.
//
// SNR convention: snr is the post-DFT ratio, on one data subcarrier of the
// direct link, of received symbol energy (unit symbols, unit mean channel
// gain) to noise energy. With the waveform's DFT convention a time-domain
// noise variance sigma_w^2 gives N * sigma_w^2 per bin, so
// sigma_w^2 = 1 / (N * snr).

#include <span>
#include <string_view>

#include "nullshift/rng.hpp"
#include "nullshift/types.hpp"
#include "nullshift/waveform.hpp"

namespace nullshift {

enum class ChannelMode {
  kTappedDelay,   // taps within the CP, uniform power-delay profile
  kIidFrequency,  // independent CN(0,1) per subcarrier (theory validation)
};

std::string_view to_string(ChannelMode mode);
ChannelMode parse_channel_mode(std::string_view text);

/// One draw of the direct (BS->Rx), forward (BS->BD) and backward (BD->Rx)
/// links together with their N-point frequency responses.
///
/// In kIidFrequency mode the direct/forward tap vectors are empty and the
/// responses are drawn per subcarrier; the backward link is always given by
/// taps.
struct ChannelRealization {
  ChannelMode mode = ChannelMode::kTappedDelay;
  ComplexVector taps_direct;
  ComplexVector taps_forward;
  ComplexVector taps_backward;  // single tap unless multipath was requested
  ComplexVector freq_direct;
  ComplexVector freq_forward;
  ComplexVector freq_backward;

  Complex tap_backward() const { return taps_backward.front(); }
};

/// N-point DFT of zero-padded taps.
ComplexVector frequency_response(std::span<const Complex> taps, int n);

/// Tapped-delay realization: direct and forward links get l taps of
/// CN(0, 1/l) each; the backward link gets l_backward taps of
/// CN(0, sigma_v^2 / l_backward). Draw order: direct, forward, backward.
ChannelRealization sample_channels(int l_direct, int l_forward, double sigma_v,
                                   int n, Rng& rng, int l_backward = 1);

/// Per-subcarrier i.i.d. CN(0,1) direct/forward responses; single-tap
/// CN(0, sigma_v^2) backward link.
ChannelRealization sample_iid_frequency_channels(int n, double sigma_v, Rng& rng);

/// Deterministic single-tap links; used by tests and interference checks.
ChannelRealization flat_channels(int n, Complex direct, Complex forward,
                                 Complex backward);

struct NoiseSpec {
  double variance = 1.0;  // total complex variance per time sample
};

struct CfoSpec {
  double epsilon = 0.0;  // in subcarrier spacings
};

/// Linear convolution truncated to the input length. Throws ConfigError when
/// the delay spread (taps - 1) exceeds the cyclic prefix.
TimeSignal apply_channel(std::span<const Complex> taps, const TimeSignal& sig);

/// Adds i.i.d. CN(0, variance) samples. Throws ConfigError for variance <= 0.
TimeSignal add_awgn(const TimeSignal& sig, const NoiseSpec& spec, Rng& rng);

/// Multiplies sample i by exp(j*2*pi*eps*(i - cp)/N): phase origin at the
/// start of the body, so an integer eps is an exact bin shift after CP removal.
TimeSignal apply_cfo(const TimeSignal& sig, const CfoSpec& spec);

/// Per-bin post-DFT noise energy for the SNR convention above: 10^(-snr/10).
double bin_noise_energy(double snr_db);

NoiseSpec snr_to_noise_variance(double snr_db, const SubcarrierPlan& plan);

}  // namespace nullshift
