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

// Closed-form error analysis of the BD detectors.
//
// Given the backward-link amplitude v, every landing-bin energy |Y[k]|^2 is
// exponential with mean |Gamma|^2 v^2 sigma_h^2 + sigma_W^2 (signal-bearing
// bin) or sigma_W^2 (noise only). Detector statistics are sums of such
// independent terms, so their laws are exponential mixtures handled through
// characteristic functions and Gil-Pelaez inversion. v is Rayleigh with
// E[v^2] = sigma_v^2.

#include <string>
#include <utility>
#include <vector>

#include "nullshift/quadrature.hpp"
#include "nullshift/types.hpp"

namespace nullshift {

/// Sum of independent exponentials with rates lambda_k (mean 1/lambda_k).
struct ExpMixSpec {
  std::vector<double> rates;

  /// Throws ConfigError unless nonempty with every rate positive and finite.
  void validate() const;
  double mean() const;
  static ExpMixSpec from_means(const std::vector<double>& means);
};

/// prod_k (1 - i t / lambda_k)^{-1}
Complex charfn_h0(double t, const ExpMixSpec& spec);

/// Conditional law of a landing-set energy given v: one component per bin
/// with mean gamma_sq * v^2 * sigma_h_sq[k] + sigma_w_sq. n_b must equal
/// sigma_h_sq.size().
Complex charfn_h1(double t, double gamma_sq, double v, const std::vector<double>& sigma_h_sq,
                  double sigma_w_sq, int n_b);

/// Statistics on one landing set of n_b bins.
struct LandingModel {
  double gamma_sq = 0.0;
  std::vector<double> signal_var;  // sigma_h^2 per bin (cascade x symbol energy)
  double noise_var = 1.0;          // sigma_W^2 per bin

  ExpMixSpec noise_law() const;
  ExpMixSpec signal_law(double v) const;
};

/// Landing model of `scheme` at N, zeta, |Gamma| and SNR (dB), with unit
/// symbol energy and unit-variance forward responses.
LandingModel landing_model(Scheme scheme, int n, int zeta, double gamma_mag,
                           double snr_db);

/// CDF of an exponential mixture, with the work done in units of its
/// smallest mean. Returns value and error estimate.
IntegralResult mixture_cdf(const ExpMixSpec& spec, double x, const QuadratureSpec& q);

/// 1 - F_{r0}(eta).
double pfa_of_threshold(double eta, const ExpMixSpec& noise_spec, const QuadratureSpec& q);

/// F_{r1 | v}(eta).
double pmd_given_v(double eta, double v, const LandingModel& model, const QuadratureSpec& q);

/// E_v[F_{r1 | v}(eta)], v Rayleigh with E[v^2] = sigma_v^2, truncated at
/// 6 sigma_v (tail mass e^{-36} folded into the error estimate).
IntegralResult pmd_marginal(double eta, double sigma_v, const LandingModel& model,
                            const QuadratureSpec& q);

/// Threshold whose false-alarm probability is pfa_target to within
/// 1e-6 * pfa_target. Throws NumericalError if no bracket is found.
double optimal_threshold(double pfa_target, const ExpMixSpec& noise_spec,
                         const QuadratureSpec& q);

struct FskParams {
  Scheme scheme = Scheme::kFsk2;
  int n = 64;
  int zeta = 2;
  double gamma_mag = 1.0;
  double sigma_v = 1.0;
  double snr_db = 30.0;
};

/// Conditional error probability given v, equiprobable bits.
double fsk_error_given_v(double v, const LandingModel& set0, const LandingModel& set1,
                         const QuadratureSpec& q);

/// P_e = 1/2 Pr(ts0 < ts1 | b=0) + 1/2 Pr(ts0 >= ts1 | b=1), marginalized over v.
IntegralResult fsk_error_prob(const FskParams& params, const QuadratureSpec& q);

enum class TheoryKind { kOokPmd, kFskBer };

struct TheoryParams {
  Scheme scheme = Scheme::kOok;
  int n = 64;
  int zeta = 1;
  double gamma_mag = 0.25;
  double sigma_v = 1.0;
  double pfa_target = 1e-3;
};

struct TheoryCurve {
  TheoryKind kind = TheoryKind::kOokPmd;
  TheoryParams params;
  std::vector<double> abscissa;  // SNR in dB
  std::vector<double> values;    // NaN where failed
  std::vector<double> error_estimate;
  std::vector<bool> failed;
  std::vector<std::string> failure;

  bool any_failed() const;
};

/// Evaluates each SNR point independently; a NumericalError at one point is
/// recorded on that point and the sweep continues.
TheoryCurve theory_sweep(TheoryKind kind, const std::vector<double>& snr_grid,
                         const TheoryParams& params, const QuadratureSpec& q);

}  // namespace nullshift
