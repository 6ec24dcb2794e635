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

// Monte Carlo sweeps and theory curves, each rendered as a SimCurve.

#include <cstdint>
#include <vector>

#include "nullshift/analysis.hpp"
#include "nullshift/config.hpp"
#include "nullshift/curve.hpp"
#include "nullshift/link.hpp"

namespace nullshift {

struct PointEstimate {
  double p = 0.0;
  double ci95 = 0.0;  // 1.96 * sqrt(p (1 - p) / units)
  std::int64_t trials = 0;
  std::int64_t errors = 0;
};

PointEstimate estimate(const TrialTally& tally);

/// Quadrature settings used by every experiment.
QuadratureSpec default_quadrature();

/// OOK energy threshold meeting cfg.pfa_target at this SNR.
double ook_threshold(const SystemConfig& cfg, double snr_db);

/// OOK missed-detection probability per SNR (device always sends 1).
SimCurve run_pmd_sweep(const SystemConfig& cfg);

struct RocPoint {
  double eta = 0.0;
  double pfa = 0.0;
  double pd = 0.0;
  double ci_pfa = 0.0;
  double ci_pd = 0.0;
};

struct RocResult {
  double snr_db = 0.0;
  std::int64_t trials = 0;  // per hypothesis
  std::vector<RocPoint> points;  // ascending PFA
};

/// Empirical ROC at one SNR: cfg.roc_trials symbols under each hypothesis,
/// thresholded at every eta. An empty grid uses thresholds at PFA quantiles.
RocResult run_roc(const SystemConfig& cfg, double snr_db, std::vector<double> eta_grid = {});

/// PD at the given PFA by linear interpolation along the empirical ROC.
double pd_at_pfa(const RocResult& roc, double pfa);

SimCurve roc_to_curve(const SystemConfig& cfg, const RocResult& roc);

/// Bit error rate per SNR: the device bit (cfg.metric = bd) or the primary
/// BPSK data (cfg.metric = primary).
SimCurve run_ber_sweep(const SystemConfig& cfg);

/// One BER curve per CFO value. Every curve reuses the same trial seeds.
std::vector<SimCurve> run_cfo_study(const SystemConfig& cfg, const std::vector<double>& eps_grid);

/// Fraction of CRC-protected frames that fail their check at one SNR.
/// One device bit per OFDM symbol; channels are constant over a frame.
PointEstimate retransmission_probability(const SystemConfig& cfg, double snr_db,
                                         std::int64_t max_frames);

SimCurve run_retx(const SystemConfig& cfg);

/// OOK missed detection (scheme ook) or FSK bit error (fsk1/fsk2) from the
/// analysis module over cfg.snr_db.
TheoryCurve run_theory(const SystemConfig& cfg, const QuadratureSpec& q);

/// ci95 holds the quadrature error estimate; failed points carry NaN and are
/// listed in the "failed_points" metadata entry.
SimCurve theory_to_curve(const SystemConfig& cfg, const TheoryCurve& theory);

struct Agreement {
  double snr_db = 0.0;
  double theory = 0.0;
  double simulated = 0.0;
  double ci95 = 0.0;
  bool checked = false;  // probability >= floor
  bool agrees = true;
};

/// Pointwise match within max(rel_tol * theory, 3 * ci95) wherever the
/// theory value is at least `floor`.
std::vector<Agreement> compare_curves(const SimCurve& theory, const SimCurve& simulated,
                                      double rel_tol = 0.10, double floor = 1e-3);

}  // namespace nullshift
