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

#include "nullshift/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "nullshift/crc.hpp"
#include "nullshift/detector.hpp"

namespace nullshift {

namespace {

// Seed streams. CFO curves share the BER stream so every offset sees the
// same channels, data and noise.
enum StreamTag : std::uint64_t {
  kPmdStream = 1,
  kRocNoiseStream = 2,
  kRocSignalStream = 3,
  kBerStream = 4,
  kRetxStream = 6,
};

std::uint64_t stream_id(StreamTag tag, std::uint64_t point) { return (std::uint64_t{tag} << 32) ^ point; }

std::uint64_t stream_id(StreamTag tag, double value) {
  return splitmix64(std::uint64_t{tag} << 32) ^ std::bit_cast<std::uint64_t>(value);
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out.push_back(',');
    out += format_double(xs[i]);
  }
  return out;
}

std::string join(const std::vector<std::int64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(xs[i]);
  }
  return out;
}

SimCurve base_curve(const SystemConfig& cfg, const std::string& kind, const SubcarrierPlan& plan) {
  SimCurve curve;
  curve.set_meta("kind", kind);
  for (const auto& [k, v] : describe(cfg)) curve.set_meta(k, v);
  curve.set_meta("data_idx", join_indices(plan.data_idx));
  curve.set_meta("landing_b0", join_indices(plan.null_idx_b0));
  curve.set_meta("landing_b1", join_indices(plan.null_idx_b1));
  return curve;
}

CurvePoint make_point(const SystemConfig& cfg, double abscissa, double value, double ci,
                      std::int64_t trials) {
  CurvePoint p;
  p.abscissa = abscissa;
  p.value = value;
  p.ci95 = ci;
  p.scheme = std::string(to_string(cfg.scheme));
  p.n = cfg.n;
  p.gamma = cfg.gamma;
  p.pfa_target = cfg.pfa_target;
  p.cfo = cfg.cfo;
  p.seed = cfg.seed;
  p.trials = trials;
  return p;
}

double noise_variance(const LinkContext& ctx, double snr_db) {
  return snr_to_noise_variance(snr_db, ctx.plan).variance;
}

RunBudget budget_of(const SystemConfig& cfg) {
  RunBudget b;
  b.max_trials = cfg.trials;
  b.min_errors = cfg.min_errors;
  return b;
}

// Device-bit decision for one received grid.
int detect_bd(const LinkContext& ctx, const FreqGrid& y, double eta) {
  if (ctx.plan.scheme == Scheme::kOok) return ook_detect(ook_test_statistic(y, ctx.plan), eta);
  const auto [ts0, ts1] = fsk_metrics(y, ctx.plan);
  return fsk_detect(ts0, ts1);
}

}  // namespace

PointEstimate estimate(const TrialTally& tally) {
  PointEstimate e;
  e.trials = tally.trials;
  e.errors = tally.errors;
  if (tally.units > 0) {
    const auto units = static_cast<double>(tally.units);
    e.p = static_cast<double>(tally.errors) / units;
    e.ci95 = 1.96 * std::sqrt(e.p * (1.0 - e.p) / units);
  }
  return e;
}

QuadratureSpec default_quadrature() { return QuadratureSpec{}; }

double ook_threshold(const SystemConfig& cfg, double snr_db) {
  const LandingModel model =
      landing_model(Scheme::kOok, cfg.n, cfg.effective_zeta(), cfg.gamma, snr_db);
  return optimal_threshold(cfg.pfa_target, model.noise_law(), default_quadrature());
}

SimCurve run_pmd_sweep(const SystemConfig& cfg) {
  if (cfg.scheme != Scheme::kOok) throw ConfigError("pmd sweep needs the OOK scheme");
  const LinkContext ctx(cfg);
  SimCurve curve = base_curve(cfg, "pmd", ctx.plan);
  std::vector<std::int64_t> errors;
  std::vector<double> thresholds;
  for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
    const double snr = cfg.snr_db[i];
    const double eta = ook_threshold(cfg, snr);
    const double nv = noise_variance(ctx, snr);
    const auto stream = stream_id(kPmdStream, std::uint64_t{i});
    const TrialFn trial = [&](std::uint64_t t) {
      Rng rng = trial_rng(cfg.seed, stream, t);
      const auto ch = draw_channel(ctx, rng);
      const auto bits = draw_bits(ctx.plan.data_idx.size(), rng);
      const FreqGrid y = transmit_symbol(ctx, ch, bits, 1, nv, cfg.cfo, rng);
      const bool miss = ook_detect(ook_test_statistic(y, ctx.plan), eta) == 0;
      return TrialTally{0, miss ? 1 : 0, 1};
    };
    const PointEstimate e = estimate(run_trials(trial, budget_of(cfg), cfg.threads));
    curve.points.push_back(make_point(cfg, snr, e.p, e.ci95, e.trials));
    errors.push_back(e.errors);
    thresholds.push_back(eta);
  }
  curve.set_meta("errors", join(errors));
  curve.set_meta("eta", join(thresholds));
  return curve;
}

RocResult run_roc(const SystemConfig& cfg, double snr_db, std::vector<double> eta_grid) {
  if (cfg.scheme != Scheme::kOok) throw ConfigError("ROC needs the OOK scheme");
  const LinkContext ctx(cfg);
  if (eta_grid.empty()) {
    const LandingModel model =
        landing_model(Scheme::kOok, cfg.n, cfg.effective_zeta(), cfg.gamma, snr_db);
    const ExpMixSpec noise = model.noise_law();
    eta_grid.push_back(0.0);
    for (double pfa : {0.999, 0.99, 0.95, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.25, 0.2, 0.15,
                       0.12, 0.1, 0.08, 0.06, 0.05, 0.03, 0.02, 0.01, 0.005, 0.002, 0.001}) {
      eta_grid.push_back(optimal_threshold(pfa, noise, default_quadrature()));
    }
  }
  for (double eta : eta_grid) {
    if (!(eta >= 0.0)) throw ConfigError("ROC thresholds must be >= 0");
  }

  const double nv = noise_variance(ctx, snr_db);
  const auto count = cfg.roc_trials;
  std::vector<double> stat0(static_cast<std::size_t>(count));
  std::vector<double> stat1(static_cast<std::size_t>(count));
  for (int bit = 0; bit < 2; ++bit) {
    auto& out = bit == 0 ? stat0 : stat1;
    const auto stream = stream_id(bit == 0 ? kRocNoiseStream : kRocSignalStream, snr_db);
    parallel_for(
        count,
        [&](std::int64_t t) {
          Rng rng = trial_rng(cfg.seed, stream, static_cast<std::uint64_t>(t));
          const auto ch = draw_channel(ctx, rng);
          const auto bits = draw_bits(ctx.plan.data_idx.size(), rng);
          const FreqGrid y = transmit_symbol(ctx, ch, bits, bit, nv, cfg.cfo, rng);
          out[static_cast<std::size_t>(t)] = ook_test_statistic(y, ctx.plan);
        },
        cfg.threads);
  }
  std::sort(stat0.begin(), stat0.end());
  std::sort(stat1.begin(), stat1.end());

  RocResult roc;
  roc.snr_db = snr_db;
  roc.trials = count;
  const auto n = static_cast<double>(count);
  const auto exceed = [&](const std::vector<double>& sorted, double eta) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), eta);
    return static_cast<double>(sorted.end() - it) / n;
  };
  for (double eta : eta_grid) {
    RocPoint p;
    p.eta = eta;
    p.pfa = exceed(stat0, eta);
    p.pd = exceed(stat1, eta);
    p.ci_pfa = 1.96 * std::sqrt(p.pfa * (1.0 - p.pfa) / n);
    p.ci_pd = 1.96 * std::sqrt(p.pd * (1.0 - p.pd) / n);
    roc.points.push_back(p);
  }
  std::sort(roc.points.begin(), roc.points.end(), [](const RocPoint& a, const RocPoint& b) {
    return a.pfa != b.pfa ? a.pfa < b.pfa : a.pd < b.pd;
  });
  return roc;
}

double pd_at_pfa(const RocResult& roc, double pfa) {
  if (roc.points.empty()) throw ArgumentError("pd_at_pfa: empty ROC");
  const auto& pts = roc.points;
  if (pfa <= pts.front().pfa) return pts.front().pd;
  if (pfa >= pts.back().pfa) return pts.back().pd;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].pfa >= pfa) {
      const auto& a = pts[i - 1];
      const auto& b = pts[i];
      if (b.pfa == a.pfa) return b.pd;
      return a.pd + (b.pd - a.pd) * (pfa - a.pfa) / (b.pfa - a.pfa);
    }
  }
  return pts.back().pd;
}

SimCurve roc_to_curve(const SystemConfig& cfg, const RocResult& roc) {
  const LinkContext ctx(cfg);
  SimCurve curve = base_curve(cfg, "roc", ctx.plan);
  curve.set_meta("roc_snr", format_double(roc.snr_db));
  curve.set_meta("roc_trials", std::to_string(roc.trials));
  std::vector<double> etas;
  std::vector<double> ci_pfa;
  for (const auto& p : roc.points) {
    curve.points.push_back(make_point(cfg, p.pfa, p.pd, p.ci_pd, roc.trials));
    etas.push_back(p.eta);
    ci_pfa.push_back(p.ci_pfa);
  }
  curve.set_meta("eta", join(etas));
  curve.set_meta("ci95_pfa", join(ci_pfa));
  return curve;
}

SimCurve run_ber_sweep(const SystemConfig& cfg) {
  const LinkContext ctx(cfg);
  const bool primary = cfg.metric == BerMetric::kPrimary;
  SimCurve curve = base_curve(cfg, primary ? "ber_primary" : "ber_bd", ctx.plan);
  std::vector<std::int64_t> errors;
  for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
    const double snr = cfg.snr_db[i];
    const double eta = (!primary && cfg.scheme == Scheme::kOok) ? ook_threshold(cfg, snr) : 0.0;
    const double nv = noise_variance(ctx, snr);
    const auto stream = stream_id(kBerStream, std::uint64_t{i});
    const TrialFn trial = [&](std::uint64_t t) {
      Rng rng = trial_rng(cfg.seed, stream, t);
      const auto ch = draw_channel(ctx, rng);
      const auto bits = draw_bits(ctx.plan.data_idx.size(), rng);
      const int bd_bit = random_bit(rng);
      const FreqGrid y = transmit_symbol(ctx, ch, bits, bd_bit, nv, cfg.cfo, rng);
      if (primary) {
        const auto decided = primary_detect(y, ctx.plan, ch.freq_direct);
        return TrialTally{0, static_cast<std::int64_t>(count_bit_errors(decided, bits)),
                          static_cast<std::int64_t>(bits.size())};
      }
      return TrialTally{0, detect_bd(ctx, y, eta) != bd_bit ? 1 : 0, 1};
    };
    const PointEstimate e = estimate(run_trials(trial, budget_of(cfg), cfg.threads));
    curve.points.push_back(make_point(cfg, snr, e.p, e.ci95, e.trials));
    errors.push_back(e.errors);
  }
  curve.set_meta("errors", join(errors));
  return curve;
}

std::vector<SimCurve> run_cfo_study(const SystemConfig& cfg, const std::vector<double>& eps_grid) {
  if (eps_grid.empty()) throw ConfigError("cfo study needs at least one offset");
  std::vector<SimCurve> curves;
  for (double eps : eps_grid) {
    SystemConfig c = cfg;
    c.cfo = eps;
    curves.push_back(run_ber_sweep(c));
    curves.back().set_meta("kind", "cfo");
  }
  return curves;
}

PointEstimate retransmission_probability(const SystemConfig& cfg, double snr_db,
                                         std::int64_t max_frames) {
  if (max_frames < 1) throw ConfigError("need at least one frame");
  const LinkContext ctx(cfg);
  const double eta = cfg.scheme == Scheme::kOok ? ook_threshold(cfg, snr_db) : 0.0;
  const double nv = noise_variance(ctx, snr_db);
  const auto stream = stream_id(kRetxStream, snr_db);
  const auto payload_len = static_cast<std::size_t>(cfg.payload_bits);
  const TrialFn trial = [&](std::uint64_t t) {
    Rng rng = trial_rng(cfg.seed, stream, t);
    const auto ch = draw_channel(ctx, rng);
    Bits payload(payload_len);
    for (auto& b : payload) b = static_cast<std::uint8_t>(random_bit(rng));
    const Bits sent = crc5_encode(payload, cfg.crc_preset).bits();
    Bits received(sent.size());
    for (std::size_t k = 0; k < sent.size(); ++k) {
      const auto bits = draw_bits(ctx.plan.data_idx.size(), rng);
      const FreqGrid y = transmit_symbol(ctx, ch, bits, sent[k], nv, cfg.cfo, rng);
      received[k] = static_cast<std::uint8_t>(detect_bd(ctx, y, eta));
    }
    const bool fail = !crc5_check(Frame::split(received, payload_len), cfg.crc_preset);
    return TrialTally{0, fail ? 1 : 0, 1};
  };
  RunBudget budget = budget_of(cfg);
  budget.max_trials = max_frames;
  return estimate(run_trials(trial, budget, cfg.threads));
}

SimCurve run_retx(const SystemConfig& cfg) {
  const LinkContext ctx(cfg);
  SimCurve curve = base_curve(cfg, "retx", ctx.plan);
  std::vector<std::int64_t> errors;
  for (double snr : cfg.snr_db) {
    const PointEstimate e = retransmission_probability(cfg, snr, cfg.trials);
    curve.points.push_back(make_point(cfg, snr, e.p, e.ci95, e.trials));
    errors.push_back(e.errors);
  }
  curve.set_meta("errors", join(errors));
  return curve;
}

TheoryCurve run_theory(const SystemConfig& cfg, const QuadratureSpec& q) {
  cfg.validate();
  TheoryParams params;
  params.scheme = cfg.scheme;
  params.n = cfg.n;
  params.zeta = cfg.effective_zeta();
  params.gamma_mag = cfg.gamma;
  params.sigma_v = cfg.sigma_v;
  params.pfa_target = cfg.pfa_target;
  const TheoryKind kind = cfg.scheme == Scheme::kOok ? TheoryKind::kOokPmd : TheoryKind::kFskBer;
  return theory_sweep(kind, cfg.snr_db, params, q);
}

SimCurve theory_to_curve(const SystemConfig& cfg, const TheoryCurve& theory) {
  const SubcarrierPlan plan = build_subcarrier_plan(cfg.scheme, cfg.n, cfg.effective_zeta());
  SimCurve curve = base_curve(
      cfg, theory.kind == TheoryKind::kOokPmd ? "theory_pmd" : "theory_ber", plan);
  std::vector<double> failed;
  for (std::size_t i = 0; i < theory.abscissa.size(); ++i) {
    curve.points.push_back(
        make_point(cfg, theory.abscissa[i], theory.values[i], theory.error_estimate[i], 0));
    if (theory.failed[i]) failed.push_back(theory.abscissa[i]);
  }
  curve.set_meta("failed_points", join(failed));
  return curve;
}

std::vector<Agreement> compare_curves(const SimCurve& theory, const SimCurve& simulated,
                                      double rel_tol, double floor) {
  if (theory.points.size() != simulated.points.size()) {
    throw ArgumentError("compare_curves: curves have different grids");
  }
  std::vector<Agreement> out;
  for (std::size_t i = 0; i < theory.points.size(); ++i) {
    const auto& t = theory.points[i];
    const auto& s = simulated.points[i];
    if (t.abscissa != s.abscissa) throw ArgumentError("compare_curves: abscissae differ");
    Agreement a;
    a.snr_db = t.abscissa;
    a.theory = t.value;
    a.simulated = s.value;
    a.ci95 = s.ci95;
    a.checked = std::isfinite(t.value) && t.value >= floor;
    if (a.checked) {
      a.agrees = std::abs(s.value - t.value) <= std::max(rel_tol * t.value, 3.0 * s.ci95);
    } else {
      a.agrees = std::isfinite(t.value);
    }
    out.push_back(a);
  }
  return out;
}

}  // namespace nullshift
