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

#include "nullshift/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "nullshift/channel.hpp"
#include "nullshift/waveform.hpp"

namespace nullshift {

namespace {

// Equal means collapse into one factor (1 - i t m)^{-count}.
struct MeanGroup {
  double mean;
  int count;
};

std::vector<MeanGroup> group_means(std::vector<double> means) {
  std::sort(means.begin(), means.end());
  std::vector<MeanGroup> groups;
  for (double m : means) {
    if (!groups.empty() && groups.back().mean == m) {
      ++groups.back().count;
    } else {
      groups.push_back({m, 1});
    }
  }
  return groups;
}

// log|phi| and arg(phi) of prod (1 - i t m)^{-count}.
void accumulate_log_charfn(double t, const std::vector<MeanGroup>& groups, double sign,
                           double& log_mag, double& phase) {
  for (const auto& g : groups) {
    const double a = t * g.mean;
    log_mag -= 0.5 * g.count * std::log1p(a * a);
    phase += sign * g.count * std::atan(a);
  }
}

Complex grouped_charfn(double t, const std::vector<MeanGroup>& groups) {
  double log_mag = 0.0;
  double phase = 0.0;
  accumulate_log_charfn(t, groups, 1.0, log_mag, phase);
  return std::polar(std::exp(log_mag), phase);
}

std::vector<double> means_of(const ExpMixSpec& spec) {
  spec.validate();
  std::vector<double> means;
  means.reserve(spec.rates.size());
  for (double r : spec.rates) means.push_back(1.0 / r);
  return means;
}

std::vector<MeanGroup> scaled_groups(const std::vector<double>& means, double unit) {
  std::vector<double> scaled;
  scaled.reserve(means.size());
  for (double m : means) scaled.push_back(m / unit);
  return group_means(std::move(scaled));
}

constexpr double kRayleighCut = 36.0;  // u = v^2 / sigma_v^2, i.e. v = 6 sigma_v

// E_u[g(sigma_v sqrt(u))], u ~ Exp(1), truncated at kRayleighCut. `knee` is
// the u where g changes fastest (reflected energy ~ noise); it gets extra
// breakpoints since at high SNR it sits far below the fixed ones.
IntegralResult rayleigh_average(const std::function<IntegralResult(double)>& g,
                                double sigma_v, double knee, const QuadratureSpec& q) {
  if (!(sigma_v > 0.0)) throw ConfigError("sigma_v must be positive");
  double inner_err = 0.0;
  const RealFn integrand = [&](double u) {
    const IntegralResult r = g(sigma_v * std::sqrt(u));
    inner_err = std::max(inner_err, r.error);
    return r.value * std::exp(-u);
  };
  std::vector<double> breaks{0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, kRayleighCut};
  if (knee > 0.0 && std::isfinite(knee)) {
    for (double f = 1.0 / 256.0; f <= 256.0; f *= 4.0) {
      if (knee * f < 0.01) breaks.push_back(knee * f);
    }
    std::sort(breaks.begin(), breaks.end());
  }
  QuadratureSpec outer = q;
  outer.abs_tol = 10.0 * q.abs_tol;
  IntegralResult r = integrate_adaptive(integrand, breaks, outer);
  r.error += inner_err + std::exp(-kRayleighCut);
  r.value = std::clamp(r.value, 0.0, 1.0);
  return r;
}

double model_knee(const LandingModel& m, double sigma_v) {
  if (m.gamma_sq == 0.0 || m.signal_var.empty()) return 0.0;
  const double peak = *std::max_element(m.signal_var.begin(), m.signal_var.end());
  return m.noise_var / (m.gamma_sq * peak * sigma_v * sigma_v);
}

}  // namespace

void ExpMixSpec::validate() const {
  if (rates.empty()) throw ConfigError("ExpMixSpec: no components");
  for (double r : rates) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("ExpMixSpec: rates must be positive");
  }
}

double ExpMixSpec::mean() const {
  double m = 0.0;
  for (double r : rates) m += 1.0 / r;
  return m;
}

ExpMixSpec ExpMixSpec::from_means(const std::vector<double>& means) {
  ExpMixSpec spec;
  spec.rates.reserve(means.size());
  for (double m : means) spec.rates.push_back(1.0 / m);
  spec.validate();
  return spec;
}

Complex charfn_h0(double t, const ExpMixSpec& spec) {
  return grouped_charfn(t, group_means(means_of(spec)));
}

Complex charfn_h1(double t, double gamma_sq, double v, const std::vector<double>& sigma_h_sq,
                  double sigma_w_sq, int n_b) {
  if (n_b != static_cast<int>(sigma_h_sq.size())) {
    throw ArgumentError("charfn_h1: n_b does not match the variance vector");
  }
  if (!(v >= 0.0) || !(gamma_sq >= 0.0) || !(sigma_w_sq > 0.0)) {
    throw ArgumentError("charfn_h1: invalid parameters");
  }
  std::vector<double> means;
  means.reserve(sigma_h_sq.size());
  for (double s : sigma_h_sq) {
    if (!(s > 0.0)) throw ArgumentError("charfn_h1: variances must be positive");
    means.push_back(gamma_sq * v * v * s + sigma_w_sq);
  }
  return grouped_charfn(t, group_means(std::move(means)));
}

ExpMixSpec LandingModel::noise_law() const {
  return ExpMixSpec::from_means(std::vector<double>(signal_var.size(), noise_var));
}

ExpMixSpec LandingModel::signal_law(double v) const {
  std::vector<double> means;
  means.reserve(signal_var.size());
  for (double s : signal_var) means.push_back(gamma_sq * v * v * s + noise_var);
  return ExpMixSpec::from_means(means);
}

LandingModel landing_model(Scheme scheme, int n, int zeta, double gamma_mag,
                           double snr_db) {
  if (!(gamma_mag >= 0.0 && gamma_mag <= 1.0)) throw ConfigError("gamma must lie in [0, 1]");
  const SubcarrierPlan plan = build_subcarrier_plan(scheme, n, zeta);
  if (plan.null_idx_b0.size() != plan.null_idx_b1.size()) {
    throw ConfigError("landing_model: hypothesis sets differ in size");
  }
  LandingModel model;
  model.gamma_sq = gamma_mag * gamma_mag;
  model.signal_var.assign(plan.null_idx_b1.size(), 1.0);
  model.noise_var = bin_noise_energy(snr_db);
  return model;
}

IntegralResult mixture_cdf(const ExpMixSpec& spec, double x, const QuadratureSpec& q) {
  const auto means = means_of(spec);
  if (x <= 0.0) return {0.0, 0.0, 0};
  const double unit = *std::min_element(means.begin(), means.end());
  const auto groups = scaled_groups(means, unit);
  const CharFn phi = [&](double t) { return grouped_charfn(t, groups); };
  return gil_pelaez(phi, x / unit, q);
}

double pfa_of_threshold(double eta, const ExpMixSpec& noise_spec, const QuadratureSpec& q) {
  if (!(eta >= 0.0)) throw ArgumentError("pfa_of_threshold: eta must be >= 0");
  return 1.0 - mixture_cdf(noise_spec, eta, q).value;
}

double pmd_given_v(double eta, double v, const LandingModel& model, const QuadratureSpec& q) {
  if (!(eta >= 0.0) || !(v >= 0.0)) throw ArgumentError("pmd_given_v: eta, v must be >= 0");
  return mixture_cdf(model.signal_law(v), eta, q).value;
}

IntegralResult pmd_marginal(double eta, double sigma_v, const LandingModel& model,
                            const QuadratureSpec& q) {
  if (!(eta >= 0.0)) throw ArgumentError("pmd_marginal: eta must be >= 0");
  return rayleigh_average(
      [&](double v) { return mixture_cdf(model.signal_law(v), eta, q); }, sigma_v,
      model_knee(model, sigma_v), q);
}

double optimal_threshold(double pfa_target, const ExpMixSpec& noise_spec,
                         const QuadratureSpec& q) {
  if (!(pfa_target > 0.0 && pfa_target < 1.0)) {
    throw ArgumentError("optimal_threshold: pfa_target must lie in (0, 1)");
  }
  const double tol = 1e-6 * pfa_target;
  double lo = 0.0;
  double hi = noise_spec.mean();
  int guard = 0;
  while (pfa_of_threshold(hi, noise_spec, q) > pfa_target) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 200) throw NumericalError("optimal_threshold: no bracket found", hi);
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double pfa = pfa_of_threshold(mid, noise_spec, q);
    if (std::abs(pfa - pfa_target) <= tol) return mid;
    if (pfa > pfa_target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  throw NumericalError("optimal_threshold: bisection did not reach the target", hi - lo);
}

namespace {

// CDF at 0 of ts0 - ts1 (independent mixtures), in units of the noise mean.
IntegralResult difference_cdf_at_zero(const std::vector<double>& means0,
                                      const std::vector<double>& means1, double unit,
                                      const QuadratureSpec& q) {
  const auto g0 = scaled_groups(means0, unit);
  const auto g1 = scaled_groups(means1, unit);
  const CharFn phi = [&](double t) {
    double log_mag = 0.0;
    double phase = 0.0;
    accumulate_log_charfn(t, g0, 1.0, log_mag, phase);
    accumulate_log_charfn(t, g1, -1.0, log_mag, phase);
    return std::polar(std::exp(log_mag), phase);
  };
  return gil_pelaez(phi, 0.0, q);
}

std::vector<double> signal_means(const LandingModel& m, double v) {
  std::vector<double> means;
  for (double s : m.signal_var) means.push_back(m.gamma_sq * v * v * s + m.noise_var);
  return means;
}

IntegralResult fsk_error_given_v_detail(double v, const LandingModel& set0,
                                        const LandingModel& set1, const QuadratureSpec& q) {
  const double unit = std::min(set0.noise_var, set1.noise_var);
  const std::vector<double> noise0(set0.signal_var.size(), set0.noise_var);
  const std::vector<double> noise1(set1.signal_var.size(), set1.noise_var);
  // b = 0: set0 carries the reflection; error iff ts0 < ts1.
  const IntegralResult e0 = difference_cdf_at_zero(signal_means(set0, v), noise1, unit, q);
  // b = 1: set1 carries it; error iff ts0 >= ts1.
  const IntegralResult e1 = difference_cdf_at_zero(noise0, signal_means(set1, v), unit, q);
  IntegralResult r;
  r.value = std::clamp(0.5 * e0.value + 0.5 * (1.0 - e1.value), 0.0, 1.0);
  r.error = 0.5 * (e0.error + e1.error);
  r.evals = e0.evals + e1.evals;
  return r;
}

}  // namespace

double fsk_error_given_v(double v, const LandingModel& set0, const LandingModel& set1,
                         const QuadratureSpec& q) {
  return fsk_error_given_v_detail(v, set0, set1, q).value;
}

IntegralResult fsk_error_prob(const FskParams& p, const QuadratureSpec& q) {
  if (p.scheme == Scheme::kOok) throw ConfigError("fsk_error_prob: scheme must be FSK");
  const LandingModel model = landing_model(p.scheme, p.n, p.zeta, p.gamma_mag, p.snr_db);
  return rayleigh_average(
      [&](double v) { return fsk_error_given_v_detail(v, model, model, q); }, p.sigma_v,
      model_knee(model, p.sigma_v), q);
}

bool TheoryCurve::any_failed() const {
  return std::any_of(failed.begin(), failed.end(), [](bool f) { return f; });
}

TheoryCurve theory_sweep(TheoryKind kind, const std::vector<double>& snr_grid,
                         const TheoryParams& params, const QuadratureSpec& q) {
  if (snr_grid.empty()) throw ConfigError("theory_sweep: empty SNR grid");
  for (std::size_t i = 1; i < snr_grid.size(); ++i) {
    if (!(snr_grid[i] > snr_grid[i - 1])) throw ConfigError("theory_sweep: grid must increase");
  }
  if (kind == TheoryKind::kOokPmd && params.scheme != Scheme::kOok) {
    throw ConfigError("theory_sweep: PMD curves need the OOK scheme");
  }
  if (kind == TheoryKind::kFskBer && params.scheme == Scheme::kOok) {
    throw ConfigError("theory_sweep: BER curves need an FSK scheme");
  }
  TheoryCurve curve;
  curve.kind = kind;
  curve.params = params;
  for (double snr : snr_grid) {
    curve.abscissa.push_back(snr);
    try {
      IntegralResult r;
      if (kind == TheoryKind::kOokPmd) {
        const LandingModel model =
            landing_model(params.scheme, params.n, params.zeta, params.gamma_mag, snr);
        const double eta = optimal_threshold(params.pfa_target, model.noise_law(), q);
        r = pmd_marginal(eta, params.sigma_v, model, q);
      } else {
        r = fsk_error_prob({params.scheme, params.n, params.zeta, params.gamma_mag,
                            params.sigma_v, snr},
                           q);
      }
      curve.values.push_back(r.value);
      curve.error_estimate.push_back(r.error);
      curve.failed.push_back(false);
      curve.failure.emplace_back();
    } catch (const NumericalError& e) {
      curve.values.push_back(std::numeric_limits<double>::quiet_NaN());
      curve.error_estimate.push_back(e.error_estimate());
      curve.failed.push_back(true);
      curve.failure.emplace_back(e.what());
    }
  }
  return curve;
}

}  // namespace nullshift
