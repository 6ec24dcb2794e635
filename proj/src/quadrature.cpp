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

#include "nullshift/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace nullshift {

namespace {

struct Panel {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

constexpr int kNodes = 15;

// QUADPACK-style estimate: |K15 - G7| rescaled by the integrand's variation.
Panel gk15(const RealFn& f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  static const auto& xk = Kronrod::abscissa();
  static const auto& wk = Kronrod::weights();
  static const auto& wg = Gauss::weights();

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<double, kNodes> fv{};
  fv[0] = f(c);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    fv[2 * i - 1] = f(c - h * xk[i]);
    fv[2 * i] = f(c + h * xk[i]);
  }
  double kronrod = wk[0] * fv[0];
  double gauss = wg[0] * fv[0];
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double pair = fv[2 * i - 1] + fv[2 * i];
    kronrod += wk[i] * pair;
    if (i % 2 == 0) gauss += wg[i / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = wk[0] * std::abs(fv[0] - mean);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    asc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
  }
  kronrod *= h;
  gauss *= h;
  asc *= std::abs(h);

  double err = std::abs(kronrod - gauss);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod);
  err = std::max(err, roundoff);
  if (!std::isfinite(kronrod)) throw NumericalError("integrand is not finite", err);
  return {a, b, kronrod, err};
}

}  // namespace

IntegralResult integrate_adaptive(const RealFn& f, std::span<const double> breakpoints,
                                  const QuadratureSpec& q) {
  if (breakpoints.size() < 2) throw ArgumentError("integrate_adaptive: need two breakpoints");
  if (!(q.abs_tol > 0.0) || !(q.rel_tol > 0.0)) throw ConfigError("tolerances must be positive");

  std::priority_queue<Panel> heap;
  IntegralResult res;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1])) {
      throw ArgumentError("integrate_adaptive: breakpoints must increase");
    }
    const Panel p = gk15(f, breakpoints[i], breakpoints[i + 1]);
    res.evals += kNodes;
    value += p.value;
    error += p.error;
    heap.push(p);
  }

  while (error > std::max(q.abs_tol, q.rel_tol * std::abs(value))) {
    if (res.evals + 2 * kNodes > q.max_evals) {
      throw NumericalError("adaptive quadrature hit the evaluation cap (error estimate " +
                               std::to_string(error) + ")",
                           error);
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      throw NumericalError("adaptive quadrature cannot split further", error);
    }
    const Panel left = gk15(f, worst.a, mid);
    const Panel right = gk15(f, mid, worst.b);
    res.evals += 2 * kNodes;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  res.value = value;
  res.error = error;
  return res;
}

IntegralResult integrate_adaptive(const RealFn& f, double a, double b,
                                  const QuadratureSpec& q) {
  const std::array<double, 2> ends{a, b};
  return integrate_adaptive(f, ends, q);
}

namespace {

// Tail of the inversion integral past T. With g(t) = phi(t)/t, one
// integration by parts gives the leading term g(T) e^{-iTx} / (ix); the
// remainder is bounded by about 2|g'(T)|/x^2. Without oscillation (x = 0)
// the tail is bounded by |phi(T)| for 1/t decay, so fall back to that.
Complex tail_leading_term(const CharFn& phi, double t, double x) {
  if (x == 0.0) return {};
  return phi(t) / t * std::polar(1.0, -t * x) / Complex(0.0, x);
}

double tail_bound(const CharFn& phi, double t, double x) {
  const double plain = std::abs(phi(t));
  if (x == 0.0) return plain;
  const double h = 1e-3 * t;
  const Complex dg = (phi(t + h) / (t + h) - phi(t - h) / (t - h)) / (2.0 * h);
  return std::min(plain, 2.0 * std::abs(dg) / (x * x));
}

double pick_truncation(const CharFn& phi, double x, const QuadratureSpec& q,
                       double scale) {
  if (q.truncation > 0.0) return q.truncation;
  double t = 1.0 / scale;
  for (int i = 0; i < 200; ++i, t *= 2.0) {
    if (tail_bound(phi, t, x) < q.abs_tol / 10.0) return t;
  }
  throw NumericalError("characteristic function does not decay; no truncation point found",
                       std::abs(phi(t)));
}

}  // namespace

IntegralResult gil_pelaez(const CharFn& phi, double x, const QuadratureSpec& q,
                          double scale) {
  if (!std::isfinite(x)) throw ArgumentError("gil_pelaez: x must be finite");
  if (!(scale > 0.0)) throw ArgumentError("gil_pelaez: scale must be positive");
  const double upper = pick_truncation(phi, x, q, scale);

  // Geometric partition down from T towards 0 (features live near t ~ scale),
  // then no panel wider than half a period of e^{-itx}.
  std::vector<double> breaks{0.0};
  std::vector<double> geometric;
  // Keep halving until phi is near 1 so components with means far above
  // `scale` still get resolved.
  for (double t = upper; t > 1e-4 / scale || std::abs(1.0 - phi(t)) > 1e-3; t *= 0.5) {
    geometric.push_back(t);
    if (geometric.size() > 2000) {
      throw NumericalError("gil_pelaez: characteristic function never approaches 1", 1.0);
    }
  }
  std::reverse(geometric.begin(), geometric.end());
  const double half_period = x != 0.0 ? kPi / std::abs(x) : upper;
  const auto max_panels = static_cast<double>(q.max_evals) / kNodes;
  for (double t : geometric) {
    const double gap = t - breaks.back();
    const double pieces = std::ceil(gap / half_period);
    if (pieces > max_panels) {
      throw NumericalError("gil_pelaez: oscillation too fast for the evaluation cap", 1.0);
    }
    for (int k = 1; k < static_cast<int>(pieces); ++k) {
      breaks.push_back(breaks.back() + gap / pieces);
    }
    breaks.push_back(t);
  }

  const RealFn integrand = [&](double t) {
    // Nodes never sit on t = 0; the integrand has a finite limit there.
    const Complex z = phi(t) * std::polar(1.0, -t * x);
    return z.imag() / t;
  };
  IntegralResult r = integrate_adaptive(integrand, breaks, q);
  r.value += tail_leading_term(phi, upper, x).imag();
  r.error += tail_bound(phi, upper, x);
  r.value = std::clamp(0.5 - r.value / kPi, 0.0, 1.0);
  r.error /= kPi;
  return r;
}

double gil_pelaez_cdf(const CharFn& phi, double x, const QuadratureSpec& q) {
  return gil_pelaez(phi, x, q).value;
}

}  // namespace nullshift
