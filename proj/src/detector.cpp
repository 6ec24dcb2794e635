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

#include "nullshift/detector.hpp"

#include "nullshift/simd/kernels.hpp"

namespace nullshift {

namespace {

void require_grid(const FreqGrid& y, const SubcarrierPlan& plan) {
  if (y.n() != static_cast<std::size_t>(plan.n)) {
    throw ArgumentError("detector: grid size does not match plan");
  }
}

}  // namespace

double ook_test_statistic(const FreqGrid& y, const SubcarrierPlan& plan) {
  if (plan.scheme != Scheme::kOok) throw ConfigError("ook_test_statistic: plan is not OOK");
  require_grid(y, plan);
  return simd::gathered_energy(y.values, plan.null_idx_b1);
}

int ook_detect(double r, double eta) {
  if (!(eta >= 0.0)) throw ArgumentError("ook_detect: threshold must be >= 0");
  return r > eta ? 1 : 0;
}

std::pair<double, double> fsk_metrics(const FreqGrid& y, const SubcarrierPlan& plan) {
  if (plan.scheme == Scheme::kOok) throw ConfigError("fsk_metrics: plan is OOK");
  require_grid(y, plan);
  return {simd::gathered_energy(y.values, plan.null_idx_b0),
          simd::gathered_energy(y.values, plan.null_idx_b1)};
}

int fsk_detect(double ts0, double ts1) { return ts0 < ts1 ? 1 : 0; }

std::vector<int> primary_detect(const FreqGrid& y, const SubcarrierPlan& plan,
                                std::span<const Complex> h_direct) {
  require_grid(y, plan);
  if (h_direct.size() != static_cast<std::size_t>(plan.n)) {
    throw ArgumentError("primary_detect: need one channel response per bin");
  }
  std::vector<int> bits;
  bits.reserve(plan.data_idx.size());
  for (auto k : plan.data_idx) {
    const Complex h = h_direct[static_cast<std::size_t>(k)];
    if (h == Complex{}) {
      bits.push_back(kErasure);
      continue;
    }
    // Re{Y/H} has the sign of Re{Y conj(H)}; no division needed.
    const double metric = std::real(y.values[static_cast<std::size_t>(k)] * std::conj(h));
    bits.push_back(metric >= 0.0 ? 0 : 1);
  }
  return bits;
}

std::size_t count_bit_errors(std::span<const int> decided, std::span<const int> truth) {
  if (decided.size() != truth.size()) throw ArgumentError("count_bit_errors: length mismatch");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < decided.size(); ++i) {
    if (decided[i] != truth[i]) ++errors;
  }
  return errors;
}

}  // namespace nullshift
