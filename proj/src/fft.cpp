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

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace nullshift::detail {
namespace {

// fftw_plan_* is not thread-safe; fftw_execute_dft on an existing plan is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find({n, sign});
    if (it != plans_.end()) return it->second;
    ComplexVector a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(a.data()),
        reinterpret_cast<fftw_complex*>(b.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw ArgumentError("FFTW failed to plan transform");
    plans_.emplace(std::make_pair(n, sign), plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(std::span<const Complex> in, std::span<Complex> out, int sign) {
  if (in.size() != out.size() || in.empty()) {
    throw ArgumentError("dft: length mismatch");
  }
  fftw_plan plan = cache().get(static_cast<int>(in.size()), sign);
  // FFTW's new-array execute takes non-const input but does not write to it
  // for out-of-place plans.
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void dft_forward(std::span<const Complex> in, std::span<Complex> out) {
  run(in, out, FFTW_FORWARD);
}

void dft_backward(std::span<const Complex> in, std::span<Complex> out) {
  run(in, out, FFTW_BACKWARD);
}

}  // namespace nullshift::detail
