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

#include "nullshift/simd/kernels.hpp"

namespace nullshift::simd {
namespace {

// Written out on real/imag parts so the reference does not depend on the
// library's complex multiply (which adds NaN recovery branches).
void multiply_scaled_ref(const Complex* a, const Complex* b, Complex scale,
                         Complex* out, std::size_t n) {
  const double sr = scale.real();
  const double si = scale.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    const double pr = ar * br - ai * bi;
    const double pi = ar * bi + ai * br;
    out[i] = Complex(sr * pr - si * pi, sr * pi + si * pr);
  }
}

void accumulate_scaled_ref(Complex h, const Complex* x, Complex* out,
                           std::size_t n) {
  const double hr = h.real(), hi = h.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    out[i] += Complex(hr * xr - hi * xi, hr * xi + hi * xr);
  }
}

double energy_ref(const Complex* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

double gathered_energy_ref(const Complex* x, const std::int32_t* idx,
                           std::size_t count) {
  double acc = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    const Complex v = x[idx[j]];
    acc += v.real() * v.real() + v.imag() * v.imag();
  }
  return acc;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels table{
      "scalar",
      &multiply_scaled_ref,
      &accumulate_scaled_ref,
      &energy_ref,
      &gathered_energy_ref,
  };
  return table;
}

}  // namespace nullshift::simd
