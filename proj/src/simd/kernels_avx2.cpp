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

// Compiled with -mavx2 -mfma. Nothing in here may run before dispatch.cpp has
// confirmed CPU support.

#include <immintrin.h>

#include "nullshift/simd/kernels.hpp"

namespace nullshift::simd {
namespace {

// Two interleaved complex values per register: [re0, im0, re1, im1].
inline __m256d load2(const Complex* p) {
  return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}

inline void store2(Complex* p, __m256d v) {
  _mm256_storeu_pd(reinterpret_cast<double*>(p), v);
}

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_swap = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_swap, b_im));
}

// Same as cmul with b pre-split into broadcast real / imaginary parts.
inline __m256d cmul_split(__m256d a, __m256d b_re, __m256d b_im) {
  const __m256d a_swap = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_swap, b_im));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void multiply_scaled_avx2(const Complex* a, const Complex* b, Complex scale,
                          Complex* out, std::size_t n) {
  const __m256d s_re = _mm256_set1_pd(scale.real());
  const __m256d s_im = _mm256_set1_pd(scale.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d p = cmul(load2(a + i), load2(b + i));
    store2(out + i, cmul_split(p, s_re, s_im));
  }
  for (; i < n; ++i) {
    const double pr = a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    const double pi = a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    out[i] = Complex(scale.real() * pr - scale.imag() * pi,
                     scale.real() * pi + scale.imag() * pr);
  }
}

void accumulate_scaled_avx2(Complex h, const Complex* x, Complex* out,
                            std::size_t n) {
  const __m256d h_re = _mm256_set1_pd(h.real());
  const __m256d h_im = _mm256_set1_pd(h.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d p = cmul_split(load2(x + i), h_re, h_im);
    store2(out + i, _mm256_add_pd(load2(out + i), p));
  }
  for (; i < n; ++i) {
    out[i] += Complex(h.real() * x[i].real() - h.imag() * x[i].imag(),
                      h.real() * x[i].imag() + h.imag() * x[i].real());
  }
}

double energy_avx2(const Complex* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = load2(x + i);
    const __m256d v1 = load2(x + i + 2);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

double gathered_energy_avx2(const Complex* x, const std::int32_t* idx,
                            std::size_t count) {
  const double* base = reinterpret_cast<const double*>(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const __m256d v0 = _mm256_set_m128d(_mm_loadu_pd(base + 2 * idx[j + 1]),
                                        _mm_loadu_pd(base + 2 * idx[j]));
    const __m256d v1 = _mm256_set_m128d(_mm_loadu_pd(base + 2 * idx[j + 3]),
                                        _mm_loadu_pd(base + 2 * idx[j + 2]));
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; j < count; ++j) {
    const Complex v = x[idx[j]];
    acc += v.real() * v.real() + v.imag() * v.imag();
  }
  return acc;
}

}  // namespace

const Kernels& avx2_kernel_table() {
  static const Kernels table{
      "avx2",
      &multiply_scaled_avx2,
      &accumulate_scaled_avx2,
      &energy_avx2,
      &gathered_energy_avx2,
  };
  return table;
}

}  // namespace nullshift::simd
