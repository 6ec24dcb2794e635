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

#include <cstdlib>
#include <string_view>

#include "nullshift/simd/kernels.hpp"

namespace nullshift::simd {

#if defined(NULLSHIFT_HAVE_AVX2)
const Kernels& avx2_kernel_table();  // kernels_avx2.cpp
#endif

const Kernels* avx2_kernels() {
#if defined(NULLSHIFT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& active() {
  static const Kernels& chosen = []() -> const Kernels& {
    const char* env = std::getenv("NULLSHIFT_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") {
      return scalar_kernels();
    }
    if (const Kernels* k = avx2_kernels()) return *k;
    return scalar_kernels();
  }();
  return chosen;
}

void multiply_scaled(std::span<const Complex> a, std::span<const Complex> b,
                     Complex scale, std::span<Complex> out) {
  if (a.size() != b.size() || a.size() != out.size()) {
    throw ArgumentError("multiply_scaled: length mismatch");
  }
  active().multiply_scaled(a.data(), b.data(), scale, out.data(), a.size());
}

void accumulate_scaled(Complex h, std::span<const Complex> x,
                       std::span<Complex> out) {
  if (x.size() != out.size()) {
    throw ArgumentError("accumulate_scaled: length mismatch");
  }
  active().accumulate_scaled(h, x.data(), out.data(), x.size());
}

double energy(std::span<const Complex> x) {
  return active().energy(x.data(), x.size());
}

double gathered_energy(std::span<const Complex> x,
                       std::span<const std::int32_t> idx) {
  for (const std::int32_t k : idx) {
    if (k < 0 || static_cast<std::size_t>(k) >= x.size()) {
      throw ArgumentError("gathered_energy: index out of range");
    }
  }
  return active().gathered_energy(x.data(), idx.data(), idx.size());
}

}  // namespace nullshift::simd
