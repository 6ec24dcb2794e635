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

// Data-parallel inner loops over interleaved complex<double> buffers.
//
// Every kernel has a scalar reference implementation. An AVX2/FMA variant is
// compiled on x86-64 and selected at runtime when the CPU supports it. The
// environment variable NULLSHIFT_SIMD=scalar forces the reference path.
//
// Variants are not bit-identical (FMA contraction and reduction order differ);
// tests/test_simd.cpp bounds the difference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "nullshift/types.hpp"

namespace nullshift::simd {

struct Kernels {
  std::string_view name;

  /// out[i] = scale * a[i] * b[i]. `out` may alias `a` or `b`.
  void (*multiply_scaled)(const Complex* a, const Complex* b, Complex scale,
                          Complex* out, std::size_t n);

  /// out[i] += h * x[i]. No aliasing between x and out.
  void (*accumulate_scaled)(Complex h, const Complex* x, Complex* out,
                            std::size_t n);

  /// sum_i |x[i]|^2
  double (*energy)(const Complex* x, std::size_t n);

  /// sum_j |x[idx[j]]|^2; indices must be in range.
  double (*gathered_energy)(const Complex* x, const std::int32_t* idx,
                            std::size_t count);
};

/// Always available.
const Kernels& scalar_kernels();

/// nullptr when not compiled in or not supported by the running CPU.
const Kernels* avx2_kernels();

/// The kernel table used by the library. Chosen once, on first call.
const Kernels& active();

// Span conveniences over active().

void multiply_scaled(std::span<const Complex> a, std::span<const Complex> b,
                     Complex scale, std::span<Complex> out);
void accumulate_scaled(Complex h, std::span<const Complex> x,
                       std::span<Complex> out);
double energy(std::span<const Complex> x);
double gathered_energy(std::span<const Complex> x,
                       std::span<const std::int32_t> idx);

}  // namespace nullshift::simd
