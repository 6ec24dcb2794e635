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

#include <doctest.h>

#include <cstdlib>
#include <random>
#include <string_view>
#include <vector>

#include "nullshift/simd/kernels.hpp"

using namespace nullshift;

namespace {

ComplexVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Length sweep covers empty input, every tail length and a few block sizes.
const std::vector<std::size_t> kLengths{0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 63, 64, 72, 576};

}  // namespace

TEST_CASE("active table honours the scalar override") {
  const char* env = std::getenv("NULLSHIFT_SIMD");
  if (env != nullptr && std::string_view(env) == "scalar") {
    CHECK(simd::active().name == "scalar");
  } else if (simd::avx2_kernels() != nullptr) {
    CHECK(simd::active().name == "avx2");
  }
}

TEST_CASE("reference kernels against naive loops") {
  std::mt19937_64 rng(3);
  const auto a = random_vector(37, rng);
  const auto b = random_vector(37, rng);
  const Complex s(0.3, -1.2);
  ComplexVector out(37);
  simd::scalar_kernels().multiply_scaled(a.data(), b.data(), s, out.data(), 37);
  double e = 0.0;
  for (std::size_t i = 0; i < 37; ++i) {
    CHECK(std::abs(out[i] - s * a[i] * b[i]) < 1e-14);
    e += std::norm(a[i]);
  }
  CHECK(simd::scalar_kernels().energy(a.data(), 37) == doctest::Approx(e).epsilon(1e-14));
}

TEST_CASE("AVX2 kernels match the reference within rounding") {
  const simd::Kernels* fast = simd::avx2_kernels();
  if (fast == nullptr) {
    MESSAGE("AVX2/FMA not available; equivalence not exercised");
    return;
  }
  const simd::Kernels& ref = simd::scalar_kernels();
  std::mt19937_64 rng(11);
  for (std::size_t n : kLengths) {
    CAPTURE(n);
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);
    const Complex scale(0.7, 0.4);

    ComplexVector r1(n), r2(n);
    ref.multiply_scaled(a.data(), b.data(), scale, r1.data(), n);
    fast->multiply_scaled(a.data(), b.data(), scale, r2.data(), n);
    CHECK(max_abs_diff(r1, r2) < 1e-13);

    // In-place use (out aliases a).
    ComplexVector in_place = a;
    fast->multiply_scaled(in_place.data(), b.data(), scale, in_place.data(), n);
    CHECK(max_abs_diff(r1, in_place) < 1e-13);

    ComplexVector acc1 = b, acc2 = b;
    ref.accumulate_scaled(scale, a.data(), acc1.data(), n);
    fast->accumulate_scaled(scale, a.data(), acc2.data(), n);
    CHECK(max_abs_diff(acc1, acc2) < 1e-13);

    const double e1 = ref.energy(a.data(), n);
    const double e2 = fast->energy(a.data(), n);
    CHECK(std::abs(e1 - e2) <= 1e-13 * std::max(1.0, e1));

    std::vector<std::int32_t> idx;
    for (std::size_t k = 0; k < n; k += 2) idx.push_back(static_cast<std::int32_t>(n - 1 - k));
    const double g1 = ref.gathered_energy(a.data(), idx.data(), idx.size());
    const double g2 = fast->gathered_energy(a.data(), idx.data(), idx.size());
    CHECK(std::abs(g1 - g2) <= 1e-13 * std::max(1.0, g1));
  }
}

TEST_CASE("span wrappers validate their arguments") {
  ComplexVector a(4), b(5), out(4);
  CHECK_THROWS_AS(simd::multiply_scaled(a, b, 1.0, out), ArgumentError);
  CHECK_THROWS_AS(simd::accumulate_scaled(1.0, b, out), ArgumentError);
  const std::vector<std::int32_t> bad{0, 4};
  CHECK_THROWS_AS(simd::gathered_energy(a, bad), ArgumentError);
  const std::vector<std::int32_t> neg{-1};
  CHECK_THROWS_AS(simd::gathered_energy(a, neg), ArgumentError);
}
