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

#include <span>

#include "nullshift/types.hpp"

namespace nullshift::detail {

// Unnormalized transforms of length in.size(); `in` and `out` must not
// overlap. Plans are created once per length and shared across threads.
void dft_forward(std::span<const Complex> in, std::span<Complex> out);
void dft_backward(std::span<const Complex> in, std::span<Complex> out);

}  // namespace nullshift::detail
