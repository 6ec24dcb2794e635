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

// CRC-5 with generator x^5 + x^3 + 1, bits processed MSB first.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nullshift {

using Bits = std::vector<std::uint8_t>;

inline constexpr unsigned kCrc5Poly = 0b01001;     // x^5 + x^3 + 1 without the x^5 term
inline constexpr unsigned kCrc5Gen2Preset = 0b01001;

struct Frame {
  Bits payload;
  Bits crc;  // 5 bits, MSB first

  Bits bits() const;  // payload followed by crc
  static Frame split(std::span<const std::uint8_t> bits, std::size_t payload_len);
};

/// Register contents after shifting `bits` through from `preset`.
unsigned crc5_register(std::span<const std::uint8_t> bits, unsigned preset = 0);

/// Throws ArgumentError for an empty payload or non-binary entries.
Frame crc5_encode(std::span<const std::uint8_t> payload, unsigned preset = 0);

/// True iff payload || crc leaves a zero register.
bool crc5_check(const Frame& frame, unsigned preset = 0);

std::string to_bitstring(std::span<const std::uint8_t> bits);

}  // namespace nullshift
