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

#include "nullshift/crc.hpp"

#include "nullshift/types.hpp"

namespace nullshift {

Bits Frame::bits() const {
  Bits out = payload;
  out.insert(out.end(), crc.begin(), crc.end());
  return out;
}

Frame Frame::split(std::span<const std::uint8_t> bits, std::size_t payload_len) {
  if (bits.size() != payload_len + 5) throw ArgumentError("Frame::split: wrong frame length");
  Frame f;
  f.payload.assign(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(payload_len));
  f.crc.assign(bits.begin() + static_cast<std::ptrdiff_t>(payload_len), bits.end());
  return f;
}

unsigned crc5_register(std::span<const std::uint8_t> bits, unsigned preset) {
  if (preset > 0x1f) throw ArgumentError("crc5: preset must fit in 5 bits");
  unsigned reg = preset;
  for (auto b : bits) {
    if (b > 1) throw ArgumentError("crc5: bits must be 0 or 1");
    const unsigned feedback = b ^ ((reg >> 4) & 1u);
    reg = (reg << 1) & 0x1fu;
    if (feedback) reg ^= kCrc5Poly;
  }
  return reg;
}

Frame crc5_encode(std::span<const std::uint8_t> payload, unsigned preset) {
  if (payload.empty()) throw ArgumentError("crc5_encode: empty payload");
  const unsigned reg = crc5_register(payload, preset);
  Frame f;
  f.payload.assign(payload.begin(), payload.end());
  for (int i = 4; i >= 0; --i) f.crc.push_back(static_cast<std::uint8_t>((reg >> i) & 1u));
  return f;
}

bool crc5_check(const Frame& frame, unsigned preset) {
  if (frame.crc.size() != 5) return false;
  return crc5_register(frame.bits(), preset) == 0;
}

std::string to_bitstring(std::span<const std::uint8_t> bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace nullshift
