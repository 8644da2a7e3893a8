// Copyright 2026 The x2static Authors. All rights reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "x2s/half.hpp"

#include <bit>
#include <cstdint>

namespace x2s {

float half_to_float(std::uint16_t h) {
  const std::uint32_t sign = static_cast<std::uint32_t>(h & 0x8000u) << 16;
  const std::uint32_t exponent = (h >> 10) & 0x1fu;
  const std::uint32_t mantissa = h & 0x3ffu;
  if (exponent == 0) {
    // zero or subnormal: mantissa * 2^-24 is exact in binary32
    const float magnitude = static_cast<float>(mantissa) * 0x1p-24f;
    return std::bit_cast<float>(std::bit_cast<std::uint32_t>(magnitude) | sign);
  }
  if (exponent == 31) {
    const std::uint32_t quiet = mantissa != 0 ? 0x400000u : 0u;
    return std::bit_cast<float>(sign | 0x7f800000u | quiet | (mantissa << 13));
  }
  return std::bit_cast<float>(sign | ((exponent + 112u) << 23) |
                              (mantissa << 13));
}

std::uint16_t float_to_half(float f) {
  std::uint32_t bits = std::bit_cast<std::uint32_t>(f);
  const std::uint32_t sign = bits & 0x80000000u;
  bits ^= sign;
  std::uint32_t out;
  constexpr std::uint32_t kInfBits = 0x7f800000u;
  constexpr std::uint32_t kHalfOverflow = (127u + 16u) << 23;
  if (bits >= kHalfOverflow) {
    out = bits > kInfBits ? (0x7e00u | ((bits >> 13) & 0x3ffu)) : 0x7c00u;
  } else if (bits < (113u << 23)) {
    // Result is subnormal or zero. Adding the magic constant lets the FPU do
    // the round-to-nearest-even shift.
    constexpr std::uint32_t kMagicBits = ((127u - 15u) + (23u - 10u) + 1u) << 23;
    const float magic = std::bit_cast<float>(kMagicBits);
    const float shifted = std::bit_cast<float>(bits) + magic;
    out = std::bit_cast<std::uint32_t>(shifted) - kMagicBits;
  } else {
    const std::uint32_t odd = (bits >> 13) & 1u;
    bits += (static_cast<std::uint32_t>(15 - 127) << 23) + 0xfffu;
    bits += odd;
    out = bits >> 13;
  }
  return static_cast<std::uint16_t>(out | (sign >> 16));
}

}  // namespace x2s
