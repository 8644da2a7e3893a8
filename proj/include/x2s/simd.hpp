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

#pragma once

// Runtime-dispatched inner loops. Every kernel has a scalar reference
// implementation; vector variants are selected once per process from CPUID
// (x86) or compile-time NEON availability (aarch64). Setting X2S_SIMD to
// "scalar" forces the reference path.
//
// Element-wise kernels (axpy, accumulate, adam, half conversion) are
// bit-identical across levels. Reductions (dot) may differ in the last bits
// because the summation order differs.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace x2s::simd {

enum class Level { scalar, avx2, neon };

std::string_view level_name(Level level);

/// Per-call Adam constants. The bias corrections are 1 - beta^t for the row's
/// own step count t.
struct AdamCoeffs {
  float lr;
  float beta1;
  float beta2;
  float one_minus_beta1;
  float one_minus_beta2;
  float bias1;
  float bias2;
  float eps;
};

struct Kernels {
  Level level;
  float (*dot)(const float* a, const float* b, std::size_t n);
  // y += a * x
  void (*axpy)(float a, const float* x, float* y, std::size_t n);
  // y += a * x with the product and sum in double
  void (*axpy_f64)(double a, const float* x, double* y, std::size_t n);
  // acc += x in double
  void (*accumulate_f64)(const float* x, double* acc, std::size_t n);
  void (*adam_update)(float* param, float* m, float* v, const float* grad,
                      std::size_t n, const AdamCoeffs& c);
  void (*half_to_float)(const std::uint16_t* src, float* dst, std::size_t n);
  void (*float_to_half)(const float* src, std::uint16_t* dst, std::size_t n);
};

/// The table used by the library. Resolved on first call.
const Kernels& active();

/// Table for a specific level, or nullptr when this build or CPU lacks it.
const Kernels* kernels_for(Level level);

/// Every level usable on this machine, scalar first.
std::vector<Level> available_levels();

namespace detail {
extern const Kernels kScalar;
const Kernels* avx2_table();
const Kernels* neon_table();
}  // namespace detail

}  // namespace x2s::simd
