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

#include <cmath>

#include "x2s/half.hpp"
#include "x2s/simd.hpp"

namespace x2s::simd {
namespace {

float dot_scalar(const float* a, const float* b, std::size_t n) {
  float sum = 0.0f;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_scalar(float a, const float* x, float* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_f64_scalar(double a, const float* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * static_cast<double>(x[i]);
}

void accumulate_f64_scalar(const float* x, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += static_cast<double>(x[i]);
}

void adam_update_scalar(float* param, float* m, float* v, const float* grad,
                        std::size_t n, const AdamCoeffs& c) {
  for (std::size_t i = 0; i < n; ++i) {
    const float g = grad[i];
    m[i] = c.beta1 * m[i] + c.one_minus_beta1 * g;
    v[i] = c.beta2 * v[i] + c.one_minus_beta2 * (g * g);
    const float m_hat = m[i] / c.bias1;
    const float v_hat = v[i] / c.bias2;
    param[i] = param[i] - c.lr * m_hat / (std::sqrt(v_hat) + c.eps);
  }
}

void half_to_float_scalar(const std::uint16_t* src, float* dst,
                          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = x2s::half_to_float(src[i]);
}

void float_to_half_scalar(const float* src, std::uint16_t* dst,
                          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = x2s::float_to_half(src[i]);
}

}  // namespace

namespace detail {
const Kernels kScalar = {
    Level::scalar,         dot_scalar,         axpy_scalar,
    axpy_f64_scalar,       accumulate_f64_scalar, adam_update_scalar,
    half_to_float_scalar,  float_to_half_scalar,
};
}  // namespace detail

}  // namespace x2s::simd
