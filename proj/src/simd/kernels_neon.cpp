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
#include "x2s/simd.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

#include <cmath>

namespace x2s::simd {
namespace {

float dot_neon(const float* a, const float* b, std::size_t n) {
  float32x4_t acc0 = vdupq_n_f32(0.0f);
  float32x4_t acc1 = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = vfmaq_f32(acc0, vld1q_f32(a + i), vld1q_f32(b + i));
    acc1 = vfmaq_f32(acc1, vld1q_f32(a + i + 4), vld1q_f32(b + i + 4));
  }
  float sum = vaddvq_f32(vaddq_f32(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_neon(float a, const float* x, float* y, std::size_t n) {
  const float32x4_t va = vdupq_n_f32(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    vst1q_f32(y + i, vaddq_f32(vld1q_f32(y + i), vmulq_f32(va, vld1q_f32(x + i))));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpy_f64_neon(double a, const float* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t xf = vld1q_f32(x + i);
    const float64x2_t lo = vcvt_f64_f32(vget_low_f32(xf));
    const float64x2_t hi = vcvt_high_f64_f32(xf);
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, lo)));
    vst1q_f64(y + i + 2, vaddq_f64(vld1q_f64(y + i + 2), vmulq_f64(va, hi)));
  }
  for (; i < n; ++i) y[i] += a * static_cast<double>(x[i]);
}

void accumulate_f64_neon(const float* x, double* acc, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t xf = vld1q_f32(x + i);
    vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vcvt_f64_f32(vget_low_f32(xf))));
    vst1q_f64(acc + i + 2, vaddq_f64(vld1q_f64(acc + i + 2), vcvt_high_f64_f32(xf)));
  }
  for (; i < n; ++i) acc[i] += static_cast<double>(x[i]);
}

void adam_update_neon(float* param, float* m, float* v, const float* grad,
                      std::size_t n, const AdamCoeffs& c) {
  const float32x4_t b1 = vdupq_n_f32(c.beta1);
  const float32x4_t b2 = vdupq_n_f32(c.beta2);
  const float32x4_t omb1 = vdupq_n_f32(c.one_minus_beta1);
  const float32x4_t omb2 = vdupq_n_f32(c.one_minus_beta2);
  const float32x4_t bias1 = vdupq_n_f32(c.bias1);
  const float32x4_t bias2 = vdupq_n_f32(c.bias2);
  const float32x4_t lr = vdupq_n_f32(c.lr);
  const float32x4_t eps = vdupq_n_f32(c.eps);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t g = vld1q_f32(grad + i);
    const float32x4_t mi =
        vaddq_f32(vmulq_f32(b1, vld1q_f32(m + i)), vmulq_f32(omb1, g));
    const float32x4_t vi = vaddq_f32(vmulq_f32(b2, vld1q_f32(v + i)),
                                     vmulq_f32(omb2, vmulq_f32(g, g)));
    vst1q_f32(m + i, mi);
    vst1q_f32(v + i, vi);
    const float32x4_t m_hat = vdivq_f32(mi, bias1);
    const float32x4_t v_hat = vdivq_f32(vi, bias2);
    const float32x4_t step = vdivq_f32(vmulq_f32(lr, m_hat),
                                       vaddq_f32(vsqrtq_f32(v_hat), eps));
    vst1q_f32(param + i, vsubq_f32(vld1q_f32(param + i), step));
  }
  for (; i < n; ++i) {
    const float g = grad[i];
    m[i] = c.beta1 * m[i] + c.one_minus_beta1 * g;
    v[i] = c.beta2 * v[i] + c.one_minus_beta2 * (g * g);
    const float m_hat = m[i] / c.bias1;
    const float v_hat = v[i] / c.bias2;
    param[i] = param[i] - c.lr * m_hat / (std::sqrt(v_hat) + c.eps);
  }
}

// NaN payload handling of the hardware converters differs from the scalar
// reference, so half conversions stay on the scalar path here.
void half_to_float_neon(const std::uint16_t* src, float* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = x2s::half_to_float(src[i]);
}

void float_to_half_neon(const float* src, std::uint16_t* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = x2s::float_to_half(src[i]);
}

const Kernels kNeon = {
    Level::neon,        dot_neon,           axpy_neon,
    axpy_f64_neon,      accumulate_f64_neon, adam_update_neon,
    half_to_float_neon, float_to_half_neon,
};

}  // namespace

namespace detail {
const Kernels* neon_table() { return &kNeon; }
}  // namespace detail

}  // namespace x2s::simd

#else

namespace x2s::simd::detail {
const Kernels* neon_table() { return nullptr; }
}  // namespace x2s::simd::detail

#endif
