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

// Lazy (sparse) Adam: only rows present in a step are updated, each with its
// own step count for bias correction. Untouched rows keep their parameters,
// moments and counts bit-for-bit.

#include <cmath>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "x2s/errors.hpp"
#include "x2s/matrix.hpp"
#include "x2s/simd.hpp"

namespace x2s {

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

template <typename T>
struct AdamState {
  Matrix<T> first_moment;
  Matrix<T> second_moment;
  std::vector<std::uint64_t> step_count;

  AdamState() = default;
  AdamState(std::size_t rows, std::size_t dim)
      : first_moment(rows, dim), second_moment(rows, dim), step_count(rows, 0) {}
};

/// One lazy step. `gradients` row i is the gradient for params row rows[i].
/// Throws NonFiniteGradient (before touching anything) if any gradient entry
/// is NaN or infinite.
template <typename T>
void lazy_adam_step(Matrix<T>& params, AdamState<T>& state,
                    std::span<const std::uint32_t> rows,
                    const Matrix<T>& gradients, const AdamConfig& config,
                    std::uint64_t batch_index = 0) {
  const std::size_t dim = params.cols();
  if (gradients.rows() < rows.size() || gradients.cols() != dim) {
    throw ContractViolation("gradient block does not match touched rows");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= params.rows()) {
      throw ContractViolation("touched row outside the parameter matrix");
    }
    for (T g : gradients.row(i)) {
      if (!std::isfinite(g)) throw NonFiniteGradient(rows[i], batch_index);
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::uint32_t r = rows[i];
    const std::uint64_t t = ++state.step_count[r];
    const double bias1 = 1.0 - std::pow(config.beta1, static_cast<double>(t));
    const double bias2 = 1.0 - std::pow(config.beta2, static_cast<double>(t));
    T* p = params.row(r).data();
    T* m = state.first_moment.row(r).data();
    T* v = state.second_moment.row(r).data();
    const T* g = gradients.row(i).data();
    if constexpr (std::is_same_v<T, float>) {
      const simd::AdamCoeffs c{
          static_cast<float>(config.learning_rate),
          static_cast<float>(config.beta1),
          static_cast<float>(config.beta2),
          static_cast<float>(1.0 - config.beta1),
          static_cast<float>(1.0 - config.beta2),
          static_cast<float>(bias1),
          static_cast<float>(bias2),
          static_cast<float>(config.eps),
      };
      simd::active().adam_update(p, m, v, g, dim, c);
    } else {
      const T b1 = static_cast<T>(config.beta1);
      const T b2 = static_cast<T>(config.beta2);
      const T lr = static_cast<T>(config.learning_rate);
      const T eps = static_cast<T>(config.eps);
      for (std::size_t j = 0; j < dim; ++j) {
        m[j] = b1 * m[j] + (T(1) - b1) * g[j];
        v[j] = b2 * v[j] + (T(1) - b2) * (g[j] * g[j]);
        const T m_hat = m[j] / static_cast<T>(bias1);
        const T v_hat = v[j] / static_cast<T>(bias2);
        p[j] = p[j] - lr * m_hat / (std::sqrt(v_hat) + eps);
      }
    }
  }
}

}  // namespace x2s
