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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "x2s/adam.hpp"
#include "x2s/errors.hpp"

using namespace x2s;

namespace {

// Textbook dense Adam over every parameter.
struct DenseAdam {
  std::vector<double> m, v;
  int t = 0;
  void step(std::vector<double>& p, const std::vector<double>& g,
            const AdamConfig& c) {
    if (m.empty()) {
      m.assign(p.size(), 0.0);
      v.assign(p.size(), 0.0);
    }
    ++t;
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = c.beta1 * m[i] + (1 - c.beta1) * g[i];
      v[i] = c.beta2 * v[i] + (1 - c.beta2) * g[i] * g[i];
      const double mh = m[i] / (1 - std::pow(c.beta1, t));
      const double vh = v[i] / (1 - std::pow(c.beta2, t));
      p[i] -= c.learning_rate * mh / (std::sqrt(vh) + c.eps);
    }
  }
};

}  // namespace

TEST_CASE("first step is -lr * sign(g) for large gradients") {
  Matrix<double> p(1, 4, 0.5);
  AdamState<double> s(1, 4);
  Matrix<double> g(1, 4);
  g(0, 0) = 3.0;
  g(0, 1) = -0.2;
  g(0, 2) = 1e3;
  g(0, 3) = -1e-2;
  const std::uint32_t rows[] = {0};
  const AdamConfig cfg;
  lazy_adam_step(p, s, rows, g, cfg);
  for (std::size_t j = 0; j < 4; ++j) {
    const double gj = g(0, j);
    const double m_hat = (1 - cfg.beta1) * gj / (1 - cfg.beta1);
    const double v_hat = (1 - cfg.beta2) * gj * gj / (1 - cfg.beta2);
    const double closed = 0.5 - cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.eps);
    CHECK(std::fabs(p(0, j) - closed) <= 1e-12);
    CHECK(std::fabs(p(0, j) - (0.5 - 0.001 * (gj > 0 ? 1 : -1))) < 1e-8);
  }
  CHECK(s.step_count[0] == 1);
}

TEST_CASE("untouched rows stay bit-identical") {
  Matrix<float> p(5, 3, 0.25f);
  p(3, 1) = -1.0f;
  const Matrix<float> before = p;
  AdamState<float> s(5, 3);
  Matrix<float> g(2, 3, 0.1f);
  const std::uint32_t rows[] = {1, 4};
  for (int i = 0; i < 10; ++i) lazy_adam_step(p, s, rows, g, AdamConfig{});
  for (std::uint32_t r : {0u, 2u, 3u}) {
    CHECK(std::equal(p.row(r).begin(), p.row(r).end(), before.row(r).begin()));
    CHECK(s.step_count[r] == 0);
    for (float x : s.first_moment.row(r)) CHECK(x == 0.0f);
    for (float x : s.second_moment.row(r)) CHECK(x == 0.0f);
  }
  CHECK(s.step_count[1] == 10);
  CHECK(p(1, 0) < 0.25f);
}

TEST_CASE("all rows touched every step tracks dense Adam") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> d;
  const std::size_t rows = 6, dim = 5;
  Matrix<double> p(rows, dim);
  for (auto& x : p.data()) x = d(rng);
  std::vector<double> dense = p.data();
  AdamState<double> s(rows, dim);
  DenseAdam ref;
  const AdamConfig cfg{0.01, 0.9, 0.999, 1e-8};
  std::vector<std::uint32_t> all(rows);
  for (std::uint32_t i = 0; i < rows; ++i) all[i] = i;
  for (int t = 0; t < 200; ++t) {
    Matrix<double> g(rows, dim);
    for (auto& x : g.data()) x = d(rng) * (t % 3 + 0.1);
    lazy_adam_step(p, s, all, g, cfg, t);
    ref.step(dense, g.data(), cfg);
  }
  for (std::size_t i = 0; i < dense.size(); ++i) {
    CHECK(std::fabs(p.data()[i] - dense[i]) <= 1e-10);
  }
}

TEST_CASE("sparse row order does not matter and f32 follows f64") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> d;
  Matrix<double> pd(4, 8);
  for (auto& x : pd.data()) x = d(rng) * 0.1;
  Matrix<float> pf(4, 8);
  for (std::size_t i = 0; i < pd.data().size(); ++i) {
    pf.data()[i] = static_cast<float>(pd.data()[i]);
    pd.data()[i] = pf.data()[i];
  }
  AdamState<double> sd(4, 8);
  AdamState<float> sf(4, 8);
  for (int t = 0; t < 50; ++t) {
    const std::uint32_t rows[] = {static_cast<std::uint32_t>(t % 4), 3};
    if (rows[0] == 3) continue;
    Matrix<double> gd(2, 8);
    Matrix<float> gf(2, 8);
    for (std::size_t i = 0; i < 16; ++i) {
      gf.data()[i] = static_cast<float>(d(rng));
      gd.data()[i] = gf.data()[i];
    }
    lazy_adam_step(pd, sd, rows, gd, AdamConfig{});
    lazy_adam_step(pf, sf, rows, gf, AdamConfig{});
  }
  for (std::size_t i = 0; i < pd.data().size(); ++i) {
    CHECK(std::fabs(pd.data()[i] - pf.data()[i]) < 1e-5);
  }
  CHECK(sd.step_count == sf.step_count);
}

TEST_CASE("non-finite gradient aborts before any update") {
  Matrix<float> p(3, 2, 1.0f);
  const Matrix<float> before = p;
  AdamState<float> s(3, 2);
  Matrix<float> g(2, 2, 0.5f);
  g(1, 1) = std::numeric_limits<float>::quiet_NaN();
  const std::uint32_t rows[] = {0, 2};
  try {
    lazy_adam_step(p, s, rows, g, AdamConfig{}, 17);
    FAIL("expected NonFiniteGradient");
  } catch (const NonFiniteGradient& e) {
    CHECK(e.row() == 2);
    CHECK(e.batch() == 17);
  }
  CHECK(p == before);
  CHECK(s.step_count == std::vector<std::uint64_t>{0, 0, 0});
  const std::uint32_t outside[] = {7};
  CHECK_THROWS_AS(lazy_adam_step(p, s, outside, g, AdamConfig{}), ContractViolation);
}
