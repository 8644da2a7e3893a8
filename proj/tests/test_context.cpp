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

#include "x2s/context.hpp"
#include "x2s/corpus.hpp"
#include "x2s/errors.hpp"

using namespace x2s;

TEST_CASE("teacher context is the mean over every token") {
  SentenceRecord two{0, 0, {0, 1}, {1.0f, 1.0f, 3.0f, -1.0f}};
  CHECK(context_vector(two, 2) == std::vector<double>{2.0, 0.0});
  SentenceRecord one{0, 0, {4}, {0.25f, -8.0f}};
  CHECK(context_vector(one, 2) == std::vector<double>{0.25, -8.0});
  SentenceRecord empty;
  CHECK_THROWS_AS(context_vector(empty, 2), ContractViolation);
}

TEST_CASE("mean of 100 copies reproduces the vector") {
  const float v[3] = {0.1f, -1.0f / 3.0f, 7.77f};
  SentenceRecord rec;
  for (int i = 0; i < 100; ++i) {
    rec.token_ids.push_back(1);
    rec.vectors.insert(rec.vectors.end(), v, v + 3);
  }
  const auto c = context_vector(rec, 3);
  for (int j = 0; j < 3; ++j) CHECK(std::fabs(c[j] - v[j]) <= 1e-12);
}

TEST_CASE("teacher context is permutation invariant and linear") {
  std::mt19937_64 rng(3);
  std::normal_distribution<float> d;
  const std::size_t dim = 5, n = 9;
  SentenceRecord rec;
  for (std::size_t i = 0; i < n; ++i) rec.token_ids.push_back(i);
  for (std::size_t i = 0; i < n * dim; ++i) rec.vectors.push_back(d(rng));
  const auto base = context_vector(rec, dim);

  SentenceRecord perm = rec;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = (i * 4 + 3) % n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      perm.vectors[i * dim + j] = rec.vectors[order[i] * dim + j];
    }
  }
  const auto permuted = context_vector(perm, dim);
  for (std::size_t j = 0; j < dim; ++j) CHECK(std::fabs(permuted[j] - base[j]) <= 1e-12);

  SentenceRecord scaled = rec;
  for (auto& x : scaled.vectors) x *= 4.0f;
  const auto s = context_vector(scaled, dim);
  for (std::size_t j = 0; j < dim; ++j) CHECK(std::fabs(s[j] - 4.0 * base[j]) <= 1e-12);
}

TEST_CASE("static context averages the other in-vocabulary rows") {
  EmbeddingMatrix v(4, 2);
  v(0, 0) = 1.0f;
  v(1, 1) = 2.0f;
  v(2, 0) = -3.0f;
  v(2, 1) = 5.0f;
  const std::uint32_t abc[] = {0, 1, 2};
  auto ctx = static_context_vector(abc, 1, v);
  REQUIRE(ctx.has_value());
  CHECK(ctx->mean == std::vector<double>{-1.0, 2.5});
  CHECK(ctx->rows == std::vector<std::uint32_t>{0, 2});

  const std::uint32_t ab[] = {0, 1};
  ctx = static_context_vector(ab, 1, v);
  REQUIRE(ctx.has_value());
  CHECK(ctx->mean == std::vector<double>{1.0, 0.0});

  const std::uint32_t oov[] = {Vocabulary::kOov, 1, Vocabulary::kOov};
  CHECK(!static_context_vector(oov, 1, v).has_value());
  const std::uint32_t repeated[] = {1, 1};
  CHECK(!static_context_vector(repeated, 0, v).has_value());
}

TEST_CASE("static context never reads the target row") {
  EmbeddingMatrix v(3, 2, 1.0f);
  v(1, 0) = std::numeric_limits<float>::quiet_NaN();
  v(1, 1) = std::numeric_limits<float>::infinity();
  const std::uint32_t s[] = {0, 1, 2, 1, 0};
  for (std::size_t pos : {std::size_t{1}, std::size_t{3}}) {
    const auto ctx = static_context_vector(s, pos, v);
    REQUIRE(ctx.has_value());
    CHECK(ctx->mean == std::vector<double>{1.0, 1.0});
  }
}
