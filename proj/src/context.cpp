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

#include "x2s/context.hpp"

#include "x2s/corpus.hpp"
#include "x2s/errors.hpp"
#include "x2s/simd.hpp"

namespace x2s {

std::vector<double> context_vector(const SentenceRecord& record,
                                   std::size_t dim) {
  const std::size_t n = record.size();
  if (n == 0) throw ContractViolation("context of an empty record");
  if (record.vectors.size() != n * dim) {
    throw ContractViolation("record vectors do not match dim");
  }
  std::vector<double> acc(dim, 0.0);
  const auto& k = simd::active();
  for (std::size_t i = 0; i < n; ++i) {
    k.accumulate_f64(record.vectors.data() + i * dim, acc.data(), dim);
  }
  const double inv = 1.0 / static_cast<double>(n);
  for (double& x : acc) x *= inv;
  return acc;
}

std::optional<StaticContext> static_context_vector(
    std::span<const std::uint32_t> sentence, std::size_t target_position,
    const EmbeddingMatrix& context_rows) {
  if (target_position >= sentence.size()) {
    throw ContractViolation("target position outside the sentence");
  }
  const std::uint32_t target = sentence[target_position];
  StaticContext ctx;
  ctx.mean.assign(context_rows.cols(), 0.0);
  const auto& k = simd::active();
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    const std::uint32_t id = sentence[i];
    if (i == target_position || id == target || id == Vocabulary::kOov) {
      continue;
    }
    if (id >= context_rows.rows()) {
      throw ContractViolation("context id outside the matrix");
    }
    k.accumulate_f64(context_rows.row(id).data(), ctx.mean.data(),
                     context_rows.cols());
    ctx.rows.push_back(id);
  }
  if (ctx.rows.empty()) return std::nullopt;
  const double inv = 1.0 / static_cast<double>(ctx.rows.size());
  for (double& x : ctx.mean) x *= inv;
  return ctx;
}

}  // namespace x2s
