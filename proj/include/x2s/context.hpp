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

// Context encoders: the teacher-side sentence average and the static
// baseline's average of context rows.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "x2s/matrix.hpp"
#include "x2s/teacher_stream.hpp"

namespace x2s {

/// Mean of every token vector in the record, the target position included.
/// Accumulates in double. Throws ContractViolation on an empty record.
std::vector<double> context_vector(const SentenceRecord& record,
                                   std::size_t dim);

struct StaticContext {
  std::vector<double> mean;
  // Rows of V that were averaged, one entry per contributing token.
  std::vector<std::uint32_t> rows;
};

/// Mean of V over the in-vocabulary tokens of `sentence` whose id differs
/// from the target's. The target's own row is never read. Returns nullopt
/// when no such token exists.
std::optional<StaticContext> static_context_vector(
    std::span<const std::uint32_t> sentence, std::size_t target_position,
    const EmbeddingMatrix& context_rows);

}  // namespace x2s
