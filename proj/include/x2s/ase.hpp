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

// Aggregated static embeddings: each word's vector is the average of its
// teacher vectors over every occurrence in the stream.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "x2s/corpus.hpp"
#include "x2s/matrix.hpp"
#include "x2s/teacher_stream.hpp"

namespace x2s {

class AseAccumulator {
 public:
  /// `cap` limits the occurrences pooled per word; nullopt is unlimited.
  AseAccumulator(std::size_t vocab_size, std::size_t dim,
                 std::optional<std::uint64_t> cap = std::nullopt);

  /// Adds every in-vocabulary token of the record. Throws ContractViolation
  /// if the record's vectors do not match the accumulator dim.
  void accumulate(const SentenceRecord& record);

  /// Sums another accumulator into this one (per-worker shards). Both must
  /// share shape; the cap is re-applied only by future accumulate calls.
  void merge(const AseAccumulator& other);

  std::size_t dim() const { return sums_.cols(); }
  std::size_t vocab_size() const { return sums_.rows(); }
  std::uint64_t count(std::uint32_t id) const { return counts_[id]; }
  const Matrix<double>& sums() const { return sums_; }

 private:
  Matrix<double> sums_;
  std::vector<std::uint64_t> counts_;
  std::optional<std::uint64_t> cap_;
};

struct AseResult {
  std::vector<std::uint32_t> ids;       // seen vocabulary ids, ascending
  Matrix<double> means;                 // one row per entry of `ids`
  std::vector<std::uint64_t> occurrences;  // per vocabulary id
  std::size_t seen = 0;
  std::size_t unseen = 0;

  /// Seen words only, in id order, narrowed to f32.
  WordEmbeddings embeddings(const Vocabulary& vocab) const;
};

/// Averages. Throws CoverageError when no word was seen. Does not modify the
/// accumulator, so repeated calls agree.
AseResult ase_finalize(const AseAccumulator& acc);

/// TSV "word<TAB>occurrences" for every vocabulary word, in id order.
void write_coverage_report(std::ostream& out, const AseResult& result,
                           const Vocabulary& vocab);

}  // namespace x2s
