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

// Deterministic stand-in for a contextual encoder, for desk-scale runs.
//
// hash mode: a token's vector is a pseudo-random function of its id, a
// position bucket, a hash of the ids in its scope (sentence or paragraph)
// and the seed. The id-only part dominates so the signal is learnable, while
// the context part makes repeated words differ across sentences.
//
// planted mode: a token's vector is its row in a planted space plus, when
// noise > 0, an independent Gaussian direction scaled to norm `noise`.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "x2s/corpus.hpp"
#include "x2s/matrix.hpp"
#include "x2s/teacher_stream.hpp"

namespace x2s {

/// Ground-truth embeddings over synthetic words; rows are unit-norm.
struct PlantedSpace {
  WordEmbeddings space;
  std::uint64_t seed = 0;
};

/// Rows drawn i.i.d. Gaussian and normalized.
PlantedSpace make_planted_space(std::vector<std::string> words,
                                std::size_t dim, std::uint64_t seed);

enum class MockMode { hash, planted };

struct MockTeacherConfig {
  MockMode mode = MockMode::hash;
  Scope scope = Scope::sentence;
  std::uint32_t dim = 32;
  std::uint64_t seed = 1;
  double noise = 0.0;  // planted mode only
  DType dtype = DType::f32;
};

/// Generates records on the fly in corpus order. Holds references to the
/// corpus and planted space; both must outlive it.
class MockTeacher : public RecordSource {
 public:
  /// Throws CoverageError in planted mode when a vocabulary word has no
  /// planted row, and ContractViolation when the planted dim disagrees.
  MockTeacher(const EncodedCorpus& corpus, const Vocabulary& vocab,
              const MockTeacherConfig& config,
              const PlantedSpace* planted = nullptr);

  const StreamHeader& header() const override { return header_; }
  bool next(SentenceRecord& record) override;
  void rewind() override;

 private:
  void fill_hash(std::uint32_t id, std::size_t position,
                 std::uint64_t context_hash, float* out) const;
  void fill_planted(std::uint32_t id, std::uint64_t occurrence_key,
                    float* out) const;

  const EncodedCorpus& corpus_;
  MockTeacherConfig config_;
  StreamHeader header_;
  const PlantedSpace* planted_;
  std::vector<std::uint32_t> planted_row_;  // vocabulary id -> planted row
  std::size_t paragraph_ = 0;
  std::size_t sentence_ = 0;
  std::uint64_t paragraph_hash_ = 0;
};

/// Runs the mock teacher over the corpus and writes a stream to `out`.
/// Returns the number of bytes written.
std::uint64_t mock_teacher_encode(const EncodedCorpus& corpus,
                                  const Vocabulary& vocab,
                                  const MockTeacherConfig& config,
                                  const PlantedSpace* planted,
                                  std::ostream& out);

}  // namespace x2s
