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

#include "x2s/mock_teacher.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "x2s/errors.hpp"
#include "x2s/rng.hpp"

namespace x2s {
namespace {

constexpr std::uint64_t kContextSalt = 0x6a09e667f3bcc909ULL;
constexpr std::uint64_t kNoiseSalt = 0xbb67ae8584caa73bULL;
constexpr std::size_t kPositionBucketWidth = 4;
constexpr std::size_t kPositionBuckets = 8;

// Uniform in [-1, 1).
double signed_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-52 - 1.0;
}

// Uniform in (0, 1].
double open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

// Context hashes depend only on the token ids the teacher would see.
constexpr std::uint64_t kSentenceSalt = 0x53454e54454e4345ULL;
constexpr std::uint64_t kParagraphSalt = 0x5041524147524150ULL;

std::uint64_t hash_ids(std::uint64_t h, const EncodedSentence& ids) {
  for (std::uint32_t id : ids) h = hash_combine(h, id);
  return h;
}

}  // namespace

PlantedSpace make_planted_space(std::vector<std::string> words,
                                std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw ContractViolation("planted dim must be positive");
  EmbeddingMatrix m(words.size(), dim);
  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> row(dim);
  for (std::size_t r = 0; r < words.size(); ++r) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double& x : row) {
        x = normal(rng);
        norm2 += x * x;
      }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t c = 0; c < dim; ++c) {
      m(r, c) = static_cast<float>(row[c] * inv);
    }
  }
  return PlantedSpace{WordEmbeddings(std::move(words), std::move(m)), seed};
}

MockTeacher::MockTeacher(const EncodedCorpus& corpus, const Vocabulary& vocab,
                         const MockTeacherConfig& config,
                         const PlantedSpace* planted)
    : corpus_(corpus), config_(config), planted_(planted) {
  if (config.dim == 0) throw ContractViolation("mock teacher dim is zero");
  header_.dim = config.dim;
  header_.scope = config.scope;
  header_.dtype = config.dtype;
  if (config.mode == MockMode::planted) {
    if (planted == nullptr) {
      throw ContractViolation("planted mode needs a planted space");
    }
    if (planted->space.dim() != config.dim) {
      throw ContractViolation("planted space dim differs from teacher dim");
    }
    planted_row_.resize(vocab.size());
    for (std::uint32_t id = 0; id < vocab.size(); ++id) {
      const auto row = planted->space.find(vocab.word(id));
      if (row < 0) {
        throw CoverageError("planted space has no vector for '" +
                            vocab.word(id) + "'");
      }
      planted_row_[id] = static_cast<std::uint32_t>(row);
    }
  }
  rewind();
}

void MockTeacher::rewind() {
  paragraph_ = 0;
  sentence_ = 0;
  paragraph_hash_ = 0;
}

void MockTeacher::fill_hash(std::uint32_t id, std::size_t position,
                            std::uint64_t context_hash, float* out) const {
  const std::uint64_t bucket =
      std::min(position / kPositionBucketWidth, kPositionBuckets - 1);
  const std::uint64_t base_key = hash_combine(mix64(config_.seed), id);
  const std::uint64_t ctx_key = hash_combine(
      hash_combine(hash_combine(mix64(config_.seed ^ kContextSalt), id),
                   bucket),
      context_hash);
  for (std::uint32_t j = 0; j < config_.dim; ++j) {
    const double base = signed_unit(mix64(base_key + j));
    const double ctx = signed_unit(mix64(ctx_key + j));
    out[j] = static_cast<float>(base + 0.5 * ctx);
  }
}

void MockTeacher::fill_planted(std::uint32_t id, std::uint64_t occurrence_key,
                               float* out) const {
  const auto row = planted_->space.vectors().row(planted_row_[id]);
  if (config_.noise <= 0.0) {
    std::copy(row.begin(), row.end(), out);
    return;
  }
  std::vector<double> noise(config_.dim);
  const std::uint64_t key =
      hash_combine(mix64(config_.seed ^ kNoiseSalt), occurrence_key);
  double norm2 = 0.0;
  for (std::uint32_t j = 0; j < config_.dim; ++j) {
    const double u1 = open_unit(mix64(key + 2 * j));
    const double u2 = open_unit(mix64(key + 2 * j + 1));
    noise[j] = std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    norm2 += noise[j] * noise[j];
  }
  const double scale = norm2 > 0.0 ? config_.noise / std::sqrt(norm2) : 0.0;
  for (std::uint32_t j = 0; j < config_.dim; ++j) {
    out[j] = static_cast<float>(static_cast<double>(row[j]) + scale * noise[j]);
  }
}

bool MockTeacher::next(SentenceRecord& record) {
  while (paragraph_ < corpus_.paragraphs.size()) {
    const auto& paragraph = corpus_.paragraphs[paragraph_];
    if (sentence_ == 0) {
      paragraph_hash_ = kParagraphSalt;
      for (const auto& s : paragraph) {
        paragraph_hash_ = hash_ids(hash_combine(paragraph_hash_, s.size()), s);
      }
    }
    if (sentence_ >= paragraph.size()) {
      ++paragraph_;
      sentence_ = 0;
      continue;
    }
    const std::size_t s = sentence_++;
    const auto& ids = paragraph[s];
    if (ids.empty()) continue;

    record.paragraph_id = static_cast<std::uint32_t>(paragraph_);
    record.sentence_index = static_cast<std::uint32_t>(s);
    record.token_ids = ids;
    record.vectors.resize(ids.size() * config_.dim);
    const std::uint64_t context_hash =
        config_.scope == Scope::paragraph
            ? paragraph_hash_
            : hash_ids(kSentenceSalt, ids);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      float* out = record.vectors.data() + i * config_.dim;
      const std::uint32_t id = ids[i];
      if (config_.mode == MockMode::planted && id != Vocabulary::kOov) {
        const std::uint64_t occurrence = hash_combine(
            hash_combine(hash_combine(mix64(paragraph_), s), i),
            static_cast<std::uint64_t>(config_.scope));
        fill_planted(id, occurrence, out);
      } else {
        fill_hash(id, i, context_hash, out);
      }
    }
    return true;
  }
  return false;
}

std::uint64_t mock_teacher_encode(const EncodedCorpus& corpus,
                                  const Vocabulary& vocab,
                                  const MockTeacherConfig& config,
                                  const PlantedSpace* planted,
                                  std::ostream& out) {
  MockTeacher teacher(corpus, vocab, config, planted);
  StreamWriter writer(out, teacher.header());
  SentenceRecord record;
  while (teacher.next(record)) writer.write(record);
  return writer.bytes_written();
}

}  // namespace x2s
