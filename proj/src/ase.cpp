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

#include "x2s/ase.hpp"

#include <ostream>

#include "x2s/errors.hpp"
#include "x2s/simd.hpp"

namespace x2s {

AseAccumulator::AseAccumulator(std::size_t vocab_size, std::size_t dim,
                               std::optional<std::uint64_t> cap)
    : sums_(vocab_size, dim), counts_(vocab_size, 0), cap_(cap) {
  if (dim == 0) throw ContractViolation("ASE dim must be positive");
}

void AseAccumulator::accumulate(const SentenceRecord& record) {
  const std::size_t dim = sums_.cols();
  if (record.vectors.size() != record.size() * dim) {
    throw ContractViolation("record dim does not match the ASE accumulator");
  }
  const auto& k = simd::active();
  for (std::size_t i = 0; i < record.size(); ++i) {
    const std::uint32_t id = record.token_ids[i];
    if (id == Vocabulary::kOov) continue;
    if (id >= counts_.size()) {
      throw FormatError("token id " + std::to_string(id) +
                        " is outside the vocabulary");
    }
    if (cap_ && counts_[id] >= *cap_) continue;
    k.accumulate_f64(record.vectors.data() + i * dim, sums_.row(id).data(),
                     dim);
    ++counts_[id];
  }
}

void AseAccumulator::merge(const AseAccumulator& other) {
  if (other.sums_.rows() != sums_.rows() ||
      other.sums_.cols() != sums_.cols()) {
    throw ContractViolation("merging ASE accumulators of different shape");
  }
  for (std::size_t i = 0; i < sums_.data().size(); ++i) {
    sums_.data()[i] += other.sums_.data()[i];
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    counts_[i] += other.counts_[i];
  }
}

AseResult ase_finalize(const AseAccumulator& acc) {
  AseResult out;
  const std::size_t dim = acc.dim();
  out.occurrences.resize(acc.vocab_size());
  for (std::uint32_t id = 0; id < acc.vocab_size(); ++id) {
    out.occurrences[id] = acc.count(id);
    if (acc.count(id) > 0) out.ids.push_back(id);
  }
  out.seen = out.ids.size();
  out.unseen = acc.vocab_size() - out.seen;
  if (out.seen == 0) throw CoverageError("ASE saw no vocabulary word");
  out.means = Matrix<double>(out.seen, dim);
  for (std::size_t r = 0; r < out.seen; ++r) {
    const std::uint32_t id = out.ids[r];
    const double inv = 1.0 / static_cast<double>(acc.count(id));
    const auto sum = acc.sums().row(id);
    auto mean = out.means.row(r);
    for (std::size_t c = 0; c < dim; ++c) mean[c] = sum[c] * inv;
  }
  return out;
}

WordEmbeddings AseResult::embeddings(const Vocabulary& vocab) const {
  std::vector<std::string> words;
  words.reserve(ids.size());
  EmbeddingMatrix m(ids.size(), means.cols());
  for (std::size_t r = 0; r < ids.size(); ++r) {
    words.push_back(vocab.word(ids[r]));
    for (std::size_t c = 0; c < means.cols(); ++c) {
      m(r, c) = static_cast<float>(means(r, c));
    }
  }
  return WordEmbeddings(std::move(words), std::move(m));
}

void write_coverage_report(std::ostream& out, const AseResult& result,
                           const Vocabulary& vocab) {
  for (std::uint32_t id = 0; id < vocab.size(); ++id) {
    out << vocab.word(id) << '\t'
        << (id < result.occurrences.size() ? result.occurrences[id] : 0)
        << '\n';
  }
}

}  // namespace x2s
