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

// Desk-scale experiment plumbing: synthetic planted corpora and the
// corpus-size sweep comparing distilled embeddings against ASE.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "x2s/corpus.hpp"
#include "x2s/eval.hpp"
#include "x2s/mock_teacher.hpp"
#include "x2s/teacher_stream.hpp"
#include "x2s/trainer.hpp"

namespace x2s {

struct SyntheticCorpusConfig {
  std::size_t sentences = 200000;
  std::size_t min_length = 5;
  std::size_t max_length = 20;
  std::size_t sentences_per_paragraph = 5;
  // Word w of rank r (0-based) is drawn with weight 1 / (r + 1)^exponent.
  double zipf_exponent = 1.0;
  std::uint64_t seed = 1;
};

/// "w0000", "w0001", ... zero-padded to a common width.
std::vector<std::string> synthetic_words(std::size_t count);

TokenizedCorpus synthesize_corpus(const std::vector<std::string>& words,
                                  const SyntheticCorpusConfig& config);

/// `count` seeded pairs of distinct words; gold score is their planted
/// cosine.
SimilarityDataset planted_similarity_pairs(const PlantedSpace& planted,
                                           std::size_t count,
                                           std::uint64_t seed,
                                           std::string name = "planted");

struct SweepConfig {
  std::vector<double> fractions;
  TrainerConfig trainer;
  std::optional<std::uint64_t> ase_cap;
};

struct SweepRow {
  std::string method;  // "distilled" or "ase"
  double fraction = 0.0;
  std::string dataset;
  double rho = 0.0;  // NaN when the dataset had fewer than two scored pairs
  double coverage = 0.0;
  std::uint64_t records = 0;
  std::size_t words_seen = 0;
};

/// For each fraction, trains on and pools the first floor(fraction * N)
/// records, then evaluates both on every dataset. Fractions must be
/// ascending in (0, 1]; a fraction selecting no record is an error.
std::vector<SweepRow> sweep(RecordSource& stream, const Vocabulary& vocab,
                            const std::vector<SimilarityDataset>& datasets,
                            const SweepConfig& config);

/// Header "method<TAB>fraction<TAB>dataset<TAB>rho", one line per row.
void write_sweep_tsv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace x2s
