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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "x2s/matrix.hpp"

namespace x2s {

struct SimilarityPair {
  std::string a;
  std::string b;
  double gold = 0.0;
};

struct SimilarityDataset {
  std::string name;
  std::vector<SimilarityPair> pairs;
};

struct EvalReport {
  std::string dataset;
  double spearman_rho = 0.0;
  std::size_t pairs_total = 0;
  std::size_t pairs_scored = 0;
  double coverage = 0.0;
};

/// u.v / (|u| |v|) in double; nullopt when either vector has zero norm.
std::optional<double> cosine_similarity(std::span<const float> u,
                                        std::span<const float> v);
std::optional<double> cosine_similarity(std::span<const double> u,
                                        std::span<const double> v);

/// 1-based ranks; tied values share the mean of their positions.
std::vector<double> fractional_ranks(std::span<const double> values);

/// Pearson correlation of fractional ranks. Throws ContractViolation on
/// length mismatch or fewer than two points, UndefinedCorrelation when either
/// side is constant.
double spearman_rho(std::span<const double> x, std::span<const double> y);

/// Lines of "word_a word_b score" (tab or space separated); '#' lines and
/// blank lines are skipped; words are lowercased.
SimilarityDataset read_similarity_dataset(std::istream& in, std::string name);
SimilarityDataset load_similarity_dataset(const std::string& path);

/// Scores pairs with both words present. Throws InsufficientCoverage (with
/// the report's counts in the message) when fewer than two pairs score.
EvalReport evaluate_dataset(const WordEmbeddings& embeddings,
                            const SimilarityDataset& dataset);

/// TSV "dataset<TAB>rho<TAB>scored<TAB>total<TAB>coverage". With more than
/// one report an "average" row follows, rho being the unweighted mean.
void write_eval_reports(std::ostream& out,
                        const std::vector<EvalReport>& reports);

/// The k most cosine-similar words to `query`, excluding itself, sorted by
/// descending cosine then ascending word. Throws Error for an unknown query.
std::vector<std::pair<std::string, double>> nearest_neighbors(
    const WordEmbeddings& embeddings, std::string_view query, std::size_t k);

}  // namespace x2s
