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

#include "x2s/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

#include "x2s/ase.hpp"
#include "x2s/errors.hpp"
#include "x2s/rng.hpp"

namespace x2s {

std::vector<std::string> synthetic_words(std::size_t count) {
  std::size_t width = 1;
  for (std::size_t n = count > 0 ? count - 1 : 0; n >= 10; n /= 10) ++width;
  width = std::max<std::size_t>(width, 4);
  std::vector<std::string> words;
  words.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string digits = std::to_string(i);
    words.push_back("w" + std::string(width - digits.size(), '0') + digits);
  }
  return words;
}

TokenizedCorpus synthesize_corpus(const std::vector<std::string>& words,
                                  const SyntheticCorpusConfig& config) {
  if (words.empty()) throw ContractViolation("synthetic corpus needs words");
  if (config.min_length < 1 || config.max_length < config.min_length ||
      config.sentences_per_paragraph < 1) {
    throw ContractViolation("bad synthetic corpus shape");
  }
  std::vector<double> weights(words.size());
  for (std::size_t r = 0; r < words.size(); ++r) {
    weights[r] = std::pow(static_cast<double>(r + 1), -config.zipf_exponent);
  }
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::uniform_int_distribution<std::size_t> length(config.min_length,
                                                    config.max_length);
  Rng rng(config.seed);
  TokenizedCorpus corpus;
  Paragraph paragraph;
  for (std::size_t s = 0; s < config.sentences; ++s) {
    Sentence sentence(length(rng));
    for (auto& token : sentence) token = words[pick(rng)];
    paragraph.push_back(std::move(sentence));
    if (paragraph.size() == config.sentences_per_paragraph) {
      corpus.paragraphs.push_back(std::move(paragraph));
      paragraph.clear();
    }
  }
  if (!paragraph.empty()) corpus.paragraphs.push_back(std::move(paragraph));
  return corpus;
}

SimilarityDataset planted_similarity_pairs(const PlantedSpace& planted,
                                           std::size_t count,
                                           std::uint64_t seed,
                                           std::string name) {
  const auto& space = planted.space;
  if (space.size() < 2) throw ContractViolation("need at least two words");
  SimilarityDataset ds;
  ds.name = std::move(name);
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, space.size() - 1);
  while (ds.pairs.size() < count) {
    const std::size_t a = pick(rng);
    const std::size_t b = pick(rng);
    if (a == b) continue;
    const auto c = cosine_similarity(space.vectors().row(a),
                                     space.vectors().row(b));
    ds.pairs.push_back({space.words()[a], space.words()[b], c.value_or(0.0)});
  }
  return ds;
}

std::vector<SweepRow> sweep(RecordSource& stream, const Vocabulary& vocab,
                            const std::vector<SimilarityDataset>& datasets,
                            const SweepConfig& config) {
  if (config.fractions.empty()) throw ContractViolation("no sweep fractions");
  for (std::size_t i = 0; i < config.fractions.size(); ++i) {
    const double f = config.fractions[i];
    if (!(f > 0.0 && f <= 1.0)) {
      throw ContractViolation("sweep fractions must lie in (0, 1]");
    }
    if (i > 0 && f < config.fractions[i - 1]) {
      throw ContractViolation("sweep fractions must be ascending");
    }
  }
  const std::uint64_t total = count_records(stream);
  std::vector<SweepRow> rows;
  for (double fraction : config.fractions) {
    const auto limit = static_cast<std::uint64_t>(
        std::floor(fraction * static_cast<double>(total) + 1e-9));
    if (limit < 1) {
      throw Error("fraction " + std::to_string(fraction) + " of " +
                  std::to_string(total) + " records selects no record");
    }
    PrefixSource prefix(stream, limit);
    DistillResult distilled = distill(prefix, vocab, config.trainer);
    const WordEmbeddings distilled_emb(vocab.words(),
                                       std::move(distilled.target));

    AseAccumulator acc(vocab.size(), stream.header().dim, config.ase_cap);
    prefix.rewind();
    SentenceRecord record;
    while (prefix.next(record)) acc.accumulate(record);
    const AseResult ase = ase_finalize(acc);
    const WordEmbeddings ase_emb = ase.embeddings(vocab);

    auto emit = [&](const std::string& method, const WordEmbeddings& emb,
                    std::size_t seen) {
      for (const auto& ds : datasets) {
        SweepRow row;
        row.method = method;
        row.fraction = fraction;
        row.dataset = ds.name;
        row.records = limit;
        row.words_seen = seen;
        try {
          const EvalReport r = evaluate_dataset(emb, ds);
          row.rho = r.spearman_rho;
          row.coverage = r.coverage;
        } catch (const InsufficientCoverage&) {
          row.rho = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(std::move(row));
      }
    };
    emit("distilled", distilled_emb, vocab.size());
    emit("ase", ase_emb, ase.seen);
  }
  stream.rewind();
  return rows;
}

void write_sweep_tsv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "method\tfraction\tdataset\trho\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.6g", r.fraction);
    out << r.method << '\t' << buf << '\t' << r.dataset << '\t';
    if (std::isnan(r.rho)) {
      out << "nan\n";
    } else {
      std::snprintf(buf, sizeof(buf), "%.6f", r.rho);
      out << buf << '\n';
    }
  }
}

}  // namespace x2s
