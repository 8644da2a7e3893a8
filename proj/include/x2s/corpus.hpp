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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace x2s {

using Sentence = std::vector<std::string>;
using Paragraph = std::vector<Sentence>;

/// Paragraphs of sentences of lowercase tokens.
struct TokenizedCorpus {
  std::vector<Paragraph> paragraphs;

  std::size_t sentence_count() const;
  std::size_t token_count() const;
  bool operator==(const TokenizedCorpus&) const = default;
};

struct PreprocessConfig {
  std::size_t min_sentences = 3;
  // Measured in code points on the raw paragraph text, line breaks included.
  std::size_t min_characters = 140;
};

/// Throws DecodeError carrying the byte offset of the first invalid sequence.
void validate_utf8(std::string_view text);

/// Lowercases Latin, Greek and Cyrillic letters; other code points pass
/// through unchanged. Input must be valid UTF-8.
std::string to_lower(std::string_view text);

/// Splits on Unicode whitespace, then peels leading and trailing punctuation
/// off each chunk as one-character tokens. Interior characters (apostrophes,
/// hyphens, dots) stay attached.
std::vector<std::string> tokenize(std::string_view sentence);

/// Raw text to filtered, lowercased, tokenized corpus. Paragraphs are
/// separated by blank lines. A multi-line paragraph has one sentence per line;
/// a single-line paragraph is split after [.?!] followed by whitespace.
TokenizedCorpus preprocess_corpus(std::string_view raw,
                                  const PreprocessConfig& config = {});
TokenizedCorpus preprocess_corpus(std::istream& raw,
                                  const PreprocessConfig& config = {});

// Canonical corpus file: one sentence per line, tokens separated by a single
// space, a blank line after each paragraph.
void write_corpus(std::ostream& out, const TokenizedCorpus& corpus);
TokenizedCorpus read_corpus(std::istream& in);

struct VocabEntry {
  std::string word;
  std::uint64_t count = 0;
  bool operator==(const VocabEntry&) const = default;
};

/// Word <-> id map. Ids are positions in count-descending, word-ascending
/// order.
class Vocabulary {
 public:
  static constexpr std::uint32_t kOov = 0xFFFFFFFFu;

  Vocabulary() = default;
  explicit Vocabulary(std::vector<VocabEntry> entries);

  std::size_t size() const { return entries_.size(); }
  const std::vector<VocabEntry>& entries() const { return entries_; }
  const std::string& word(std::uint32_t id) const { return entries_[id].word; }
  std::uint64_t count(std::uint32_t id) const { return entries_[id].count; }
  std::vector<std::string> words() const;

  /// Id of `word` or kOov.
  std::uint32_t id(std::string_view word) const;

  bool operator==(const Vocabulary& other) const {
    return entries_ == other.entries_;
  }

 private:
  std::vector<VocabEntry> entries_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// Words with count >= min_count, truncated to the max_size most frequent.
/// Throws EmptyVocabulary when nothing survives.
Vocabulary build_vocabulary(const TokenizedCorpus& corpus,
                            std::uint64_t min_count, std::size_t max_size);

// TSV, "word<TAB>count" per line in id order.
void write_vocabulary(std::ostream& out, const Vocabulary& vocab);
Vocabulary read_vocabulary(std::istream& in);

using EncodedSentence = std::vector<std::uint32_t>;
using EncodedParagraph = std::vector<EncodedSentence>;

struct EncodedCorpus {
  std::vector<EncodedParagraph> paragraphs;

  std::size_t sentence_count() const;
  std::size_t token_count() const;
  bool operator==(const EncodedCorpus&) const = default;
};

EncodedCorpus encode_corpus(const TokenizedCorpus& corpus,
                            const Vocabulary& vocab);

/// Inverse of encode_corpus; OOV positions become `oov_text`.
TokenizedCorpus decode_corpus(const EncodedCorpus& corpus,
                              const Vocabulary& vocab,
                              std::string_view oov_text = "<unk>");

}  // namespace x2s
