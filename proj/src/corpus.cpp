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

#include "x2s/corpus.hpp"

#include <algorithm>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "x2s/errors.hpp"

namespace x2s {
namespace {

struct CodePoint {
  char32_t value;
  std::size_t length;
};

// Decodes one code point at `pos`; text must already be validated.
CodePoint decode_at(std::string_view text, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(text[pos]);
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](std::size_t i) {
    return static_cast<char32_t>(static_cast<unsigned char>(text[pos + i]) &
                                 0x3f);
  };
  if (b0 < 0xe0) return {(static_cast<char32_t>(b0 & 0x1f) << 6) | cont(1), 2};
  if (b0 < 0xf0) {
    return {(static_cast<char32_t>(b0 & 0x0f) << 12) | (cont(1) << 6) | cont(2),
            3};
  }
  return {(static_cast<char32_t>(b0 & 0x07) << 18) | (cont(1) << 12) |
              (cont(2) << 6) | cont(3),
          4};
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

bool is_space(char32_t cp) {
  return (cp >= 0x09 && cp <= 0x0d) || cp == 0x20 || cp == 0x85 ||
         cp == 0xa0 || cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200a) ||
         cp == 0x2028 || cp == 0x2029 || cp == 0x202f || cp == 0x205f ||
         cp == 0x3000;
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2f) || (cp >= 0x3a && cp <= 0x40) ||
           (cp >= 0x5b && cp <= 0x60) || (cp >= 0x7b && cp <= 0x7e);
  }
  return cp == 0xa1 || cp == 0xa7 || cp == 0xab || cp == 0xb6 || cp == 0xb7 ||
         cp == 0xbb || cp == 0xbf || (cp >= 0x2010 && cp <= 0x2027) ||
         (cp >= 0x2030 && cp <= 0x205e) || (cp >= 0x3001 && cp <= 0x3003) ||
         (cp >= 0x3008 && cp <= 0x3011);
}

char32_t lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp < 0xc0) return cp;
  if (cp <= 0xde) return cp == 0xd7 ? cp : cp + 32;
  if (cp >= 0x100 && cp <= 0x17f) {
    if (cp == 0x130) return 'i';
    if (cp == 0x178) return 0xff;
    if ((cp >= 0x100 && cp <= 0x12f) || (cp >= 0x132 && cp <= 0x137) ||
        (cp >= 0x14a && cp <= 0x177)) {
      return (cp % 2 == 0) ? cp + 1 : cp;
    }
    if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17e)) {
      return (cp % 2 == 1) ? cp + 1 : cp;
    }
    return cp;
  }
  // Greek
  if (cp == 0x386) return 0x3ac;
  if (cp >= 0x388 && cp <= 0x38a) return cp + 37;
  if (cp == 0x38c) return 0x3cc;
  if (cp == 0x38e || cp == 0x38f) return cp + 63;
  if ((cp >= 0x391 && cp <= 0x3a1) || (cp >= 0x3a3 && cp <= 0x3ab)) {
    return cp + 32;
  }
  // Cyrillic
  if (cp >= 0x400 && cp <= 0x40f) return cp + 80;
  if (cp >= 0x410 && cp <= 0x42f) return cp + 32;
  return cp;
}

std::size_t count_code_points(std::string_view text) {
  std::size_t n = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xc0) != 0x80) ++n;
  }
  return n;
}

bool is_blank(std::string_view line) {
  for (std::size_t i = 0; i < line.size();) {
    const CodePoint cp = decode_at(line, i);
    if (!is_space(cp.value)) return false;
    i += cp.length;
  }
  return true;
}

// Splits a one-line paragraph after [.?!] followed by whitespace.
std::vector<std::string_view> split_sentences(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < line.size();) {
    const CodePoint cp = decode_at(line, i);
    const std::size_t next = i + cp.length;
    if ((cp.value == '.' || cp.value == '?' || cp.value == '!') &&
        next < line.size() && is_space(decode_at(line, next).value)) {
      out.push_back(line.substr(start, next - start));
      start = next;
    }
    i = next;
  }
  if (start < line.size()) out.push_back(line.substr(start));
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::string join(const std::vector<std::string_view>& lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out.push_back('\n');
    out.append(lines[i]);
  }
  return out;
}

}  // namespace

std::size_t TokenizedCorpus::sentence_count() const {
  std::size_t n = 0;
  for (const auto& p : paragraphs) n += p.size();
  return n;
}

std::size_t TokenizedCorpus::token_count() const {
  std::size_t n = 0;
  for (const auto& p : paragraphs) {
    for (const auto& s : p) n += s.size();
  }
  return n;
}

void validate_utf8(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    if (b0 < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    char32_t min_value = 0;
    if (b0 >= 0xc2 && b0 <= 0xdf) {
      len = 2;
      min_value = 0x80;
    } else if (b0 >= 0xe0 && b0 <= 0xef) {
      len = 3;
      min_value = 0x800;
    } else if (b0 >= 0xf0 && b0 <= 0xf4) {
      len = 4;
      min_value = 0x10000;
    } else {
      throw DecodeError("invalid UTF-8 lead byte", i);
    }
    if (i + len > n) throw DecodeError("truncated UTF-8 sequence", i);
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xc0) != 0x80) {
        throw DecodeError("invalid UTF-8 continuation byte", i);
      }
    }
    const char32_t cp = decode_at(text, i).value;
    if (cp < min_value) throw DecodeError("overlong UTF-8 sequence", i);
    if (cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) {
      throw DecodeError("invalid UTF-8 code point", i);
    }
    i += len;
  }
}

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const CodePoint cp = decode_at(text, i);
    if (cp.value < 0x80) {
      out.push_back(static_cast<char>(lower(cp.value)));
    } else {
      append_utf8(out, lower(cp.value));
    }
    i += cp.length;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const std::size_t n = sentence.size();
  while (i < n) {
    CodePoint cp = decode_at(sentence, i);
    if (is_space(cp.value)) {
      i += cp.length;
      continue;
    }
    std::vector<std::pair<std::size_t, std::size_t>> spans;  // code points
    while (i < n) {
      cp = decode_at(sentence, i);
      if (is_space(cp.value)) break;
      spans.emplace_back(i, cp.length);
      i += cp.length;
    }
    std::size_t lo = 0;
    std::size_t hi = spans.size();
    std::vector<std::string> trailing;
    while (lo < hi &&
           is_punct(decode_at(sentence, spans[lo].first).value)) {
      tokens.emplace_back(sentence.substr(spans[lo].first, spans[lo].second));
      ++lo;
    }
    while (hi > lo &&
           is_punct(decode_at(sentence, spans[hi - 1].first).value)) {
      trailing.emplace_back(
          sentence.substr(spans[hi - 1].first, spans[hi - 1].second));
      --hi;
    }
    if (lo < hi) {
      const std::size_t begin = spans[lo].first;
      const std::size_t end = spans[hi - 1].first + spans[hi - 1].second;
      tokens.emplace_back(sentence.substr(begin, end - begin));
    }
    tokens.insert(tokens.end(), std::make_move_iterator(trailing.rbegin()),
                  std::make_move_iterator(trailing.rend()));
  }
  return tokens;
}

TokenizedCorpus preprocess_corpus(std::string_view raw,
                                  const PreprocessConfig& config) {
  validate_utf8(raw);
  TokenizedCorpus corpus;
  const auto lines = split_lines(raw);

  auto flush = [&](std::vector<std::string_view>& block) {
    if (block.empty()) return;
    const std::string text = join(block);
    std::vector<std::string_view> pieces =
        block.size() > 1 ? block : split_sentences(block.front());
    Paragraph paragraph;
    for (std::string_view piece : pieces) {
      Sentence tokens = tokenize(to_lower(piece));
      if (!tokens.empty()) paragraph.push_back(std::move(tokens));
    }
    block.clear();
    if (paragraph.size() < config.min_sentences) return;
    if (count_code_points(text) < config.min_characters) return;
    corpus.paragraphs.push_back(std::move(paragraph));
  };

  std::vector<std::string_view> block;
  for (std::string_view line : lines) {
    if (is_blank(line)) {
      flush(block);
    } else {
      block.push_back(line);
    }
  }
  flush(block);
  return corpus;
}

TokenizedCorpus preprocess_corpus(std::istream& raw,
                                  const PreprocessConfig& config) {
  std::string text{std::istreambuf_iterator<char>(raw),
                   std::istreambuf_iterator<char>()};
  return preprocess_corpus(text, config);
}

void write_corpus(std::ostream& out, const TokenizedCorpus& corpus) {
  for (const auto& paragraph : corpus.paragraphs) {
    for (const auto& sentence : paragraph) {
      for (std::size_t i = 0; i < sentence.size(); ++i) {
        if (i > 0) out << ' ';
        out << sentence[i];
      }
      out << '\n';
    }
    out << '\n';
  }
}

TokenizedCorpus read_corpus(std::istream& in) {
  TokenizedCorpus corpus;
  Paragraph paragraph;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!paragraph.empty()) corpus.paragraphs.push_back(std::move(paragraph));
      paragraph.clear();
      continue;
    }
    Sentence sentence;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t end = line.find(' ', start);
      if (end == std::string::npos) end = line.size();
      if (end == start) {
        throw FormatError("empty token in corpus line " +
                          std::to_string(line_no));
      }
      sentence.emplace_back(line, start, end - start);
      start = end + 1;
    }
    paragraph.push_back(std::move(sentence));
  }
  if (!paragraph.empty()) corpus.paragraphs.push_back(std::move(paragraph));
  return corpus;
}

Vocabulary::Vocabulary(std::vector<VocabEntry> entries)
    : entries_(std::move(entries)) {
  if (entries_.size() >= kOov) throw ContractViolation("vocabulary too large");
  index_.reserve(entries_.size());
  for (std::uint32_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].count == 0) {
      throw FormatError("vocabulary count must be positive: " +
                        entries_[i].word);
    }
    if (!index_.emplace(entries_[i].word, i).second) {
      throw FormatError("duplicate vocabulary word: " + entries_[i].word);
    }
  }
}

std::vector<std::string> Vocabulary::words() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.word);
  return out;
}

std::uint32_t Vocabulary::id(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? kOov : it->second;
}

Vocabulary build_vocabulary(const TokenizedCorpus& corpus,
                            std::uint64_t min_count, std::size_t max_size) {
  if (min_count < 1 || max_size < 1) {
    throw ContractViolation("min_count and max_size must be at least 1");
  }
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& paragraph : corpus.paragraphs) {
    for (const auto& sentence : paragraph) {
      for (const auto& token : sentence) ++counts[token];
    }
  }
  std::vector<VocabEntry> entries;
  for (auto& [word, count] : counts) {
    if (count >= min_count) entries.push_back({word, count});
  }
  std::sort(entries.begin(), entries.end(),
            [](const VocabEntry& a, const VocabEntry& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.word < b.word;
            });
  if (entries.size() > max_size) entries.resize(max_size);
  if (entries.empty()) throw EmptyVocabulary();
  return Vocabulary(std::move(entries));
}

void write_vocabulary(std::ostream& out, const Vocabulary& vocab) {
  for (const auto& e : vocab.entries()) out << e.word << '\t' << e.count << '\n';
}

Vocabulary read_vocabulary(std::istream& in) {
  std::vector<VocabEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw FormatError("bad vocabulary line " + std::to_string(line_no));
    }
    VocabEntry e;
    e.word = line.substr(0, tab);
    std::istringstream count(line.substr(tab + 1));
    if (!(count >> e.count)) {
      throw FormatError("bad count on vocabulary line " +
                        std::to_string(line_no));
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw EmptyVocabulary();
  return Vocabulary(std::move(entries));
}

std::size_t EncodedCorpus::sentence_count() const {
  std::size_t n = 0;
  for (const auto& p : paragraphs) n += p.size();
  return n;
}

std::size_t EncodedCorpus::token_count() const {
  std::size_t n = 0;
  for (const auto& p : paragraphs) {
    for (const auto& s : p) n += s.size();
  }
  return n;
}

EncodedCorpus encode_corpus(const TokenizedCorpus& corpus,
                            const Vocabulary& vocab) {
  EncodedCorpus out;
  out.paragraphs.reserve(corpus.paragraphs.size());
  for (const auto& paragraph : corpus.paragraphs) {
    EncodedParagraph ep;
    ep.reserve(paragraph.size());
    for (const auto& sentence : paragraph) {
      EncodedSentence es;
      es.reserve(sentence.size());
      for (const auto& token : sentence) es.push_back(vocab.id(token));
      ep.push_back(std::move(es));
    }
    out.paragraphs.push_back(std::move(ep));
  }
  return out;
}

TokenizedCorpus decode_corpus(const EncodedCorpus& corpus,
                              const Vocabulary& vocab,
                              std::string_view oov_text) {
  TokenizedCorpus out;
  for (const auto& paragraph : corpus.paragraphs) {
    Paragraph p;
    for (const auto& sentence : paragraph) {
      Sentence s;
      for (std::uint32_t id : sentence) {
        s.emplace_back(id == Vocabulary::kOov ? std::string(oov_text)
                                              : vocab.word(id));
      }
      p.push_back(std::move(s));
    }
    out.paragraphs.push_back(std::move(p));
  }
  return out;
}

}  // namespace x2s
