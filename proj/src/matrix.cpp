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

#include "x2s/matrix.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "binary_io.hpp"
#include "x2s/rng.hpp"

namespace x2s {

EmbeddingMatrix init_embedding(std::size_t rows, std::size_t dim,
                               std::uint64_t seed) {
  EmbeddingMatrix m(rows, dim);
  Rng rng(mix64(seed ^ 0x1a2b3c4d5e6f7788ULL));
  const double half_width = 0.5 / static_cast<double>(dim);
  for (float& x : m.data()) {
    x = static_cast<float>((2.0 * uniform01(rng) - 1.0) * half_width);
  }
  return m;
}

WordEmbeddings::WordEmbeddings(std::vector<std::string> words,
                               EmbeddingMatrix vectors)
    : words_(std::move(words)), vectors_(std::move(vectors)) {
  if (words_.size() != vectors_.rows()) {
    throw ContractViolation("word list and matrix row count differ");
  }
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second) {
      throw FormatError("duplicate word in embeddings: " + words_[i]);
    }
  }
}

std::ptrdiff_t WordEmbeddings::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

void write_word2vec_text(std::ostream& out, const WordEmbeddings& emb) {
  const auto& m = emb.vectors();
  out << emb.size() << ' ' << emb.dim() << '\n';
  char buf[32];
  for (std::size_t r = 0; r < emb.size(); ++r) {
    out << emb.words()[r];
    for (float x : m.row(r)) {
      std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(x));
      out << ' ' << buf;
    }
    out << '\n';
  }
}

WordEmbeddings read_word2vec_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("embedding file is empty");
  std::size_t count = 0;
  std::size_t dim = 0;
  {
    std::istringstream header(line);
    if (!(header >> count >> dim) || dim == 0) {
      throw FormatError("bad embedding header: '" + line + "'");
    }
  }
  std::vector<std::string> words;
  words.reserve(count);
  EmbeddingMatrix m(count, dim);
  for (std::size_t r = 0; r < count; ++r) {
    if (!std::getline(in, line)) {
      throw FormatError("embedding file ends after " + std::to_string(r) +
                        " of " + std::to_string(count) + " rows");
    }
    const char* p = line.data();
    const char* end = p + line.size();
    const char* word_end = p;
    while (word_end < end && *word_end != ' ') ++word_end;
    words.emplace_back(p, word_end);
    p = word_end;
    auto row = m.row(r);
    for (std::size_t c = 0; c < dim; ++c) {
      while (p < end && *p == ' ') ++p;
      auto [next, ec] = std::from_chars(p, end, row[c]);
      if (ec != std::errc()) {
        throw FormatError("bad value in embedding row " + std::to_string(r));
      }
      p = next;
    }
  }
  return WordEmbeddings(std::move(words), std::move(m));
}

void save_word2vec_text(const std::string& path, const WordEmbeddings& emb) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  write_word2vec_text(out, emb);
  if (!out) throw Error("write failed: " + path);
}

WordEmbeddings load_word2vec_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  return read_word2vec_text(in);
}

void write_checkpoint(std::ostream& out, const EmbeddingMatrix& m) {
  io::put<std::uint32_t>(out, static_cast<std::uint32_t>(m.cols()));
  io::put<std::uint32_t>(out, static_cast<std::uint32_t>(m.rows()));
  io::put_span<float>(out, m.data());
}

EmbeddingMatrix read_checkpoint(std::istream& in) {
  std::uint32_t dim = 0;
  std::uint32_t rows = 0;
  if (!io::get(in, dim) || !io::get(in, rows)) {
    throw FormatError("checkpoint header truncated");
  }
  if (dim == 0) throw FormatError("checkpoint dim is zero");
  EmbeddingMatrix m(rows, dim);
  if (!io::get_span<float>(in, m.data())) {
    throw FormatError("checkpoint rows truncated");
  }
  return m;
}

}  // namespace x2s
