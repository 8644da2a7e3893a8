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
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "x2s/errors.hpp"

namespace x2s {

/// Dense row-major matrix, one row per word.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return cols_; }

  std::span<T> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const T> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using EmbeddingMatrix = Matrix<float>;

/// Seeded uniform initialization in [-0.5/dim, 0.5/dim].
EmbeddingMatrix init_embedding(std::size_t rows, std::size_t dim,
                               std::uint64_t seed);

/// Vectors paired with the words they embed (row i belongs to words[i]).
class WordEmbeddings {
 public:
  WordEmbeddings() = default;
  WordEmbeddings(std::vector<std::string> words, EmbeddingMatrix vectors);

  const std::vector<std::string>& words() const { return words_; }
  const EmbeddingMatrix& vectors() const { return vectors_; }
  std::size_t size() const { return words_.size(); }
  std::size_t dim() const { return vectors_.cols(); }

  /// Row index of `word`, or -1.
  std::ptrdiff_t find(std::string_view word) const;

 private:
  std::vector<std::string> words_;
  EmbeddingMatrix vectors_;
  std::unordered_map<std::string, std::size_t> index_;
};

// word2vec text format: "<count> <dim>" then "word v1 ... vdim" with 9
// significant digits so every f32 value round-trips exactly.
void write_word2vec_text(std::ostream& out, const WordEmbeddings& emb);
WordEmbeddings read_word2vec_text(std::istream& in);

void save_word2vec_text(const std::string& path, const WordEmbeddings& emb);
WordEmbeddings load_word2vec_text(const std::string& path);

// Binary checkpoint: u32 dim, u32 rows, then rows * dim little-endian f32.
void write_checkpoint(std::ostream& out, const EmbeddingMatrix& m);
EmbeddingMatrix read_checkpoint(std::istream& in);

}  // namespace x2s
