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

// Teacher-vector exchange format.
//
//   header (16 bytes, little-endian)
//     magic "X2SV" | version u32 = 1 | dim u32 | scope u8 | dtype u8 | u16 0
//   records, repeated to EOF
//     paragraph_id u32 | sentence_index u32 | token_count u32
//     token_count x u32 vocabulary id (0xFFFFFFFF = out of vocabulary)
//     token_count x dim scalars (f32 or f16)

#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <iterator>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace x2s {

enum class Scope : std::uint8_t { sentence = 0, paragraph = 1 };
enum class DType : std::uint8_t { f32 = 0, f16 = 1 };

inline constexpr std::array<char, 4> kStreamMagic = {'X', '2', 'S', 'V'};
inline constexpr std::uint32_t kStreamVersion = 1;
inline constexpr std::size_t kStreamHeaderBytes = 16;

struct StreamHeader {
  std::uint32_t version = kStreamVersion;
  std::uint32_t dim = 0;
  Scope scope = Scope::sentence;
  DType dtype = DType::f32;
  bool operator==(const StreamHeader&) const = default;
};

/// Word-level teacher outputs for one sentence. `vectors` holds
/// token_ids.size() rows of `dim` floats, row-major.
struct SentenceRecord {
  std::uint32_t paragraph_id = 0;
  std::uint32_t sentence_index = 0;
  std::vector<std::uint32_t> token_ids;
  std::vector<float> vectors;

  std::size_t size() const { return token_ids.size(); }
  std::span<const float> vector(std::size_t i, std::size_t dim) const {
    return {vectors.data() + i * dim, dim};
  }
  bool operator==(const SentenceRecord&) const = default;
};

class StreamWriter {
 public:
  /// Writes the header immediately.
  StreamWriter(std::ostream& out, const StreamHeader& header);

  /// Validates the record (non-empty, dim-consistent, finite) before any of
  /// its bytes are written; throws FormatError otherwise.
  void write(const SentenceRecord& record);

  std::uint64_t bytes_written() const { return bytes_; }
  std::uint64_t records_written() const { return records_; }

 private:
  std::ostream& out_;
  StreamHeader header_;
  std::uint64_t bytes_ = 0;
  std::uint64_t records_ = 0;
  std::vector<std::uint16_t> half_buffer_;
};

/// Header plus every record; returns the byte count.
std::uint64_t write_stream(const StreamHeader& header,
                           std::span<const SentenceRecord> records,
                           std::ostream& out);

/// Sequential supplier of records, restartable from the first record.
class RecordSource {
 public:
  virtual ~RecordSource() = default;
  virtual const StreamHeader& header() const = 0;
  /// Fills `record` and returns true, or returns false at the end.
  virtual bool next(SentenceRecord& record) = 0;
  virtual void rewind() = 0;
};

/// Lazy reader over a seekable byte stream. The header is validated in the
/// constructor; records are decoded (f16 widened to f32) on demand.
class StreamReader : public RecordSource {
 public:
  explicit StreamReader(std::istream& in);

  const StreamHeader& header() const override { return header_; }
  bool next(SentenceRecord& record) override;
  void rewind() override;

  /// Reads ids only and seeks past the vectors.
  bool next_ids(SentenceRecord& record);

  std::uint64_t records_read() const { return index_; }

  class Iterator {
   public:
    using value_type = SentenceRecord;
    using difference_type = std::ptrdiff_t;
    Iterator() = default;
    explicit Iterator(StreamReader* reader) : reader_(reader) { ++*this; }
    const SentenceRecord& operator*() const { return current_; }
    const SentenceRecord* operator->() const { return &current_; }
    Iterator& operator++() {
      if (!reader_->next(current_)) reader_ = nullptr;
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const Iterator& a, std::default_sentinel_t) {
      return a.reader_ == nullptr;
    }

   private:
    StreamReader* reader_ = nullptr;
    SentenceRecord current_;
  };

  Iterator begin() { return Iterator(this); }
  std::default_sentinel_t end() { return {}; }

 private:
  bool read_record(SentenceRecord& record, bool with_vectors);

  std::istream& in_;
  StreamHeader header_;
  std::uint64_t index_ = 0;
  std::streamoff end_ = -1;
  std::vector<std::uint16_t> half_buffer_;
};

/// StreamReader that owns its file.
class StreamFile : public RecordSource {
 public:
  explicit StreamFile(const std::string& path);
  const StreamHeader& header() const override { return reader_->header(); }
  bool next(SentenceRecord& record) override { return reader_->next(record); }
  void rewind() override { reader_->rewind(); }
  StreamReader& reader() { return *reader_; }

 private:
  std::ifstream file_;
  std::unique_ptr<StreamReader> reader_;
};

class MemorySource : public RecordSource {
 public:
  MemorySource(StreamHeader header, std::vector<SentenceRecord> records)
      : header_(header), records_(std::move(records)) {}
  const StreamHeader& header() const override { return header_; }
  bool next(SentenceRecord& record) override;
  void rewind() override { pos_ = 0; }
  const std::vector<SentenceRecord>& records() const { return records_; }

 private:
  StreamHeader header_;
  std::vector<SentenceRecord> records_;
  std::size_t pos_ = 0;
};

/// The first `limit` records of another source.
class PrefixSource : public RecordSource {
 public:
  PrefixSource(RecordSource& inner, std::uint64_t limit)
      : inner_(inner), limit_(limit) {}
  const StreamHeader& header() const override { return inner_.header(); }
  bool next(SentenceRecord& record) override;
  void rewind() override;

 private:
  RecordSource& inner_;
  std::uint64_t limit_;
  std::uint64_t served_ = 0;
};

/// Number of records in a source; leaves it rewound.
std::uint64_t count_records(RecordSource& source);

}  // namespace x2s
