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

#include "x2s/teacher_stream.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "binary_io.hpp"
#include "x2s/errors.hpp"
#include "x2s/simd.hpp"

namespace x2s {
namespace {

// Guards allocations against corrupt token counts.
constexpr std::uint32_t kMaxTokensPerRecord = 1u << 24;

std::size_t scalar_bytes(DType dtype) { return dtype == DType::f16 ? 2 : 4; }

}  // namespace

StreamWriter::StreamWriter(std::ostream& out, const StreamHeader& header)
    : out_(out), header_(header) {
  if (header.version != kStreamVersion) {
    throw FormatError("unsupported stream version " +
                      std::to_string(header.version));
  }
  if (header.dim == 0) throw FormatError("stream dim must be at least 1");
  out_.write(kStreamMagic.data(), kStreamMagic.size());
  io::put<std::uint32_t>(out_, header.version);
  io::put<std::uint32_t>(out_, header.dim);
  io::put<std::uint8_t>(out_, static_cast<std::uint8_t>(header.scope));
  io::put<std::uint8_t>(out_, static_cast<std::uint8_t>(header.dtype));
  io::put<std::uint16_t>(out_, 0);
  bytes_ = kStreamHeaderBytes;
}

void StreamWriter::write(const SentenceRecord& record) {
  const std::size_t n = record.token_ids.size();
  const std::size_t dim = header_.dim;
  if (n == 0) {
    throw FormatError("record " + std::to_string(records_) + " has no tokens");
  }
  if (record.vectors.size() != n * dim) {
    throw FormatError("record " + std::to_string(records_) + " has " +
                      std::to_string(record.vectors.size()) +
                      " scalars, expected " + std::to_string(n * dim));
  }
  for (float x : record.vectors) {
    if (!std::isfinite(x)) {
      throw FormatError("record " + std::to_string(records_) +
                        " has a non-finite component");
    }
  }
  io::put<std::uint32_t>(out_, record.paragraph_id);
  io::put<std::uint32_t>(out_, record.sentence_index);
  io::put<std::uint32_t>(out_, static_cast<std::uint32_t>(n));
  io::put_span<std::uint32_t>(out_, record.token_ids);
  if (header_.dtype == DType::f32) {
    io::put_span<float>(out_, record.vectors);
  } else {
    half_buffer_.resize(record.vectors.size());
    simd::active().float_to_half(record.vectors.data(), half_buffer_.data(),
                                 record.vectors.size());
    io::put_span<std::uint16_t>(out_, half_buffer_);
  }
  if (!out_) throw Error("stream write failed");
  bytes_ += 12 + 4 * n + scalar_bytes(header_.dtype) * n * dim;
  ++records_;
}

std::uint64_t write_stream(const StreamHeader& header,
                           std::span<const SentenceRecord> records,
                           std::ostream& out) {
  StreamWriter writer(out, header);
  for (const auto& r : records) writer.write(r);
  return writer.bytes_written();
}

StreamReader::StreamReader(std::istream& in) : in_(in) {
  std::array<char, 4> magic{};
  in_.read(magic.data(), magic.size());
  if (in_.gcount() != 4) throw FormatError("stream header truncated");
  if (magic != kStreamMagic) throw FormatError("bad stream magic");
  std::uint8_t scope = 0;
  std::uint8_t dtype = 0;
  std::uint16_t reserved = 0;
  if (!io::get(in_, header_.version) || !io::get(in_, header_.dim) ||
      !io::get(in_, scope) || !io::get(in_, dtype) || !io::get(in_, reserved)) {
    throw FormatError("stream header truncated");
  }
  if (header_.version != kStreamVersion) {
    throw FormatError("unsupported stream version " +
                      std::to_string(header_.version));
  }
  if (header_.dim == 0) throw FormatError("stream dim is zero");
  if (scope > 1) throw FormatError("bad stream scope " + std::to_string(scope));
  if (dtype > 1) throw FormatError("bad stream dtype " + std::to_string(dtype));
  if (reserved != 0) throw FormatError("reserved header field is not zero");
  header_.scope = static_cast<Scope>(scope);
  header_.dtype = static_cast<DType>(dtype);
  const auto here = in_.tellg();
  if (here >= 0) {
    in_.seekg(0, std::ios::end);
    end_ = in_.tellg();
    in_.seekg(here);
  }
}

bool StreamReader::read_record(SentenceRecord& record, bool with_vectors) {
  std::uint32_t paragraph_id = 0;
  in_.read(reinterpret_cast<char*>(&paragraph_id), 4);
  if (in_.gcount() == 0 && in_.eof()) return false;
  if (in_.gcount() != 4) throw TruncationError("record header cut", index_);
  record.paragraph_id = io::to_little(paragraph_id);
  std::uint32_t count = 0;
  if (!io::get(in_, record.sentence_index) || !io::get(in_, count)) {
    throw TruncationError("record header cut", index_);
  }
  if (count > kMaxTokensPerRecord) {
    throw FormatError("implausible token count " + std::to_string(count) +
                      " in record " + std::to_string(index_));
  }
  record.token_ids.resize(count);
  if (!io::get_span<std::uint32_t>(in_, record.token_ids)) {
    throw TruncationError("token ids cut", index_);
  }
  const std::size_t scalars = static_cast<std::size_t>(count) * header_.dim;
  if (!with_vectors) {
    record.vectors.clear();
    const auto skip =
        static_cast<std::streamoff>(scalars * scalar_bytes(header_.dtype));
    const auto here = in_.tellg();
    if (end_ >= 0 && end_ - here < skip) {
      throw TruncationError("vectors cut", index_);
    }
    in_.seekg(here + skip);
    ++index_;
    return true;
  }
  record.vectors.resize(scalars);
  if (header_.dtype == DType::f32) {
    if (!io::get_span<float>(in_, record.vectors)) {
      throw TruncationError("vectors cut", index_);
    }
  } else {
    half_buffer_.resize(scalars);
    if (!io::get_span<std::uint16_t>(in_, half_buffer_)) {
      throw TruncationError("vectors cut", index_);
    }
    simd::active().half_to_float(half_buffer_.data(), record.vectors.data(),
                                 scalars);
  }
  for (float x : record.vectors) {
    if (!std::isfinite(x)) {
      throw FormatError("non-finite vector component in record " +
                        std::to_string(index_));
    }
  }
  ++index_;
  return true;
}

bool StreamReader::next(SentenceRecord& record) {
  return read_record(record, true);
}

bool StreamReader::next_ids(SentenceRecord& record) {
  return read_record(record, false);
}

void StreamReader::rewind() {
  in_.clear();
  in_.seekg(static_cast<std::streamoff>(kStreamHeaderBytes));
  index_ = 0;
}

StreamFile::StreamFile(const std::string& path)
    : file_(path, std::ios::binary) {
  if (!file_) throw Error("cannot open stream: " + path);
  reader_ = std::make_unique<StreamReader>(file_);
}

bool MemorySource::next(SentenceRecord& record) {
  if (pos_ >= records_.size()) return false;
  record = records_[pos_++];
  return true;
}

bool PrefixSource::next(SentenceRecord& record) {
  if (served_ >= limit_) return false;
  if (!inner_.next(record)) return false;
  ++served_;
  return true;
}

void PrefixSource::rewind() {
  inner_.rewind();
  served_ = 0;
}

std::uint64_t count_records(RecordSource& source) {
  source.rewind();
  std::uint64_t n = 0;
  SentenceRecord record;
  if (auto* reader = dynamic_cast<StreamReader*>(&source)) {
    while (reader->next_ids(record)) ++n;
  } else if (auto* file = dynamic_cast<StreamFile*>(&source)) {
    while (file->reader().next_ids(record)) ++n;
  } else {
    while (source.next(record)) ++n;
  }
  source.rewind();
  return n;
}

}  // namespace x2s
