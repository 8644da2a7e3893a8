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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "x2s/errors.hpp"
#include "x2s/half.hpp"
#include "x2s/teacher_stream.hpp"

using namespace x2s;

namespace {

std::vector<SentenceRecord> random_records(std::size_t count, std::size_t dim,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> d;
  std::vector<SentenceRecord> out;
  for (std::size_t r = 0; r < count; ++r) {
    SentenceRecord rec;
    rec.paragraph_id = static_cast<std::uint32_t>(r / 3);
    rec.sentence_index = static_cast<std::uint32_t>(r % 3);
    const std::size_t n = 1 + rng() % 9;
    for (std::size_t i = 0; i < n; ++i) {
      rec.token_ids.push_back(rng() % 5 == 0 ? 0xFFFFFFFFu
                                             : static_cast<std::uint32_t>(rng() % 50));
    }
    for (std::size_t i = 0; i < n * dim; ++i) rec.vectors.push_back(d(rng));
    out.push_back(std::move(rec));
  }
  return out;
}

std::string encode(const StreamHeader& h, const std::vector<SentenceRecord>& r) {
  std::ostringstream out(std::ios::binary);
  write_stream(h, r, out);
  return out.str();
}

std::vector<SentenceRecord> decode(const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  StreamReader reader(in);
  std::vector<SentenceRecord> out;
  for (const auto& rec : reader) out.push_back(rec);
  return out;
}

}  // namespace

TEST_CASE("header layout") {
  const std::string bytes =
      encode({kStreamVersion, 7, Scope::paragraph, DType::f16}, {});
  REQUIRE(bytes.size() == 16);
  CHECK(bytes.substr(0, 4) == "X2SV");
  CHECK(bytes[4] == 1);
  CHECK(bytes[8] == 7);
  CHECK(bytes[12] == 1);
  CHECK(bytes[13] == 1);
  CHECK(bytes[14] == 0);
  CHECK(bytes[15] == 0);
  std::istringstream in(bytes);
  StreamReader reader(in);
  CHECK(reader.header().dim == 7);
  CHECK(reader.header().scope == Scope::paragraph);
  SentenceRecord rec;
  CHECK(!reader.next(rec));
}

TEST_CASE("record layout is little-endian ids then vectors") {
  SentenceRecord rec{2, 5, {1, 0xFFFFFFFFu}, {1.0f, 2.0f, 3.0f, 4.0f}};
  const std::string bytes = encode({kStreamVersion, 2, Scope::sentence, DType::f32}, {rec});
  REQUIRE(bytes.size() == 16 + 12 + 8 + 16);
  CHECK(bytes[16] == 2);
  CHECK(bytes[20] == 5);
  CHECK(bytes[24] == 2);
  CHECK(bytes[28] == 1);
  CHECK(static_cast<unsigned char>(bytes[32]) == 0xff);
  float first;
  std::memcpy(&first, bytes.data() + 36, 4);
  CHECK(first == 1.0f);
}

TEST_CASE("f32 round trip is bit-exact and re-encoding is byte-identical") {
  const StreamHeader h{kStreamVersion, 6, Scope::sentence, DType::f32};
  const auto records = random_records(40, 6, 1);
  const std::string bytes = encode(h, records);
  const auto back = decode(bytes);
  CHECK(back == records);
  CHECK(encode(h, back) == bytes);
}

TEST_CASE("f16 stream widens within half precision") {
  const StreamHeader h{kStreamVersion, 5, Scope::paragraph, DType::f16};
  const auto records = random_records(30, 5, 2);
  const std::string bytes = encode(h, records);
  const auto back = decode(bytes);
  REQUIRE(back.size() == records.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    CHECK(back[r].token_ids == records[r].token_ids);
    for (std::size_t i = 0; i < records[r].vectors.size(); ++i) {
      const float want = records[r].vectors[i];
      const float got = back[r].vectors[i];
      CHECK(got == half_to_float(float_to_half(want)));
      CHECK(std::fabs(got - want) <= std::ldexp(std::fabs(want), -10) + 1e-7f);
    }
  }
  CHECK(encode(h, back) == bytes);
}

TEST_CASE("writer rejects invalid records before emitting bytes") {
  const StreamHeader h{kStreamVersion, 2, Scope::sentence, DType::f32};
  std::ostringstream out;
  StreamWriter w(out, h);
  const auto before = out.str().size();
  SentenceRecord nan_rec{0, 0, {1}, {1.0f, std::numeric_limits<float>::quiet_NaN()}};
  CHECK_THROWS_AS(w.write(nan_rec), FormatError);
  SentenceRecord inf_rec{0, 0, {1}, {std::numeric_limits<float>::infinity(), 0.0f}};
  CHECK_THROWS_AS(w.write(inf_rec), FormatError);
  SentenceRecord wrong{0, 0, {1, 2}, {1.0f, 2.0f}};
  CHECK_THROWS_AS(w.write(wrong), FormatError);
  SentenceRecord empty{0, 0, {}, {}};
  CHECK_THROWS_AS(w.write(empty), FormatError);
  CHECK(out.str().size() == before);
  CHECK(w.records_written() == 0);
}

TEST_CASE("reader rejects bad headers") {
  std::string good = encode({kStreamVersion, 3, Scope::sentence, DType::f32}, {});
  auto check_bad = [](std::string bytes) {
    std::istringstream in(bytes);
    CHECK_THROWS_AS(StreamReader{in}, FormatError);
  };
  std::string magic = good;
  magic[3] = 'X';
  check_bad(magic);
  std::string version = good;
  version[4] = 2;
  check_bad(version);
  std::string dim = good;
  dim[8] = 0;
  check_bad(dim);
  std::string scope = good;
  scope[12] = 2;
  check_bad(scope);
  std::string dtype = good;
  dtype[13] = 9;
  check_bad(dtype);
  std::string reserved = good;
  reserved[15] = 1;
  check_bad(reserved);
  check_bad(good.substr(0, 10));
}

TEST_CASE("truncated streams name the record") {
  const StreamHeader h{kStreamVersion, 4, Scope::sentence, DType::f32};
  const auto records = random_records(5, 4, 3);
  const std::string bytes = encode(h, records);
  for (std::size_t cut : {bytes.size() - 1, bytes.size() - 17, std::size_t{16 + 5}}) {
    std::istringstream in(bytes.substr(0, cut));
    StreamReader reader(in);
    SentenceRecord rec;
    std::size_t read = 0;
    try {
      while (reader.next(rec)) ++read;
      FAIL("expected truncation");
    } catch (const TruncationError& e) {
      CHECK(e.record_index() == read);
    }
  }
}

TEST_CASE("reader rejects non-finite payloads") {
  const StreamHeader h{kStreamVersion, 1, Scope::sentence, DType::f32};
  std::string bytes = encode(h, {SentenceRecord{0, 0, {3}, {1.0f}}});
  const float nan = std::numeric_limits<float>::quiet_NaN();
  std::memcpy(bytes.data() + bytes.size() - 4, &nan, 4);
  std::istringstream in(bytes);
  StreamReader reader(in);
  SentenceRecord rec;
  CHECK_THROWS_AS(reader.next(rec), FormatError);
}

TEST_CASE("rewind, ids-only reads and record counting") {
  test::TempDir dir;
  const StreamHeader h{kStreamVersion, 3, Scope::sentence, DType::f16};
  const auto records = random_records(12, 3, 4);
  test::spit(dir.file("s.bin"), encode(h, records));
  StreamFile file(dir.file("s.bin"));
  CHECK(count_records(file) == 12);
  SentenceRecord rec;
  REQUIRE(file.next(rec));
  CHECK(rec.token_ids == records[0].token_ids);
  file.rewind();
  std::size_t n = 0;
  while (file.reader().next_ids(rec)) {
    CHECK(rec.token_ids == records[n].token_ids);
    ++n;
  }
  CHECK(n == 12);
  CHECK_THROWS_AS(StreamFile(dir.file("missing.bin")), Error);
}

TEST_CASE("memory and prefix sources") {
  const StreamHeader h{kStreamVersion, 2, Scope::sentence, DType::f32};
  MemorySource mem(h, random_records(10, 2, 5));
  PrefixSource prefix(mem, 4);
  CHECK(count_records(prefix) == 4);
  SentenceRecord rec;
  prefix.rewind();
  REQUIRE(prefix.next(rec));
  CHECK(rec == mem.records()[0]);
  CHECK(count_records(mem) == 10);
}
