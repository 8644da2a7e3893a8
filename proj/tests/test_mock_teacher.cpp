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
#include <sstream>

#include "x2s/errors.hpp"
#include "x2s/mock_teacher.hpp"

using namespace x2s;

namespace {

struct Fixture {
  Vocabulary vocab{{{"the", 5}, {"cat", 3}, {"sat", 2}, {"mat", 1}}};
  TokenizedCorpus text;
  EncodedCorpus corpus;

  Fixture() {
    text.paragraphs = {
        {{"the", "cat", "sat"}, {"the", "mat"}, {"dog", "the"}},
        {{"the", "cat", "sat"}, {"cat"}},
    };
    corpus = encode_corpus(text, vocab);
  }
};

std::vector<SentenceRecord> drain(RecordSource& src) {
  std::vector<SentenceRecord> out;
  SentenceRecord rec;
  while (src.next(rec)) out.push_back(rec);
  return out;
}

}  // namespace

TEST_CASE("planted space rows are unit length and seeded") {
  const auto a = make_planted_space({"a", "b", "c"}, 8, 5);
  const auto b = make_planted_space({"a", "b", "c"}, 8, 5);
  CHECK(a.space.vectors() == b.space.vectors());
  for (std::size_t r = 0; r < 3; ++r) {
    double n2 = 0.0;
    for (float x : a.space.vectors().row(r)) n2 += double(x) * x;
    CHECK(std::fabs(std::sqrt(n2) - 1.0) < 1e-6);
  }
  CHECK(!(make_planted_space({"a", "b", "c"}, 8, 6).space.vectors() ==
          a.space.vectors()));
}

TEST_CASE("records mirror the corpus shape") {
  Fixture f;
  MockTeacherConfig cfg;
  cfg.dim = 6;
  MockTeacher teacher(f.corpus, f.vocab, cfg);
  CHECK(teacher.header().dim == 6);
  const auto recs = drain(teacher);
  REQUIRE(recs.size() == 5);
  CHECK(recs[2].paragraph_id == 0);
  CHECK(recs[2].sentence_index == 2);
  CHECK(recs[2].token_ids == f.corpus.paragraphs[0][2]);
  CHECK(recs[4].paragraph_id == 1);
  CHECK(recs[4].sentence_index == 1);
  for (const auto& r : recs) CHECK(r.vectors.size() == r.token_ids.size() * 6);
  teacher.rewind();
  CHECK(drain(teacher) == recs);
}

TEST_CASE("mock teacher is deterministic and seed-sensitive") {
  Fixture f;
  MockTeacherConfig cfg;
  std::ostringstream a, b, c;
  mock_teacher_encode(f.corpus, f.vocab, cfg, nullptr, a);
  mock_teacher_encode(f.corpus, f.vocab, cfg, nullptr, b);
  CHECK(a.str() == b.str());
  cfg.seed = 2;
  mock_teacher_encode(f.corpus, f.vocab, cfg, nullptr, c);
  CHECK(a.str() != c.str());
  CHECK(a.str().size() == c.str().size());
}

TEST_CASE("hash vectors depend on context and scope") {
  Fixture f;
  MockTeacherConfig cfg;
  cfg.dim = 4;
  MockTeacher sentence_scope(f.corpus, f.vocab, cfg);
  const auto s = drain(sentence_scope);
  // "the cat sat" appears in both paragraphs: identical under sentence scope.
  CHECK(s[0].vectors == s[3].vectors);
  // "the" in different sentences differs.
  CHECK(std::vector<float>(s[0].vectors.begin(), s[0].vectors.begin() + 4) !=
        std::vector<float>(s[1].vectors.begin(), s[1].vectors.begin() + 4));

  cfg.scope = Scope::paragraph;
  MockTeacher paragraph_scope(f.corpus, f.vocab, cfg);
  CHECK(paragraph_scope.header().scope == Scope::paragraph);
  const auto p = drain(paragraph_scope);
  CHECK(p[0].vectors != p[3].vectors);
}

TEST_CASE("planted mode reproduces planted rows, exactly without noise") {
  Fixture f;
  const auto planted = make_planted_space({"mat", "sat", "cat", "the"}, 8, 9);
  MockTeacherConfig cfg;
  cfg.mode = MockMode::planted;
  cfg.dim = 8;
  MockTeacher teacher(f.corpus, f.vocab, cfg, &planted);
  for (const auto& rec : drain(teacher)) {
    for (std::size_t i = 0; i < rec.size(); ++i) {
      if (rec.token_ids[i] == Vocabulary::kOov) continue;
      const auto row = planted.space.find(f.vocab.word(rec.token_ids[i]));
      const auto want = planted.space.vectors().row(row);
      const auto got = rec.vector(i, 8);
      CHECK(std::equal(got.begin(), got.end(), want.begin()));
    }
  }

  cfg.noise = 0.5;
  MockTeacher noisy(f.corpus, f.vocab, cfg, &planted);
  const auto recs = drain(noisy);
  for (const auto& rec : recs) {
    for (std::size_t i = 0; i < rec.size(); ++i) {
      if (rec.token_ids[i] == Vocabulary::kOov) continue;
      const auto row = planted.space.find(f.vocab.word(rec.token_ids[i]));
      const auto want = planted.space.vectors().row(row);
      const auto got = rec.vector(i, 8);
      double d2 = 0.0;
      for (std::size_t j = 0; j < 8; ++j) d2 += std::pow(double(got[j]) - want[j], 2);
      CHECK(std::fabs(std::sqrt(d2) - 0.5) < 1e-5);
    }
  }
  // The same word occurring twice gets different noise.
  CHECK(std::vector<float>(recs[0].vectors.begin(), recs[0].vectors.begin() + 8) !=
        std::vector<float>(recs[3].vectors.begin(), recs[3].vectors.begin() + 8));
}

TEST_CASE("planted mode preconditions") {
  Fixture f;
  MockTeacherConfig cfg;
  cfg.mode = MockMode::planted;
  cfg.dim = 8;
  CHECK_THROWS_AS(MockTeacher(f.corpus, f.vocab, cfg, nullptr), ContractViolation);
  const auto partial = make_planted_space({"the", "cat", "sat"}, 8, 1);
  CHECK_THROWS_AS(MockTeacher(f.corpus, f.vocab, cfg, &partial), CoverageError);
  const auto wrong_dim = make_planted_space({"mat", "sat", "cat", "the"}, 4, 1);
  CHECK_THROWS_AS(MockTeacher(f.corpus, f.vocab, cfg, &wrong_dim), ContractViolation);
}

TEST_CASE("f16 output halves the payload") {
  Fixture f;
  MockTeacherConfig cfg;
  cfg.dim = 16;
  std::ostringstream a, b;
  const auto full = mock_teacher_encode(f.corpus, f.vocab, cfg, nullptr, a);
  cfg.dtype = DType::f16;
  const auto half = mock_teacher_encode(f.corpus, f.vocab, cfg, nullptr, b);
  const std::uint64_t tokens = f.corpus.token_count();
  CHECK(full - half == tokens * 16 * 2);
  CHECK(full == a.str().size());
}
