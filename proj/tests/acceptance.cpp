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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "test_support.hpp"
#include "x2s/adam.hpp"
#include "x2s/ase.hpp"
#include "x2s/eval.hpp"
#include "x2s/mock_teacher.hpp"
#include "x2s/pipeline.hpp"
#include "x2s/teacher_stream.hpp"
#include "x2s/trainer.hpp"

using namespace x2s;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [failed]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Planted corpus shared by the recovery, sweep and determinism criteria.
struct PlantedWorld {
  std::vector<std::string> words = synthetic_words(2000);
  PlantedSpace planted = make_planted_space(words, 32, 2026);
  Vocabulary vocab;
  EncodedCorpus corpus;
  SimilarityDataset gold = planted_similarity_pairs(planted, 1000, 77);

  PlantedWorld() {
    SyntheticCorpusConfig sc;
    sc.sentences = 200000;
    sc.min_length = 5;
    sc.max_length = 20;
    sc.seed = 2027;
    const auto text = synthesize_corpus(words, sc);
    vocab = build_vocabulary(text, 10, 750000);
    corpus = encode_corpus(text, vocab);
  }

  void export_stream(const std::string& path, double noise) const {
    MockTeacherConfig mc;
    mc.mode = MockMode::planted;
    mc.dim = 32;
    mc.noise = noise;
    mc.seed = 2028;
    std::ofstream out(path, std::ios::binary);
    mock_teacher_encode(corpus, vocab, mc, &planted, out);
  }
};

Outcome numerical_core() {
  Outcome o;
  double worst = 0.0;
  for (int i = 0; i <= 600; ++i) {
    const double x = -30.0 + i * 0.1;
    worst = std::max(worst, std::fabs(logistic_loss(x) - logistic_loss(-x) + x));
  }
  o.require(worst <= 1e-12, "loss identity max err " + fmt("%.2e", worst));

  std::mt19937_64 rng(101);
  std::normal_distribution<double> nd;
  auto vec = [&] {
    std::vector<double> v(8);
    for (auto& x : v) x = nd(rng);
    return v;
  };
  auto loss = [](const std::vector<double>& u, const std::vector<double>& v,
                 const std::vector<std::vector<double>>& n) {
    std::vector<std::span<const double>> s(n.begin(), n.end());
    return pair_loss<double>(u, v, s).loss;
  };
  double worst_rel = 0.0;
  const double h = 1e-5;
  for (int inst = 0; inst < 100; ++inst) {
    auto u = vec();
    auto v = vec();
    std::vector<std::vector<double>> negs;
    for (int k = 0; k < 10; ++k) negs.push_back(vec());
    std::vector<std::span<const double>> spans(negs.begin(), negs.end());
    const auto pl = pair_loss<double>(u, v, spans);
    auto probe = [&](std::vector<double>& x, const std::vector<double>& g) {
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double keep = x[j];
        x[j] = keep + h;
        const double up = loss(u, v, negs);
        x[j] = keep - h;
        const double down = loss(u, v, negs);
        x[j] = keep;
        const double numeric = (up - down) / (2 * h);
        const double rel =
            std::fabs(numeric - g[j]) / std::max(1e-3, std::fabs(g[j]));
        worst_rel = std::max(worst_rel, rel);
      }
    };
    probe(u, pl.grad_target);
    probe(v, pl.grad_context);
    for (std::size_t k = 0; k < negs.size(); ++k) probe(negs[k], pl.grad_negatives[k]);
  }
  o.require(worst_rel < 1e-6, "gradient max rel err " + fmt("%.2e", worst_rel));

  Matrix<double> p(1, 8);
  Matrix<double> g(1, 8);
  for (std::size_t j = 0; j < 8; ++j) {
    p(0, j) = nd(rng);
    g(0, j) = nd(rng) * std::pow(10.0, static_cast<double>(j) - 4);
  }
  const Matrix<double> p0 = p;
  AdamState<double> state(1, 8);
  const AdamConfig cfg;
  const std::uint32_t rows[] = {0};
  lazy_adam_step(p, state, rows, g, cfg);
  double worst_adam = 0.0;
  for (std::size_t j = 0; j < 8; ++j) {
    const double m_hat = (1 - cfg.beta1) * g(0, j) / (1 - cfg.beta1);
    const double v_hat = (1 - cfg.beta2) * g(0, j) * g(0, j) / (1 - cfg.beta2);
    const double want = p0(0, j) - cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.eps);
    worst_adam = std::max(worst_adam, std::fabs(p(0, j) - want));
  }
  o.require(worst_adam <= 1e-12, "first Adam step err " + fmt("%.2e", worst_adam));
  return o;
}

Outcome sampling() {
  Outcome o;
  std::vector<VocabEntry> entries;
  const std::uint64_t counts[] = {5000, 2100, 900, 640, 300, 120, 81, 40, 16, 3};
  for (int i = 0; i < 10; ++i) entries.push_back({"v" + std::to_string(i), counts[i]});
  const Vocabulary vocab(entries);
  NegativeTable table(vocab);
  double z = 0.0;
  for (auto c : counts) z += std::pow(static_cast<double>(c), 0.75);
  Rng rng(55);
  std::vector<std::uint64_t> hits(10, 0);
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) ++hits[table.draw(rng)];
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double want = std::pow(static_cast<double>(counts[i]), 0.75) / z;
    worst = std::max(worst, std::fabs(hits[i] / double(draws) - want));
  }
  o.require(worst <= 0.005, "negative freq max dev " + fmt("%.5f", worst));

  Rng keep_rng(56);
  std::uint64_t kept = 0;
  const int trials = 1000000;
  for (int i = 0; i < trials; ++i) kept += keep_target(0.05, 5e-6, keep_rng);
  const double rate = kept / double(trials);
  o.require(std::fabs(rate - 0.0101) <= 0.003, "keep rate " + fmt("%.5f", rate));
  return o;
}

Outcome planted_recovery(const PlantedWorld& world, const std::string& stream_path) {
  Outcome o;
  const auto t0 = Clock::now();
  StreamFile stream(stream_path);
  TrainerConfig cfg;
  const auto result = distill(stream, world.vocab, cfg);
  const WordEmbeddings emb(world.vocab.words(), result.target);
  const auto report = evaluate_dataset(emb, world.gold);
  const double secs = seconds_since(t0);
  o.require(report.pairs_scored == 1000, "pairs scored " + std::to_string(report.pairs_scored));
  o.require(report.spearman_rho >= 0.80, "rho " + fmt("%.4f", report.spearman_rho) + " (need >= 0.80)");
  o.require(secs < 600.0, "train+eval " + fmt("%.1f", secs) + " s");
  return o;
}

Outcome sweep_trend(const PlantedWorld& world, const std::string& clean_path,
                    const std::string& noisy_path) {
  Outcome o;
  StreamFile noisy(noisy_path);
  SweepConfig cfg;
  cfg.fractions = {0.05, 0.25, 1.0};
  const auto rows = sweep(noisy, world.vocab, {world.gold}, cfg);
  double first = NAN, last = NAN;
  std::string trace;
  for (const auto& r : rows) {
    trace += (trace.empty() ? "" : " ") + r.method + "@" + fmt("%g", r.fraction) +
             "=" + fmt("%.4f", r.rho);
    if (r.method != "distilled") continue;
    if (r.fraction == 0.05) first = r.rho;
    if (r.fraction == 1.0) last = r.rho;
  }
  o.require(last > first, "distilled rho(1.0) > rho(0.05): " + trace);

  StreamFile clean(clean_path);
  AseAccumulator acc(world.vocab.size(), 32);
  SentenceRecord rec;
  while (clean.next(rec)) acc.accumulate(rec);
  const auto ase = ase_finalize(acc);
  double worst = 0.0;
  for (std::size_t i = 0; i < ase.ids.size(); ++i) {
    const auto row = world.planted.space.vectors().row(
        world.planted.space.find(world.vocab.word(ase.ids[i])));
    for (std::size_t j = 0; j < 32; ++j) {
      worst = std::max(worst, std::fabs(ase.means(i, j) - static_cast<double>(row[j])));
    }
  }
  o.require(ase.seen > 0 && worst <= 1e-9,
            "ASE exact recovery over " + std::to_string(ase.seen) +
                " words, max err " + fmt("%.2e", worst));
  return o;
}

Outcome determinism(const PlantedWorld& world, const std::string& stream_path,
                    const test::TempDir& dir) {
  Outcome o;
  TrainerConfig cfg;
  cfg.threads = 1;
  for (int run = 0; run < 2; ++run) {
    StreamFile stream(stream_path);
    const auto r = distill(stream, world.vocab, cfg);
    save_word2vec_text(dir.file("run" + std::to_string(run) + ".vec"),
                       WordEmbeddings(world.vocab.words(), r.target));
  }
  const std::string a = test::slurp(dir.file("run0.vec"));
  o.require(!a.empty() && a == test::slurp(dir.file("run1.vec")),
            "two runs byte-identical");

  const std::string bytes = test::slurp(stream_path);
  std::istringstream in(bytes, std::ios::binary);
  StreamReader reader(in);
  std::ostringstream out(std::ios::binary);
  StreamWriter writer(out, reader.header());
  for (const auto& r : reader) writer.write(r);
  o.require(out.str() == bytes, "stream re-encode byte-identical (" +
                                    std::to_string(bytes.size()) + " bytes)");

  const auto emb = load_word2vec_text(dir.file("run0.vec"));
  std::ostringstream re;
  write_word2vec_text(re, emb);
  StreamFile stream(stream_path);
  const auto fresh = distill(stream, world.vocab, cfg);
  bool bits = fresh.target.data().size() == emb.vectors().data().size();
  for (std::size_t i = 0; bits && i < fresh.target.data().size(); ++i) {
    bits = std::bit_cast<std::uint32_t>(fresh.target.data()[i]) ==
           std::bit_cast<std::uint32_t>(emb.vectors().data()[i]);
  }
  o.require(bits && re.str() == a, "embedding text round trip bit-exact");

  std::mt19937_64 rng(4242);
  std::vector<double> x(1000), y(1000);
  for (std::size_t i = 0; i < 1000; ++i) {
    x[i] = static_cast<double>(rng() % 1000) / 10.0;
    y[i] = std::normal_distribution<double>(x[i], 20.0)(rng);
    if (i % 5 == 0) x[i] = std::round(x[i] / 10.0) * 10.0;
    if (i % 7 == 0) y[i] = std::round(y[i]);
  }
  const double diff = std::fabs(spearman_rho(x, y) - test::brute_force_spearman(x, y));
  o.require(diff <= 1e-12, "spearman vs oracle " + fmt("%.2e", diff));
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](const char* name, const std::function<Outcome()>& fn) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s  %-28s %7.1fs  %s\n", o.pass ? "PASS" : "FAIL", name,
                seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
  };

  report("numerical-core", numerical_core);
  report("sampling", sampling);

  test::TempDir dir;
  const std::string clean = dir.file("planted_clean.x2sv");
  const std::string noisy = dir.file("planted_noisy.x2sv");
  PlantedWorld world;
  world.export_stream(clean, 0.0);
  world.export_stream(noisy, 0.5);

  report("planted-recovery", [&] { return planted_recovery(world, clean); });
  report("distilled-vs-ase-trend", [&] { return sweep_trend(world, clean, noisy); });
  report("determinism-and-formats", [&] { return determinism(world, clean, dir); });

  std::printf("%d of 5 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
