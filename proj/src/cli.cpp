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

#include "x2s/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "x2s/ase.hpp"
#include "x2s/corpus.hpp"
#include "x2s/errors.hpp"
#include "x2s/eval.hpp"
#include "x2s/matrix.hpp"
#include "x2s/mock_teacher.hpp"
#include "x2s/pipeline.hpp"
#include "x2s/simd.hpp"
#include "x2s/teacher_stream.hpp"
#include "x2s/trainer.hpp"

#ifndef X2S_VERSION
#define X2S_VERSION "0.0.0"
#endif

namespace x2s::cli {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Shortest round-trip form with a compact exponent: 5e-06 -> 5e-6.
std::string fmt_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, end);
  const auto e = s.find('e');
  if (e != std::string::npos) {
    std::size_t digits = e + 1;
    if (digits < s.size() && (s[digits] == '-' || s[digits] == '+')) {
      if (s[digits] == '+') {
        s.erase(digits, 1);
      } else {
        ++digits;
      }
    }
    while (digits + 1 < s.size() && s[digits] == '0') s.erase(digits, 1);
  }
  return s;
}

void require_file(const std::string& path) {
  if (path.empty()) return;
  if (!fs::is_regular_file(path)) throw Error("missing input file: " + path);
}

std::ifstream open_in(const std::string& path) {
  require_file(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  return out;
}

Vocabulary load_vocab(const std::string& path) {
  auto in = open_in(path);
  return read_vocabulary(in);
}

TokenizedCorpus load_corpus(const std::string& path) {
  auto in = open_in(path);
  return read_corpus(in);
}

struct TrainFlags {
  std::uint32_t epochs = 1;
  std::uint32_t negatives = 10;
  double subsample_t = 5e-6;
  double lr = 0.001;
  std::uint32_t batch = 128;
  std::uint64_t seed = 1;
  std::uint32_t threads = 1;
  std::uint32_t dim = 0;
  std::string mode = "teacher";

  TrainerConfig config() const {
    TrainerConfig c;
    c.epochs = epochs;
    c.negatives = negatives;
    c.subsample_t = subsample_t;
    c.learning_rate = lr;
    c.batch_size = batch;
    c.seed = seed;
    c.threads = threads;
    c.dim = dim;
    c.mode = mode == "static_baseline" ? TrainMode::static_baseline
                                       : TrainMode::teacher;
    return c;
  }
};

void add_train_flags(CLI::App* sub, TrainFlags& f, bool with_mode) {
  sub->add_option("--epochs", f.epochs, "training epochs")
      ->check(CLI::PositiveNumber);
  sub->add_option("--negatives", f.negatives, "negatives per example");
  sub->add_option("--subsample-t", f.subsample_t,
                  "target subsampling threshold t")
      ->check(CLI::PositiveNumber);
  sub->add_option("--lr", f.lr, "Adam learning rate")->check(CLI::PositiveNumber);
  sub->add_option("--batch", f.batch, "examples per Adam step")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--threads", f.threads,
                  "worker threads (>1 is lock-free and nondeterministic)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--dim", f.dim,
                  "embedding dim (static baseline; must match the stream "
                  "otherwise, 0 = from stream)");
  if (with_mode) {
    sub->add_option("--mode", f.mode, "teacher or static_baseline")
        ->check(CLI::IsMember({"teacher", "static_baseline"}));
  }
}

std::string announce(const TrainerConfig& c, std::uint32_t dim) {
  std::ostringstream s;
  s << "mode=" << (c.mode == TrainMode::teacher ? "teacher" : "static_baseline")
    << " epochs=" << c.epochs << " negatives=" << c.negatives
    << " t=" << fmt_number(c.subsample_t) << " lr=" << fmt_number(c.learning_rate)
    << " batch=" << c.batch_size << " seed=" << c.seed
    << " threads=" << c.threads << " dim=" << dim
    << " simd=" << simd::level_name(simd::active().level);
  return s.str();
}

// Every option of `sub` with its resolved value, in declaration order.
json resolved_options(const CLI::App& sub) {
  json j = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string& name = opt->get_single_name();
    if (name == "help" || name == "config") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_expected_max() > 1) {
        j[name] = res;
      } else {
        j[name] = res.empty() ? std::string() : res.back();
      }
    } else {
      j[name] = opt->get_default_str();
    }
  }
  return j;
}

std::vector<std::string> replay_args(const std::string& subcommand,
                                     const json& options) {
  std::vector<std::string> args = {"x2static", subcommand};
  for (const auto& [name, value] : options.items()) {
    if (value.is_array()) {
      for (const auto& v : value) {
        args.push_back("--" + name);
        args.push_back(v.get<std::string>());
      }
    } else if (!value.get<std::string>().empty()) {
      args.push_back("--" + name);
      args.push_back(value.get<std::string>());
    }
  }
  return args;
}

struct Manifest {
  std::string subcommand;
  json options;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
  double seconds = 0.0;
  std::string config_file;
};

void write_manifest(const Manifest& m) {
  if (m.outputs.empty()) return;
  json j;
  j["tool"] = "x2static";
  j["version"] = X2S_VERSION;
  j["subcommand"] = m.subcommand;
  j["config"] = m.options;
  j["config_file"] = m.config_file;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["seed"] = m.seed;
  j["simd"] = std::string(simd::level_name(simd::active().level));
  j["wall_clock_seconds"] = m.seconds;
  j["replay"] = replay_args(m.subcommand, m.options);
  auto out = open_out(manifest_path(m.outputs.front()));
  out << j.dump(2) << '\n';
}

void save_embeddings(const std::string& path, const WordEmbeddings& emb) {
  auto out = open_out(path);
  write_word2vec_text(out, emb);
  if (!out) throw Error("write failed: " + path);
}

int dispatch(const std::vector<std::string>& args);

}  // namespace

std::string manifest_path(const std::string& output) {
  return output + ".manifest.json";
}

namespace {

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Distill static word embeddings from contextual teacher vectors.",
               "x2static"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file of option defaults");
  app.set_version_flag("--version", X2S_VERSION);

  // preprocess
  std::string input, output, vocab_path, stream_path, planted_path,
      dataset_out, report_path, context_output, checkpoint_path, query,
      manifest_in;
  std::size_t min_sentences = 3, min_chars = 140;
  auto* preprocess = app.add_subcommand("preprocess", "raw text -> corpus file");
  preprocess->add_option("--input", input, "raw UTF-8 text")->required();
  preprocess->add_option("--output", output, "corpus file")->required();
  preprocess->add_option("--min-sentences", min_sentences);
  preprocess->add_option("--min-chars", min_chars);

  // vocab
  std::uint64_t min_count = 10;
  std::size_t max_size = 750000;
  auto* vocab_cmd = app.add_subcommand("vocab", "corpus file -> vocabulary TSV");
  vocab_cmd->add_option("--input", input, "corpus file")->required();
  vocab_cmd->add_option("--output", output, "vocabulary TSV")->required();
  vocab_cmd->add_option("--min-count", min_count)->check(CLI::PositiveNumber);
  vocab_cmd->add_option("--max-size", max_size)->check(CLI::PositiveNumber);

  // synth
  std::size_t vocab_size = 2000, sentences = 200000, min_length = 5,
              max_length = 20, pairs = 1000, paragraph_size = 5;
  std::uint32_t dim = 32;
  std::uint64_t seed = 1;
  double zipf = 1.0;
  auto* synth = app.add_subcommand(
      "synth", "planted space, synthetic corpus and gold similarity pairs");
  synth->add_option("--output", output, "corpus file")->required();
  synth->add_option("--planted", planted_path, "planted vectors (word2vec)")
      ->required();
  synth->add_option("--dataset", dataset_out, "gold similarity pairs")
      ->required();
  synth->add_option("--vocab-size", vocab_size)->check(CLI::Range(2, 1 << 24));
  synth->add_option("--dim", dim)->check(CLI::PositiveNumber);
  synth->add_option("--sentences", sentences)->check(CLI::PositiveNumber);
  synth->add_option("--min-length", min_length)->check(CLI::PositiveNumber);
  synth->add_option("--max-length", max_length)->check(CLI::PositiveNumber);
  synth->add_option("--paragraph-size", paragraph_size)
      ->check(CLI::PositiveNumber);
  synth->add_option("--pairs", pairs)->check(CLI::PositiveNumber);
  synth->add_option("--zipf", zipf);
  synth->add_option("--seed", seed);

  // mock-teacher
  std::string mock_mode = "hash", scope = "sentence", dtype = "f32";
  double noise = 0.0;
  auto* mock = app.add_subcommand("mock-teacher",
                                  "corpus -> teacher stream from a mock encoder");
  mock->add_option("--input", input, "corpus file")->required();
  mock->add_option("--vocab", vocab_path, "vocabulary TSV")->required();
  mock->add_option("--output", output, "stream file")->required();
  mock->add_option("--mode", mock_mode)->check(CLI::IsMember({"hash", "planted"}));
  mock->add_option("--planted", planted_path, "planted vectors (planted mode)");
  mock->add_option("--noise", noise, "per-occurrence noise norm (planted)")
      ->check(CLI::NonNegativeNumber);
  mock->add_option("--scope", scope)
      ->check(CLI::IsMember({"sentence", "paragraph"}));
  mock->add_option("--dim", dim)->check(CLI::PositiveNumber);
  mock->add_option("--seed", seed);
  mock->add_option("--dtype", dtype)->check(CLI::IsMember({"f32", "f16"}));

  // train
  TrainFlags train_flags;
  auto* train = app.add_subcommand("train", "distill static embeddings");
  train->add_option("--stream", stream_path, "teacher stream (teacher mode)");
  train->add_option("--input", input, "corpus file (static_baseline mode)");
  train->add_option("--vocab", vocab_path, "vocabulary TSV")->required();
  train->add_option("--output", output, "embeddings (word2vec text)")
      ->required();
  train->add_option("--context-output", context_output,
                    "context matrix V (static_baseline mode)");
  train->add_option("--checkpoint", checkpoint_path, "binary f32 checkpoint of U");
  add_train_flags(train, train_flags, true);

  // ase
  std::uint64_t cap = 0;
  auto* ase = app.add_subcommand("ase", "average-pooled teacher vectors");
  ase->add_option("--stream", stream_path, "teacher stream")->required();
  ase->add_option("--vocab", vocab_path, "vocabulary TSV")->required();
  ase->add_option("--output", output, "embeddings (word2vec text)")->required();
  ase->add_option("--cap", cap, "max occurrences pooled per word (0 = all)");
  ase->add_option("--report", report_path, "coverage TSV");

  // eval-sim
  std::vector<std::string> datasets;
  auto* eval = app.add_subcommand("eval-sim", "word similarity, Spearman rho");
  eval->add_option("--input", input, "embeddings (word2vec text)")->required();
  eval->add_option("--dataset", datasets, "similarity dataset (repeatable)")
      ->required();
  eval->add_option("--output", output, "report TSV (also printed)");

  // nn
  std::size_t k = 10;
  auto* nn = app.add_subcommand("nn", "nearest neighbors by cosine");
  nn->add_option("--input", input, "embeddings (word2vec text)")->required();
  nn->add_option("--query", query, "query word")->required();
  nn->add_option("--k", k)->check(CLI::PositiveNumber);

  // sweep
  std::vector<double> fractions;
  TrainFlags sweep_flags;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "distilled vs ASE over growing stream prefixes");
  sweep_cmd->add_option("--stream", stream_path, "teacher stream")->required();
  sweep_cmd->add_option("--vocab", vocab_path, "vocabulary TSV")->required();
  sweep_cmd->add_option("--fractions", fractions, "ascending, in (0,1]")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--dataset", datasets, "similarity dataset (repeatable)")
      ->required();
  sweep_cmd->add_option("--output", output, "sweep TSV")->required();
  sweep_cmd->add_option("--cap", cap, "ASE occurrence cap (0 = all)");
  add_train_flags(sweep_cmd, sweep_flags, false);

  // replay
  auto* replay = app.add_subcommand("replay", "re-run a manifest");
  replay->add_option("--manifest", manifest_in, "manifest JSON")->required();
  replay->add_option("--output", output, "override the primary output path");

  std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1),
                                     args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  CLI::App* sub = app.get_subcommands().front();
  const auto started = std::chrono::steady_clock::now();
  Manifest manifest;
  manifest.subcommand = sub->get_name();
  manifest.options = resolved_options(*sub);
  if (auto* cfg = app.get_config_ptr(); cfg && cfg->count() > 0) {
    manifest.config_file = cfg->as<std::string>();
  }
  auto finish = [&](std::vector<std::string> inputs,
                    std::vector<std::string> outputs, std::uint64_t s) {
    manifest.inputs = std::move(inputs);
    manifest.outputs = std::move(outputs);
    manifest.seed = s;
    manifest.seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - started)
                           .count();
    write_manifest(manifest);
  };

  if (sub == preprocess) {
    auto in = open_in(input);
    PreprocessConfig pc;
    pc.min_sentences = min_sentences;
    pc.min_characters = min_chars;
    const TokenizedCorpus corpus = preprocess_corpus(in, pc);
    auto out = open_out(output);
    write_corpus(out, corpus);
    std::cerr << "preprocess: " << corpus.paragraphs.size() << " paragraphs, "
              << corpus.sentence_count() << " sentences, "
              << corpus.token_count() << " tokens\n";
    finish({input}, {output}, 0);
    return kOk;
  }

  if (sub == vocab_cmd) {
    const TokenizedCorpus corpus = load_corpus(input);
    const Vocabulary vocab = build_vocabulary(corpus, min_count, max_size);
    auto out = open_out(output);
    write_vocabulary(out, vocab);
    std::cerr << "vocab: " << vocab.size() << " words (min_count=" << min_count
              << " max_size=" << max_size << ")\n";
    finish({input}, {output}, 0);
    return kOk;
  }

  if (sub == synth) {
    if (max_length < min_length) {
      throw ContractViolation("--max-length must be >= --min-length");
    }
    const PlantedSpace planted =
        make_planted_space(synthetic_words(vocab_size), dim, seed);
    SyntheticCorpusConfig sc;
    sc.sentences = sentences;
    sc.min_length = min_length;
    sc.max_length = max_length;
    sc.sentences_per_paragraph = paragraph_size;
    sc.zipf_exponent = zipf;
    sc.seed = mix64(seed + 1);
    const TokenizedCorpus corpus = synthesize_corpus(planted.space.words(), sc);
    {
      auto out = open_out(output);
      write_corpus(out, corpus);
    }
    save_embeddings(planted_path, planted.space);
    const SimilarityDataset gold =
        planted_similarity_pairs(planted, pairs, mix64(seed + 2));
    {
      auto out = open_out(dataset_out);
      char buf[64];
      out << "# planted cosine similarity, seed " << seed << '\n';
      for (const auto& p : gold.pairs) {
        std::snprintf(buf, sizeof(buf), "%.17g", p.gold);
        out << p.a << '\t' << p.b << '\t' << buf << '\n';
      }
    }
    std::cerr << "synth: " << corpus.sentence_count() << " sentences over "
              << vocab_size << " words, dim " << dim << "\n";
    finish({}, {output, planted_path, dataset_out}, seed);
    return kOk;
  }

  if (sub == mock) {
    const TokenizedCorpus corpus = load_corpus(input);
    const Vocabulary vocab = load_vocab(vocab_path);
    const EncodedCorpus encoded = encode_corpus(corpus, vocab);
    MockTeacherConfig mc;
    mc.mode = mock_mode == "planted" ? MockMode::planted : MockMode::hash;
    mc.scope = scope == "paragraph" ? Scope::paragraph : Scope::sentence;
    mc.dim = dim;
    mc.seed = seed;
    mc.noise = noise;
    mc.dtype = dtype == "f16" ? DType::f16 : DType::f32;
    std::optional<PlantedSpace> planted;
    std::vector<std::string> inputs = {input, vocab_path};
    if (mc.mode == MockMode::planted) {
      if (planted_path.empty()) {
        throw ContractViolation("--mode planted requires --planted");
      }
      require_file(planted_path);
      planted = PlantedSpace{load_word2vec_text(planted_path), seed};
      inputs.push_back(planted_path);
    }
    auto out = open_out(output);
    const auto bytes = mock_teacher_encode(encoded, vocab, mc,
                                           planted ? &*planted : nullptr, out);
    out.close();
    if (!out) throw Error("write failed: " + output);
    std::cerr << "mock-teacher: " << bytes << " bytes, "
              << encoded.sentence_count() << " records\n";
    finish(inputs, {output}, seed);
    return kOk;
  }

  if (sub == train) {
    const Vocabulary vocab = load_vocab(vocab_path);
    TrainerConfig tc = train_flags.config();
    DistillResult result;
    std::vector<std::string> inputs = {vocab_path};
    if (tc.mode == TrainMode::teacher) {
      if (stream_path.empty()) {
        throw ContractViolation("teacher mode requires --stream");
      }
      require_file(stream_path);
      StreamFile stream(stream_path);
      std::cerr << "train: " << announce(tc, stream.header().dim) << '\n';
      result = distill(stream, vocab, tc);
      inputs.push_back(stream_path);
    } else {
      if (input.empty()) {
        throw ContractViolation("static_baseline mode requires --input");
      }
      if (tc.dim == 0) tc.dim = 100;
      const EncodedCorpus encoded = encode_corpus(load_corpus(input), vocab);
      std::cerr << "train: " << announce(tc, tc.dim) << '\n';
      result = distill(encoded, vocab, tc);
      inputs.push_back(input);
    }
    std::vector<std::string> outputs = {output};
    save_embeddings(output, WordEmbeddings(vocab.words(), result.target));
    if (!context_output.empty() && result.context.rows() > 0) {
      save_embeddings(context_output,
                      WordEmbeddings(vocab.words(), result.context));
      outputs.push_back(context_output);
    }
    if (!checkpoint_path.empty()) {
      auto out = open_out(checkpoint_path);
      write_checkpoint(out, result.target);
      outputs.push_back(checkpoint_path);
    }
    const auto& st = result.stats;
    std::cerr << "train: examples=" << st.examples
              << " subsampled=" << st.subsampled << " oov=" << st.oov_targets
              << " skipped=" << st.skipped << " batches=" << st.batches
              << " initial_loss=" << fmt_number(st.initial_loss);
    for (std::size_t e = 0; e < st.epoch_mean_loss.size(); ++e) {
      std::cerr << " epoch" << e + 1 << "_loss="
                << fmt_number(st.epoch_mean_loss[e]);
    }
    std::cerr << '\n';
    finish(inputs, outputs, tc.seed);
    return kOk;
  }

  if (sub == ase) {
    const Vocabulary vocab = load_vocab(vocab_path);
    require_file(stream_path);
    StreamFile stream(stream_path);
    AseAccumulator acc(vocab.size(), stream.header().dim,
                       cap > 0 ? std::optional<std::uint64_t>(cap)
                               : std::nullopt);
    SentenceRecord record;
    while (stream.next(record)) acc.accumulate(record);
    const AseResult result = ase_finalize(acc);
    save_embeddings(output, result.embeddings(vocab));
    std::vector<std::string> outputs = {output};
    if (!report_path.empty()) {
      auto out = open_out(report_path);
      write_coverage_report(out, result, vocab);
      outputs.push_back(report_path);
    }
    std::cerr << "ase: seen=" << result.seen << " unseen=" << result.unseen
              << '\n';
    finish({vocab_path, stream_path}, outputs, 0);
    return kOk;
  }

  if (sub == eval) {
    require_file(input);
    for (const auto& d : datasets) require_file(d);
    const WordEmbeddings emb = load_word2vec_text(input);
    std::vector<EvalReport> reports;
    for (const auto& d : datasets) {
      reports.push_back(evaluate_dataset(emb, load_similarity_dataset(d)));
    }
    write_eval_reports(std::cout, reports);
    if (!output.empty()) {
      auto out = open_out(output);
      write_eval_reports(out, reports);
      std::vector<std::string> inputs = {input};
      inputs.insert(inputs.end(), datasets.begin(), datasets.end());
      finish(inputs, {output}, 0);
    }
    return kOk;
  }

  if (sub == nn) {
    require_file(input);
    const WordEmbeddings emb = load_word2vec_text(input);
    for (const auto& [word, cos] : nearest_neighbors(emb, to_lower(query), k)) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6f", cos);
      std::cout << word << '\t' << buf << '\n';
    }
    return kOk;
  }

  if (sub == sweep_cmd) {
    const Vocabulary vocab = load_vocab(vocab_path);
    require_file(stream_path);
    for (const auto& d : datasets) require_file(d);
    std::vector<SimilarityDataset> ds;
    for (const auto& d : datasets) ds.push_back(load_similarity_dataset(d));
    StreamFile stream(stream_path);
    SweepConfig sc;
    sc.fractions = fractions;
    sc.trainer = sweep_flags.config();
    if (cap > 0) sc.ase_cap = cap;
    std::cerr << "sweep: " << announce(sc.trainer, stream.header().dim) << '\n';
    const auto rows = sweep(stream, vocab, ds, sc);
    auto out = open_out(output);
    write_sweep_tsv(out, rows);
    write_sweep_tsv(std::cout, rows);
    std::vector<std::string> inputs = {vocab_path, stream_path};
    inputs.insert(inputs.end(), datasets.begin(), datasets.end());
    finish(inputs, {output}, sc.trainer.seed);
    return kOk;
  }

  if (sub == replay) {
    auto in = open_in(manifest_in);
    json m;
    try {
      m = json::parse(in);
    } catch (const json::exception& e) {
      throw FormatError(std::string("bad manifest: ") + e.what());
    }
    if (!m.contains("subcommand") || !m.contains("config")) {
      throw FormatError("manifest lacks subcommand or config");
    }
    json options = m["config"];
    if (!output.empty()) {
      if (!options.contains("output")) {
        throw ContractViolation("replayed subcommand has no --output");
      }
      options["output"] = output;
    }
    return dispatch(replay_args(m["subcommand"].get<std::string>(), options));
  }

  return kUsageError;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const ContractViolation& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
}

int run(int argc, const char* const* argv) {
  return run(std::vector<std::string>(argv, argv + argc));
}

}  // namespace x2s::cli
