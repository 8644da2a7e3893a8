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

#include "x2s/trainer.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "x2s/context.hpp"
#include "x2s/simd.hpp"

namespace x2s {
namespace {

constexpr std::size_t kRecordsPerChunk = 64;

// Sparse per-batch gradient sums in double, keyed by parameter row.
class GradientBuffer {
 public:
  GradientBuffer(std::size_t rows, std::size_t dim)
      : slot_(rows, -1), dim_(dim) {}

  double* row(std::uint32_t r) {
    std::int64_t& s = slot_[r];
    if (s < 0) {
      s = static_cast<std::int64_t>(rows_.size());
      rows_.push_back(r);
      sums_.resize(sums_.size() + dim_, 0.0);
    }
    return sums_.data() + static_cast<std::size_t>(s) * dim_;
  }

  bool empty() const { return rows_.empty(); }

  void apply(EmbeddingMatrix& params, AdamState<float>& state,
             const AdamConfig& adam, std::uint64_t batch_index) {
    if (rows_.empty()) return;
    grads_ = EmbeddingMatrix(rows_.size(), dim_);
    for (std::size_t i = 0; i < sums_.size(); ++i) {
      grads_.data()[i] = static_cast<float>(sums_[i]);
    }
    try {
      lazy_adam_step(params, state, rows_, grads_, adam, batch_index);
    } catch (...) {
      clear();
      throw;
    }
    clear();
  }

 private:
  void clear() {
    for (std::uint32_t r : rows_) slot_[r] = -1;
    rows_.clear();
    sums_.clear();
  }

  std::vector<std::int64_t> slot_;
  std::vector<std::uint32_t> rows_;
  std::vector<double> sums_;
  EmbeddingMatrix grads_;
  std::size_t dim_;
};

struct Tally {
  std::vector<double> frequency;  // per vocabulary id
  std::uint64_t total = 0;
};

Tally make_tally(const std::vector<std::uint64_t>& counts,
                 std::uint64_t total) {
  Tally t;
  t.total = total;
  t.frequency.resize(counts.size(), 0.0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (total > 0) {
      t.frequency[i] =
          static_cast<double>(counts[i]) / static_cast<double>(total);
    }
  }
  return t;
}

void check_ids(std::span<const std::uint32_t> ids, std::size_t vocab_size) {
  for (std::uint32_t id : ids) {
    if (id != Vocabulary::kOov && id >= vocab_size) {
      throw FormatError("token id " + std::to_string(id) +
                        " is outside the vocabulary (size " +
                        std::to_string(vocab_size) + ")");
    }
  }
}

Tally tally_source(RecordSource& source, std::size_t vocab_size) {
  std::vector<std::uint64_t> counts(vocab_size, 0);
  std::uint64_t total = 0;
  SentenceRecord record;
  source.rewind();
  StreamReader* reader = dynamic_cast<StreamReader*>(&source);
  if (auto* file = dynamic_cast<StreamFile*>(&source)) reader = &file->reader();
  auto visit = [&](const SentenceRecord& r) {
    check_ids(r.token_ids, vocab_size);
    for (std::uint32_t id : r.token_ids) {
      ++total;
      if (id != Vocabulary::kOov) ++counts[id];
    }
  };
  if (reader != nullptr) {
    while (reader->next_ids(record)) visit(record);
  } else {
    while (source.next(record)) visit(record);
  }
  source.rewind();
  return make_tally(counts, total);
}

Tally tally_corpus(const EncodedCorpus& corpus, std::size_t vocab_size) {
  std::vector<std::uint64_t> counts(vocab_size, 0);
  std::uint64_t total = 0;
  for (const auto& p : corpus.paragraphs) {
    for (const auto& s : p) {
      check_ids(s, vocab_size);
      for (std::uint32_t id : s) {
        ++total;
        if (id != Vocabulary::kOov) ++counts[id];
      }
    }
  }
  return make_tally(counts, total);
}

// Parameters shared by all workers.
struct Model {
  EmbeddingMatrix target;
  AdamState<float> target_state;
  EmbeddingMatrix context;
  AdamState<float> context_state;
  std::atomic<std::uint64_t> batch_counter{0};
};

struct EpochTotals {
  double loss = 0.0;
  std::uint64_t examples = 0;
};

class Worker {
 public:
  Worker(Model& model, const Vocabulary& vocab, const TrainerConfig& config,
         const Tally& tally, std::uint64_t rng_seed)
      : model_(model),
        config_(config),
        tally_(tally),
        adam_(config.adam()),
        table_(vocab),
        rng_(rng_seed),
        dim_(model.target.cols()),
        target_grads_(vocab.size(), dim_),
        context_grads_(config.mode == TrainMode::static_baseline ? vocab.size()
                                                                 : 0,
                       dim_),
        ctx_(dim_),
        ctx_grad_(dim_),
        kernels_(simd::active()) {}

  void process_record(const SentenceRecord& record) {
    ++stats.records;
    if (record.size() == 0) {
      ++stats.skipped;
      return;
    }
    const auto mean = context_vector(record, dim_);
    for (std::size_t j = 0; j < dim_; ++j) ctx_[j] = static_cast<float>(mean[j]);
    for (std::uint32_t id : record.token_ids) {
      if (!admit(id)) continue;
      example(id, nullptr);
    }
  }

  void process_sentence(const EncodedSentence& sentence) {
    ++stats.records;
    if (sentence.empty()) {
      ++stats.skipped;
      return;
    }
    for (std::size_t pos = 0; pos < sentence.size(); ++pos) {
      const std::uint32_t id = sentence[pos];
      if (!admit(id)) continue;
      auto ctx = static_context_vector(sentence, pos, model_.context);
      if (!ctx) {
        ++stats.skipped;
        continue;
      }
      for (std::size_t j = 0; j < dim_; ++j) {
        ctx_[j] = static_cast<float>(ctx->mean[j]);
      }
      example(id, &ctx->rows);
    }
  }

  void flush() {
    if (batch_examples_ == 0) return;
    const std::uint64_t batch = model_.batch_counter.fetch_add(1);
    if (record_initial_ && std::isnan(stats.initial_loss)) {
      stats.initial_loss = batch_loss_ / static_cast<double>(batch_examples_);
    }
    target_grads_.apply(model_.target, model_.target_state, adam_, batch);
    if (config_.mode == TrainMode::static_baseline) {
      context_grads_.apply(model_.context, model_.context_state, adam_, batch);
    }
    ++stats.batches;
    batch_examples_ = 0;
    batch_loss_ = 0.0;
  }

  EpochTotals take_epoch() {
    EpochTotals t = epoch_;
    epoch_ = {};
    return t;
  }

  void set_record_initial(bool v) { record_initial_ = v; }

  TrainStats stats;

 private:
  bool admit(std::uint32_t id) {
    if (id == Vocabulary::kOov) {
      ++stats.oov_targets;
      return false;
    }
    if (!keep_target(tally_.frequency[id], config_.subsample_t, rng_)) {
      ++stats.subsampled;
      return false;
    }
    return true;
  }

  // One (target, context) example; gradients accumulate at the parameters as
  // of the start of the batch.
  void example(std::uint32_t target,
               const std::vector<std::uint32_t>* context_rows) {
    negatives_ = sample_negatives(table_, config_.negatives, target, rng_);
    const float* ctx = ctx_.data();
    const bool train_context = context_rows != nullptr;
    if (train_context) std::fill(ctx_grad_.begin(), ctx_grad_.end(), 0.0);

    const float* u = model_.target.row(target).data();
    const double s = kernels_.dot(u, ctx, dim_);
    double loss = logistic_loss(s);
    const double c = -sigmoid(-s);
    kernels_.axpy_f64(c, ctx, target_grads_.row(target), dim_);
    if (train_context) kernels_.axpy_f64(c, u, ctx_grad_.data(), dim_);

    for (std::uint32_t n : negatives_) {
      const float* un = model_.target.row(n).data();
      const double sn = kernels_.dot(un, ctx, dim_);
      loss += logistic_loss(-sn);
      const double cn = sigmoid(sn);
      kernels_.axpy_f64(cn, ctx, target_grads_.row(n), dim_);
      if (train_context) kernels_.axpy_f64(cn, un, ctx_grad_.data(), dim_);
    }

    if (train_context) {
      const double inv = 1.0 / static_cast<double>(context_rows->size());
      for (std::uint32_t r : *context_rows) {
        double* g = context_grads_.row(r);
        for (std::size_t j = 0; j < dim_; ++j) g[j] += inv * ctx_grad_[j];
      }
    }

    ++stats.examples;
    ++epoch_.examples;
    epoch_.loss += loss;
    batch_loss_ += loss;
    if (++batch_examples_ == config_.batch_size) flush();
  }

  Model& model_;
  const TrainerConfig& config_;
  const Tally& tally_;
  AdamConfig adam_;
  NegativeTable table_;
  Rng rng_;
  std::size_t dim_;
  GradientBuffer target_grads_;
  GradientBuffer context_grads_;
  std::vector<float> ctx_;
  std::vector<double> ctx_grad_;
  std::vector<std::uint32_t> negatives_;
  const simd::Kernels& kernels_;
  std::uint32_t batch_examples_ = 0;
  double batch_loss_ = 0.0;
  bool record_initial_ = true;
  EpochTotals epoch_;
};

std::uint64_t worker_seed(std::uint64_t seed, std::uint32_t worker) {
  return mix64(hash_combine(seed, worker));
}

void merge_stats(TrainStats& into, const TrainStats& from) {
  into.examples += from.examples;
  into.subsampled += from.subsampled;
  into.oov_targets += from.oov_targets;
  into.skipped += from.skipped;
  into.batches += from.batches;
  into.records += from.records;
  if (std::isnan(into.initial_loss)) into.initial_loss = from.initial_loss;
}

// Runs `epochs` passes. `feed(worker, w)` processes worker w's share of one
// epoch; with one thread it is called inline.
template <typename Feed, typename Rewind>
TrainStats run_epochs(Model& model, const Vocabulary& vocab,
                      const TrainerConfig& config, const Tally& tally,
                      Feed&& feed, Rewind&& rewind) {
  const std::uint32_t threads = std::max<std::uint32_t>(1, config.threads);
  std::vector<std::unique_ptr<Worker>> workers;
  for (std::uint32_t w = 0; w < threads; ++w) {
    workers.push_back(std::make_unique<Worker>(model, vocab, config, tally,
                                               worker_seed(config.seed, w)));
    workers.back()->set_record_initial(w == 0);
  }
  TrainStats stats;
  for (std::uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
    rewind();
    if (threads == 1) {
      feed(*workers[0], 0u);
      workers[0]->flush();
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(threads);
      for (std::uint32_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
          try {
            feed(*workers[w], w);
            workers[w]->flush();
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    EpochTotals totals;
    for (auto& w : workers) {
      const EpochTotals t = w->take_epoch();
      totals.loss += t.loss;
      totals.examples += t.examples;
    }
    stats.epoch_mean_loss.push_back(
        totals.examples > 0 ? totals.loss / static_cast<double>(totals.examples)
                            : std::numeric_limits<double>::quiet_NaN());
  }
  for (auto& w : workers) merge_stats(stats, w->stats);
  if (stats.examples == 0) {
    throw Error("no training examples survived filtering and subsampling");
  }
  return stats;
}

}  // namespace

void TrainerConfig::validate() const {
  if (epochs < 1) throw ContractViolation("epochs must be at least 1");
  if (batch_size < 1) throw ContractViolation("batch size must be at least 1");
  if (!(subsample_t > 0.0)) throw ContractViolation("subsample t must be > 0");
  if (!(learning_rate > 0.0)) {
    throw ContractViolation("learning rate must be > 0");
  }
  if (!(adam_beta1 > 0.0 && adam_beta1 < 1.0) ||
      !(adam_beta2 > 0.0 && adam_beta2 < 1.0)) {
    throw ContractViolation("Adam betas must lie in (0, 1)");
  }
  if (!(adam_eps > 0.0)) throw ContractViolation("Adam eps must be > 0");
}

NegativeTable::NegativeTable(const Vocabulary& vocab, double power) {
  std::vector<double> weights(vocab.size());
  double total = 0.0;
  for (std::uint32_t i = 0; i < vocab.size(); ++i) {
    weights[i] = std::pow(static_cast<double>(vocab.count(i)), power);
    total += weights[i];
  }
  probabilities_.resize(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    probabilities_[i] = weights[i] / total;
  }
  distribution_ = std::discrete_distribution<std::uint32_t>(weights.begin(),
                                                            weights.end());
}

std::vector<std::uint32_t> sample_negatives(NegativeTable& table,
                                            std::size_t k,
                                            std::uint32_t target_id, Rng& rng) {
  std::vector<std::uint32_t> out;
  if (k == 0) return out;
  if (table.size() < 2) {
    throw SamplingError("cannot draw negatives other than the target from a "
                        "one-word vocabulary");
  }
  out.reserve(k);
  while (out.size() < k) {
    const std::uint32_t id = table.draw(rng);
    if (id != target_id) out.push_back(id);
  }
  return out;
}

std::uint64_t context_init_seed(std::uint64_t seed) {
  return seed ^ 0x5bd1e9955bd1e995ULL;
}

DistillResult distill(RecordSource& source, const Vocabulary& vocab,
                      const TrainerConfig& config) {
  config.validate();
  if (config.mode != TrainMode::teacher) {
    throw ContractViolation("record sources train in teacher mode only");
  }
  const std::uint32_t dim = source.header().dim;
  if (config.dim != 0 && config.dim != dim) {
    throw FormatError("stream dim " + std::to_string(dim) +
                      " differs from configured dim " +
                      std::to_string(config.dim));
  }
  const Tally tally = tally_source(source, vocab.size());

  Model model;
  model.target = init_embedding(vocab.size(), dim, config.seed);
  model.target_state = AdamState<float>(vocab.size(), dim);

  std::mutex source_mutex;
  auto feed = [&](Worker& worker, std::uint32_t) {
    std::vector<SentenceRecord> chunk(kRecordsPerChunk);
    if (config.threads <= 1) {
      while (source.next(chunk[0])) worker.process_record(chunk[0]);
      return;
    }
    for (;;) {
      std::size_t got = 0;
      {
        std::lock_guard<std::mutex> lock(source_mutex);
        while (got < chunk.size() && source.next(chunk[got])) ++got;
      }
      if (got == 0) return;
      for (std::size_t i = 0; i < got; ++i) worker.process_record(chunk[i]);
    }
  };
  auto rewind = [&] { source.rewind(); };

  DistillResult result;
  result.stats = run_epochs(model, vocab, config, tally, feed, rewind);
  result.target = std::move(model.target);
  return result;
}

DistillResult distill(const EncodedCorpus& corpus, const Vocabulary& vocab,
                      const TrainerConfig& config) {
  config.validate();
  if (config.mode != TrainMode::static_baseline) {
    throw ContractViolation("encoded corpora train in static_baseline mode");
  }
  if (config.dim == 0) {
    throw ContractViolation("static baseline needs an explicit dim");
  }
  const Tally tally = tally_corpus(corpus, vocab.size());
  const std::size_t dim = config.dim;

  std::vector<const EncodedSentence*> sentences;
  for (const auto& p : corpus.paragraphs) {
    for (const auto& s : p) sentences.push_back(&s);
  }

  Model model;
  model.target = init_embedding(vocab.size(), dim, config.seed);
  model.target_state = AdamState<float>(vocab.size(), dim);
  model.context =
      init_embedding(vocab.size(), dim, context_init_seed(config.seed));
  model.context_state = AdamState<float>(vocab.size(), dim);

  std::atomic<std::size_t> cursor{0};
  auto feed = [&](Worker& worker, std::uint32_t) {
    if (config.threads <= 1) {
      for (const auto* s : sentences) worker.process_sentence(*s);
      return;
    }
    for (;;) {
      const std::size_t begin = cursor.fetch_add(kRecordsPerChunk);
      if (begin >= sentences.size()) return;
      const std::size_t end =
          std::min(sentences.size(), begin + kRecordsPerChunk);
      for (std::size_t i = begin; i < end; ++i) {
        worker.process_sentence(*sentences[i]);
      }
    }
  };
  auto rewind = [&] { cursor = 0; };

  DistillResult result;
  result.stats = run_epochs(model, vocab, config, tally, feed, rewind);
  result.target = std::move(model.target);
  result.context = std::move(model.context);
  return result;
}

}  // namespace x2s
