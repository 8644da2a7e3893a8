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

// Negative-sampling distillation: learn one target vector per word so that
// it scores high against the context vectors of sentences the word occurs in
// and low against those of sampled negatives.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "x2s/adam.hpp"
#include "x2s/corpus.hpp"
#include "x2s/errors.hpp"
#include "x2s/matrix.hpp"
#include "x2s/rng.hpp"
#include "x2s/teacher_stream.hpp"

namespace x2s {

/// log(1 + e^-x), stable for large |x|.
inline double logistic_loss(double x) {
  return x >= 0.0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

template <typename T>
struct PairLoss {
  T loss{};
  std::vector<T> grad_target;
  std::vector<std::vector<T>> grad_negatives;
  std::vector<T> grad_context;
};

/// l(u.v) + sum over negatives n of l(-n.v), with gradients for the target,
/// each negative and the context.
template <typename T>
PairLoss<T> pair_loss(std::span<const T> target, std::span<const T> context,
                      std::span<const std::span<const T>> negatives) {
  const std::size_t dim = target.size();
  if (context.size() != dim) throw ContractViolation("pair_loss dim mismatch");
  auto dot = [dim](std::span<const T> a, std::span<const T> b) {
    T s{};
    for (std::size_t i = 0; i < dim; ++i) s += a[i] * b[i];
    return s;
  };
  PairLoss<T> out;
  out.grad_target.assign(dim, T{});
  out.grad_context.assign(dim, T{});
  const T s = dot(target, context);
  out.loss = static_cast<T>(logistic_loss(static_cast<double>(s)));
  const T c = -static_cast<T>(sigmoid(-static_cast<double>(s)));
  for (std::size_t i = 0; i < dim; ++i) {
    out.grad_target[i] = c * context[i];
    out.grad_context[i] = c * target[i];
  }
  out.grad_negatives.reserve(negatives.size());
  for (const auto& neg : negatives) {
    if (neg.size() != dim) throw ContractViolation("pair_loss dim mismatch");
    const T sn = dot(neg, context);
    out.loss += static_cast<T>(logistic_loss(-static_cast<double>(sn)));
    const T cn = static_cast<T>(sigmoid(static_cast<double>(sn)));
    std::vector<T> g(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      g[i] = cn * context[i];
      out.grad_context[i] += cn * neg[i];
    }
    out.grad_negatives.push_back(std::move(g));
  }
  return out;
}

/// min(1, sqrt(t/f) + t/f).
inline double keep_probability(double frequency, double t) {
  const double r = t / frequency;
  return std::min(1.0, std::sqrt(r) + r);
}

/// Consumes exactly one draw from `rng`.
inline bool keep_target(double frequency, double t, Rng& rng) {
  return uniform01(rng) < keep_probability(frequency, t);
}

/// Unigram distribution raised to `power` over the vocabulary.
class NegativeTable {
 public:
  explicit NegativeTable(const Vocabulary& vocab, double power = 0.75);

  std::size_t size() const { return probabilities_.size(); }
  const std::vector<double>& probabilities() const { return probabilities_; }
  std::uint32_t draw(Rng& rng) {
    return static_cast<std::uint32_t>(distribution_(rng));
  }

 private:
  std::vector<double> probabilities_;
  std::discrete_distribution<std::uint32_t> distribution_;
};

/// k draws, each redrawn while it equals target_id. Throws SamplingError
/// when the vocabulary is too small to exclude the target.
std::vector<std::uint32_t> sample_negatives(NegativeTable& table,
                                            std::size_t k,
                                            std::uint32_t target_id, Rng& rng);

enum class TrainMode { teacher, static_baseline };

struct TrainerConfig {
  std::uint32_t epochs = 1;
  std::uint32_t negatives = 10;
  double subsample_t = 5e-6;
  double learning_rate = 0.001;
  std::uint32_t batch_size = 128;
  std::uint64_t seed = 1;
  TrainMode mode = TrainMode::teacher;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  // Teacher mode: 0 takes the stream's dim, otherwise must match it.
  // Static baseline: required.
  std::uint32_t dim = 0;
  // More than one thread selects lock-free shared updates (nondeterministic).
  std::uint32_t threads = 1;

  /// Throws ContractViolation on out-of-range values.
  void validate() const;
  AdamConfig adam() const {
    return {learning_rate, adam_beta1, adam_beta2, adam_eps};
  }
};

struct TrainStats {
  std::vector<double> epoch_mean_loss;
  // Mean loss over the first batch, i.e. at the initial parameters.
  double initial_loss = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t examples = 0;
  std::uint64_t subsampled = 0;
  std::uint64_t oov_targets = 0;
  // Empty records and targets without usable context.
  std::uint64_t skipped = 0;
  std::uint64_t batches = 0;
  std::uint64_t records = 0;
};

struct DistillResult {
  EmbeddingMatrix target;   // U, one row per vocabulary word
  EmbeddingMatrix context;  // V, static baseline only
  TrainStats stats;
};

/// Teacher mode: context vectors come from the record source (frozen).
DistillResult distill(RecordSource& source, const Vocabulary& vocab,
                      const TrainerConfig& config);

/// Static baseline: context vectors are averages of trainable rows V.
DistillResult distill(const EncodedCorpus& corpus, const Vocabulary& vocab,
                      const TrainerConfig& config);

/// Seed used for U initialization; V uses a derived seed.
std::uint64_t context_init_seed(std::uint64_t seed);

}  // namespace x2s
