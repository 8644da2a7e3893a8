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

#include "x2s/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "x2s/corpus.hpp"
#include "x2s/errors.hpp"
#include "x2s/simd.hpp"

namespace x2s {
namespace {

template <typename T>
std::optional<double> cosine_impl(std::span<const T> u, std::span<const T> v) {
  if (u.size() != v.size()) throw ContractViolation("cosine dim mismatch");
  double dot = 0.0;
  double nu = 0.0;
  double nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = static_cast<double>(u[i]);
    const double b = static_cast<double>(v[i]);
    dot += a * b;
    nu += a * a;
    nv += b * b;
  }
  if (nu == 0.0 || nv == 0.0) return std::nullopt;
  const double c = dot / (std::sqrt(nu) * std::sqrt(nv));
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace

std::optional<double> cosine_similarity(std::span<const float> u,
                                        std::span<const float> v) {
  return cosine_impl(u, v);
}

std::optional<double> cosine_similarity(std::span<const double> u,
                                        std::span<const double> v) {
  return cosine_impl(u, v);
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share rank mean((i+1)..(j+1))
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractViolation("spearman length mismatch");
  if (x.size() < 2) throw ContractViolation("spearman needs two points");
  const auto rx = fractional_ranks(x);
  const auto ry = fractional_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw UndefinedCorrelation("spearman rho undefined for constant input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

SimilarityDataset read_similarity_dataset(std::istream& in, std::string name) {
  SimilarityDataset ds;
  ds.name = std::move(name);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    SimilarityPair p;
    if (!(fields >> p.a >> p.b >> p.gold) || !std::isfinite(p.gold)) {
      throw FormatError(ds.name + ": bad similarity line " +
                        std::to_string(line_no));
    }
    validate_utf8(p.a);
    validate_utf8(p.b);
    p.a = to_lower(p.a);
    p.b = to_lower(p.b);
    ds.pairs.push_back(std::move(p));
  }
  if (ds.pairs.empty()) throw FormatError(ds.name + ": no similarity pairs");
  return ds;
}

SimilarityDataset load_similarity_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset: " + path);
  std::string name = path;
  const auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return read_similarity_dataset(in, name);
}

EvalReport evaluate_dataset(const WordEmbeddings& embeddings,
                            const SimilarityDataset& dataset) {
  EvalReport report;
  report.dataset = dataset.name;
  report.pairs_total = dataset.pairs.size();
  std::vector<double> predicted;
  std::vector<double> gold;
  for (const auto& p : dataset.pairs) {
    const auto ia = embeddings.find(p.a);
    const auto ib = embeddings.find(p.b);
    if (ia < 0 || ib < 0) continue;
    const auto c =
        cosine_similarity(embeddings.vectors().row(static_cast<std::size_t>(ia)),
                          embeddings.vectors().row(static_cast<std::size_t>(ib)));
    if (!c) continue;
    predicted.push_back(*c);
    gold.push_back(p.gold);
  }
  report.pairs_scored = predicted.size();
  report.coverage = report.pairs_total == 0
                        ? 0.0
                        : static_cast<double>(report.pairs_scored) /
                              static_cast<double>(report.pairs_total);
  if (report.pairs_scored < 2) {
    throw InsufficientCoverage(dataset.name + ": only " +
                               std::to_string(report.pairs_scored) + " of " +
                               std::to_string(report.pairs_total) +
                               " pairs have embeddings for both words");
  }
  report.spearman_rho = spearman_rho(predicted, gold);
  return report;
}

void write_eval_reports(std::ostream& out,
                        const std::vector<EvalReport>& reports) {
  char buf[256];
  auto row = [&](const std::string& name, double rho, std::size_t scored,
                 std::size_t total, double coverage) {
    std::snprintf(buf, sizeof(buf), "\t%.6f\t%zu\t%zu\t%.6f\n", rho, scored,
                  total, coverage);
    out << name << buf;
  };
  double rho_sum = 0.0;
  std::size_t scored = 0;
  std::size_t total = 0;
  for (const auto& r : reports) {
    row(r.dataset, r.spearman_rho, r.pairs_scored, r.pairs_total, r.coverage);
    rho_sum += r.spearman_rho;
    scored += r.pairs_scored;
    total += r.pairs_total;
  }
  if (reports.size() > 1) {
    row("average", rho_sum / static_cast<double>(reports.size()), scored, total,
        total == 0 ? 0.0
                   : static_cast<double>(scored) / static_cast<double>(total));
  }
}

std::vector<std::pair<std::string, double>> nearest_neighbors(
    const WordEmbeddings& embeddings, std::string_view query, std::size_t k) {
  const auto q = embeddings.find(query);
  if (q < 0) throw Error("query word not in embeddings: " + std::string(query));
  const auto& m = embeddings.vectors();
  const std::size_t dim = m.cols();
  const auto& kern = simd::active();
  auto norm = [&](std::size_t r) {
    const float* p = m.row(r).data();
    return std::sqrt(static_cast<double>(kern.dot(p, p, dim)));
  };
  const double qn = norm(static_cast<std::size_t>(q));
  std::vector<std::pair<std::string, double>> scored;
  scored.reserve(embeddings.size());
  for (std::size_t r = 0; r < embeddings.size(); ++r) {
    if (r == static_cast<std::size_t>(q)) continue;
    const double rn = norm(r);
    double c = 0.0;
    if (qn > 0.0 && rn > 0.0) {
      c = static_cast<double>(
              kern.dot(m.row(static_cast<std::size_t>(q)).data(),
                       m.row(r).data(), dim)) /
          (qn * rn);
    }
    scored.emplace_back(embeddings.words()[r], c);
  }
  const std::size_t keep = std::min(k, scored.size());
  auto better = [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  };
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                    scored.end(), better);
  scored.resize(keep);
  return scored;
}

}  // namespace x2s
