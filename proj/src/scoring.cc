// Copyright 2026 The Hyperdepth Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scoring.h"

#include <algorithm>

#include "error.h"
#include "parallel.h"
#include "text.h"

namespace hyperdepth {

std::string_view DirectionName(Direction direction) {
  switch (direction) {
    case Direction::kW1IsHyper:
      return "w1_hyper";
    case Direction::kW2IsHyper:
      return "w2_hyper";
    case Direction::kUndecided:
      break;
  }
  return "undecided";
}

double DepthTermRaw(double lambda1, double lambda2) {
  return (1.0 + (lambda1 - lambda2)) / 2.0;
}

double DepthTerm(double lambda1, double lambda2) {
  return std::clamp(DepthTermRaw(lambda1, lambda2), 0.0, 1.0);
}

Direction DecideDirection(std::optional<double> lambda1,
                          std::optional<double> lambda2) {
  if (!lambda1 || !lambda2) return Direction::kUndecided;
  double diff = *lambda1 - *lambda2;
  if (diff > 0) return Direction::kW1IsHyper;
  if (diff < 0) return Direction::kW2IsHyper;
  return Direction::kUndecided;
}

PairScore ComposePairScore(std::string w1, std::string w2,
                           std::optional<double> lambda1,
                           std::optional<double> lambda2, double sim) {
  PairScore score;
  score.w1 = std::move(w1);
  score.w2 = std::move(w2);
  score.lambda1 = lambda1;
  score.lambda2 = lambda2;
  score.sim = sim;
  score.direction = DecideDirection(lambda1, lambda2);
  if (lambda1 && lambda2) {
    score.depth_term_raw = DepthTermRaw(*lambda1, *lambda2);
    score.depth_term = DepthTerm(*lambda1, *lambda2);
    score.combined = *score.depth_term * sim;
  }
  return score;
}

PairScorer::PairScorer(const Corpus &corpus, const InvertedIndex &index,
                       ScoreConfig config, const EmbeddingTable *table)
    : corpus_(corpus), index_(index), config_(config), table_(table) {
  if (config_.k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (config_.sim == SimMethod::kEmbeddingCosine && table_ == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "cosine similarity needs an embedding table");
  }
}

PairScorer::WordFeatures PairScorer::ComputeFeatures(const std::string &word) const {
  WordFeatures features;
  features.headings = ExtractHeadings(word, corpus_, config_.headings);
  if (Tokenize(word).empty()) return features;
  // Scoring runs one word per task, so the per-article loop stays serial.
  features.lambda =
      LambdaWord(word, index_, corpus_, config_.topology, config_.k, 1).aggregate;
  return features;
}

void PairScorer::Prepare(const std::vector<std::string> &words) {
  std::vector<std::string> todo;
  for (const auto &word : words) {
    if (!features_.contains(word)) todo.push_back(word);
  }
  std::sort(todo.begin(), todo.end());
  todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
  std::vector<WordFeatures> computed(todo.size());
  ParallelFor(todo.size(), config_.threads,
              [&](size_t i) { computed[i] = ComputeFeatures(todo[i]); });
  for (size_t i = 0; i < todo.size(); ++i) {
    features_.emplace(todo[i], std::move(computed[i]));
  }
}

PairScore PairScorer::Score(std::string_view w1, std::string_view w2) {
  std::pair<std::string, std::string> pair{std::string(w1), std::string(w2)};
  return ScoreAll(std::span(&pair, 1)).front();
}

std::vector<PairScore> PairScorer::ScoreAll(
    std::span<const std::pair<std::string, std::string>> pairs) {
  std::vector<std::string> words;
  for (const auto &[w1, w2] : pairs) {
    words.push_back(w1);
    words.push_back(w2);
  }
  Prepare(words);
  std::vector<PairScore> scores;
  scores.reserve(pairs.size());
  for (const auto &[w1, w2] : pairs) {
    const WordFeatures &f1 = features_.at(w1);
    const WordFeatures &f2 = features_.at(w2);
    double sim = SimScore(f1.headings, f2.headings, config_.sim, table_);
    scores.push_back(ComposePairScore(w1, w2, f1.lambda, f2.lambda, sim));
  }
  return scores;
}

}  // namespace hyperdepth
