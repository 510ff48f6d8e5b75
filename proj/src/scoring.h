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

#ifndef HYPERDEPTH_SCORING_H_
#define HYPERDEPTH_SCORING_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus.h"
#include "depth_engine.h"
#include "heading_engine.h"
#include "search_index.h"

namespace hyperdepth {

enum class Direction { kW1IsHyper, kW2IsHyper, kUndecided };

std::string_view DirectionName(Direction direction);

struct ScoreConfig {
  Topology topology = Topology::kStar;
  size_t k = 1000;
  SimMethod sim = SimMethod::kJaccard;
  HeadingOptions headings;
  unsigned threads = 0;
};

struct PairScore {
  std::string w1;
  std::string w2;
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  std::optional<double> depth_term_raw;  // before clamping
  std::optional<double> depth_term;
  double sim = 0.0;
  double combined = 0.0;
  Direction direction = Direction::kUndecided;

  bool missing1() const { return !lambda1.has_value(); }
  bool missing2() const { return !lambda2.has_value(); }
  bool missing() const { return missing1() || missing2(); }
};

// (1 + lambda1 - lambda2) / 2, unclamped.
double DepthTermRaw(double lambda1, double lambda2);
// DepthTermRaw clamped to [0, 1].
double DepthTerm(double lambda1, double lambda2);

// W1IsHyper when lambda1 > lambda2, W2IsHyper when lambda1 < lambda2,
// Undecided on a tie or when either side is undefined.
Direction DecideDirection(std::optional<double> lambda1,
                          std::optional<double> lambda2);

// Combined score depth_term * sim; 0 when either lambda is undefined.
PairScore ComposePairScore(std::string w1, std::string w2,
                           std::optional<double> lambda1,
                           std::optional<double> lambda2, double sim);

// Scores word pairs against a corpus and its index. Per-word depth profiles
// and heading sets are computed once per distinct word.
class PairScorer {
 public:
  PairScorer(const Corpus &corpus, const InvertedIndex &index,
             ScoreConfig config, const EmbeddingTable *table = nullptr);

  PairScore Score(std::string_view w1, std::string_view w2);

  // Output order matches input order.
  std::vector<PairScore> ScoreAll(
      std::span<const std::pair<std::string, std::string>> pairs);

  const ScoreConfig &config() const { return config_; }

 private:
  struct WordFeatures {
    std::optional<double> lambda;
    HeadingSets headings;
  };

  WordFeatures ComputeFeatures(const std::string &word) const;
  void Prepare(const std::vector<std::string> &words);

  const Corpus &corpus_;
  const InvertedIndex &index_;
  ScoreConfig config_;
  const EmbeddingTable *table_;
  std::map<std::string, WordFeatures> features_;
};

}  // namespace hyperdepth

#endif  // HYPERDEPTH_SCORING_H_
