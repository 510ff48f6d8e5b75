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

#ifndef HYPERDEPTH_EVALUATION_H_
#define HYPERDEPTH_EVALUATION_H_

#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scoring.h"

namespace hyperdepth {

struct LabeledPair {
  std::string w1;
  std::string w2;
  bool is_hypernym = false;
  std::string relation;
};

// Hypernym relation labels start with "hyper" (casefolded).
bool IsHypernymRelation(std::string_view relation);

// Four tab-separated columns: w1, w2, True|False, relation. Lines starting
// with '#' and blank lines are skipped. With strip_pos, trailing "-n", "-v"
// and "-j" are removed from both words.
std::vector<LabeledPair> LoadDataset(std::istream &in, bool strip_pos = false);
std::vector<LabeledPair> LoadDatasetFile(const std::string &path,
                                         bool strip_pos = false);

// Fraction of pairs whose direction is W1IsHyper. Undecided and missing
// pairs count as failures. Throws kUndefinedMetric on an empty list.
double DirectionalityPrecision(std::span<const PairScore> scores);

// Stable keeps input order among equal scores; Worst ranks negatives ahead
// of positives within a tie.
enum class TieMode { kStable, kWorst };

TieMode ParseTieMode(std::string_view name);

struct RankedItem {
  double score = 0.0;
  bool positive = false;
};

// Mean of precision@rank over the positives after sorting by descending
// score. Throws kUndefinedMetric when there is no positive.
double AveragePrecision(std::span<const RankedItem> items,
                        TieMode tie = TieMode::kStable);

struct EvalReport {
  std::string dataset;
  std::string topology;
  std::string similarity;
  std::string relation;  // detection filter, or "hyper" for directionality
  size_t total = 0;
  size_t scored = 0;
  size_t missing = 0;
  std::string metric;
  double value = 0.0;
};

// Directionality protocol over the hypernym pairs of `pairs` (ordered
// hypernym first).
EvalReport EvaluateDirection(std::span<const LabeledPair> pairs,
                             PairScorer &scorer, std::string dataset_name);

// Detection protocol: hypernym pairs are positives, pairs with relation
// `relation_filter` (or every other relation for "all") are negatives, ranked
// by combined score.
EvalReport EvaluateDetection(std::span<const LabeledPair> pairs,
                             std::string_view relation_filter,
                             PairScorer &scorer, std::string dataset_name,
                             TieMode tie = TieMode::kStable);

std::string ReportToJson(const EvalReport &report);

}  // namespace hyperdepth

#endif  // HYPERDEPTH_EVALUATION_H_
