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

#include "evaluation.h"

#include <algorithm>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "error.h"
#include "text.h"

namespace hyperdepth {

namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos
                                            ? std::string_view::npos
                                            : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string StripPos(std::string_view word) {
  if (word.size() > 2 && word[word.size() - 2] == '-') {
    char tag = word.back();
    if (tag == 'n' || tag == 'v' || tag == 'j') word.remove_suffix(2);
  }
  return std::string(word);
}

}  // namespace

bool IsHypernymRelation(std::string_view relation) {
  return Casefold(TrimView(relation)).starts_with("hyper");
}

std::vector<LabeledPair> LoadDataset(std::istream &in, bool strip_pos) {
  std::vector<LabeledPair> pairs;
  std::string line;
  size_t line_number = 0;
  auto fail = [&line_number](const std::string &message) {
    throw Error(ErrorCode::kParse,
                "line " + std::to_string(line_number) + ": " + message);
  };
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (TrimView(line).empty() || TrimView(line).front() == '#') continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 4) {
      fail("expected 4 tab-separated columns, got " +
           std::to_string(fields.size()));
    }
    LabeledPair pair;
    pair.w1 = std::string(TrimView(fields[0]));
    pair.w2 = std::string(TrimView(fields[1]));
    if (strip_pos) {
      pair.w1 = StripPos(pair.w1);
      pair.w2 = StripPos(pair.w2);
    }
    std::string label = Casefold(TrimView(fields[2]));
    if (label == "true") {
      pair.is_hypernym = true;
    } else if (label != "false") {
      fail("label must be True or False");
    }
    pair.relation = std::string(TrimView(fields[3]));
    if (pair.w1.empty() || pair.w2.empty()) fail("empty word");
    if (pair.relation.empty()) fail("empty relation");
    if (pair.is_hypernym != IsHypernymRelation(pair.relation)) {
      fail("label disagrees with relation '" + pair.relation + "'");
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<LabeledPair> LoadDatasetFile(const std::string &path,
                                         bool strip_pos) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open dataset: " + path);
  return LoadDataset(in, strip_pos);
}

double DirectionalityPrecision(std::span<const PairScore> scores) {
  if (scores.empty()) {
    throw Error(ErrorCode::kUndefinedMetric, "no hypernym pairs to evaluate");
  }
  auto correct = std::count_if(scores.begin(), scores.end(), [](const auto &s) {
    return s.direction == Direction::kW1IsHyper;
  });
  return static_cast<double>(correct) / scores.size();
}

TieMode ParseTieMode(std::string_view name) {
  if (name == "stable") return TieMode::kStable;
  if (name == "worst") return TieMode::kWorst;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown tie mode '" + std::string(name) + "'");
}

double AveragePrecision(std::span<const RankedItem> items, TieMode tie) {
  std::vector<size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (items[a].score != items[b].score) return items[a].score > items[b].score;
    if (tie == TieMode::kWorst) return !items[a].positive && items[b].positive;
    return false;
  });
  size_t positives = 0;
  double sum = 0.0;
  for (size_t rank = 0; rank < order.size(); ++rank) {
    if (!items[order[rank]].positive) continue;
    ++positives;
    sum += static_cast<double>(positives) / (rank + 1);
  }
  if (positives == 0) {
    throw Error(ErrorCode::kUndefinedMetric, "average precision needs a positive");
  }
  return sum / positives;
}

namespace {

EvalReport BaseReport(const PairScorer &scorer, std::string dataset) {
  EvalReport report;
  report.dataset = std::move(dataset);
  report.topology = std::string(TopologyName(scorer.config().topology));
  report.similarity = std::string(SimMethodName(scorer.config().sim));
  return report;
}

void CountMissing(std::span<const PairScore> scores, EvalReport *report) {
  report->total = scores.size();
  report->missing = static_cast<size_t>(std::count_if(
      scores.begin(), scores.end(), [](const auto &s) { return s.missing(); }));
  report->scored = report->total - report->missing;
}

}  // namespace

EvalReport EvaluateDirection(std::span<const LabeledPair> pairs,
                             PairScorer &scorer, std::string dataset_name) {
  std::vector<std::pair<std::string, std::string>> hypernyms;
  for (const auto &p : pairs) {
    if (p.is_hypernym) hypernyms.emplace_back(p.w1, p.w2);
  }
  if (hypernyms.empty()) {
    throw Error(ErrorCode::kUndefinedMetric, "dataset has no hypernym pairs");
  }
  std::vector<PairScore> scores = scorer.ScoreAll(hypernyms);
  EvalReport report = BaseReport(scorer, std::move(dataset_name));
  report.relation = "hyper";
  report.metric = "precision";
  report.value = DirectionalityPrecision(scores);
  CountMissing(scores, &report);
  return report;
}

EvalReport EvaluateDetection(std::span<const LabeledPair> pairs,
                             std::string_view relation_filter,
                             PairScorer &scorer, std::string dataset_name,
                             TieMode tie) {
  std::string filter = Casefold(TrimView(relation_filter));
  std::vector<std::pair<std::string, std::string>> retained;
  std::vector<bool> positive;
  size_t negatives = 0;
  for (const auto &p : pairs) {
    bool keep = p.is_hypernym || filter == "all" ||
                Casefold(TrimView(p.relation)) == filter;
    if (!keep) continue;
    retained.emplace_back(p.w1, p.w2);
    positive.push_back(p.is_hypernym);
    if (!p.is_hypernym) ++negatives;
  }
  if (negatives == 0) {
    throw Error(ErrorCode::kUndefinedMetric,
                "relation filter '" + std::string(relation_filter) +
                    "' matches no pairs");
  }
  std::vector<PairScore> scores = scorer.ScoreAll(retained);
  std::vector<RankedItem> items;
  items.reserve(scores.size());
  for (size_t i = 0; i < scores.size(); ++i) {
    items.push_back({scores[i].combined, positive[i]});
  }
  EvalReport report = BaseReport(scorer, std::move(dataset_name));
  report.relation = filter;
  report.metric = "AP";
  report.value = AveragePrecision(items, tie);
  CountMissing(scores, &report);
  return report;
}

std::string ReportToJson(const EvalReport &report) {
  nlohmann::ordered_json json;
  json["dataset"] = report.dataset;
  json["topology"] = report.topology;
  json["similarity"] = report.similarity;
  json["relation"] = report.relation;
  json["total"] = report.total;
  json["scored"] = report.scored;
  json["missing"] = report.missing;
  json["metric"] = report.metric;
  json["value"] = report.value;
  return json.dump(2);
}

}  // namespace hyperdepth
