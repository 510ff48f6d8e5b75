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

#include "depth_engine.h"

#include <algorithm>

#include "error.h"
#include "parallel.h"

namespace hyperdepth {

std::string_view TopologyName(Topology topology) {
  return topology == Topology::kStar ? "star" : "linear";
}

Topology ParseTopology(std::string_view name) {
  if (name == "star") return Topology::kStar;
  if (name == "linear") return Topology::kLinear;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown topology '" + std::string(name) + "'");
}

DepthAssignment AssignDepths(const Article &article, Topology topology) {
  if (article.units.empty()) {
    throw Error(ErrorCode::kNotComputable,
                "article '" + article.title + "' has no units");
  }
  DepthAssignment assignment;
  assignment.unit_depths.reserve(article.units.size());
  for (size_t i = 0; i < article.units.size(); ++i) {
    int depth = topology == Topology::kStar ? article.units[i].level
                                            : static_cast<int>(i);
    assignment.unit_depths.push_back(depth);
  }
  assignment.unit_depths.front() = 0;
  assignment.total_depth =
      *std::max_element(assignment.unit_depths.begin(),
                        assignment.unit_depths.end()) + 1;
  return assignment;
}

double LambdaArticle(const Article &article, std::string_view word,
                     Topology topology) {
  DepthAssignment depths = AssignDepths(article, topology);
  double lambda = 0.0;
  for (const Occurrence &occ : FindOccurrences(article, word)) {
    const Unit &unit = article.units[occ.unit];
    double unit_factor = 1.0 - static_cast<double>(depths.unit_depths[occ.unit]) /
                                   depths.total_depth;
    double sentence_factor =
        1.0 - static_cast<double>(occ.sentence) / unit.sentences.size();
    lambda += unit_factor * sentence_factor;
  }
  return lambda;
}

std::optional<double> Median(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

DepthProfile LambdaWord(std::string_view word, const InvertedIndex &index,
                        const Corpus &corpus, Topology topology, size_t k,
                        unsigned threads) {
  DepthProfile profile;
  profile.word = std::string(word);
  std::vector<SearchHit> hits = index.TopK(word, k);
  profile.per_article.resize(hits.size());
  ParallelFor(hits.size(), threads, [&](size_t h) {
    const Article *article = corpus.Find(hits[h].normalized_title);
    if (article == nullptr || article->id != hits[h].id) {
      throw Error(ErrorCode::kInvalidArgument,
                  "index does not match corpus (missing '" + hits[h].id + "')");
    }
    profile.per_article[h] = {hits[h].id, LambdaArticle(*article, word, topology)};
  });
  std::sort(profile.per_article.begin(), profile.per_article.end());
  std::vector<double> values;
  values.reserve(profile.per_article.size());
  for (const auto &[id, lambda] : profile.per_article) values.push_back(lambda);
  profile.aggregate = Median(std::move(values));
  return profile;
}

}  // namespace hyperdepth
