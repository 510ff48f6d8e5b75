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

#ifndef HYPERDEPTH_DEPTH_ENGINE_H_
#define HYPERDEPTH_DEPTH_ENGINE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus.h"
#include "search_index.h"

namespace hyperdepth {

// Shape of the rooted tree laid over an article's units. Star uses the
// section nesting level as depth; Linear chains every unit to the next one.
enum class Topology { kStar, kLinear };

std::string_view TopologyName(Topology topology);
// Accepts "star" / "linear"; throws kInvalidArgument otherwise.
Topology ParseTopology(std::string_view name);

struct DepthAssignment {
  std::vector<int> unit_depths;
  int total_depth = 1;  // max depth + 1, so every depth factor is in (0, 1]
};

// Throws kNotComputable for an article without units (a redirect).
DepthAssignment AssignDepths(const Article &article, Topology topology);

// Depth measure of `word` inside one article:
//
//   sum over occurrences (unit i, sentence j) of
//       (1 - depth(i) / total_depth) * (1 - j / sentences(i))
//
// with j 0-based. Zero when the word does not occur.
double LambdaArticle(const Article &article, std::string_view word,
                     Topology topology);

struct DepthProfile {
  std::string word;
  // (article id, lambda) sorted by article id.
  std::vector<std::pair<std::string, double>> per_article;
  // Median of per_article values; empty when no article was retrieved.
  std::optional<double> aggregate;
};

// Median, with the mean of the two middle values for even counts.
std::optional<double> Median(std::vector<double> values);

// Depth measure of `word` aggregated over the top k retrieved articles.
DepthProfile LambdaWord(std::string_view word, const InvertedIndex &index,
                        const Corpus &corpus, Topology topology, size_t k,
                        unsigned threads = 1);

}  // namespace hyperdepth

#endif  // HYPERDEPTH_DEPTH_ENGINE_H_
