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

#ifndef HYPERDEPTH_HEADING_ENGINE_H_
#define HYPERDEPTH_HEADING_ENGINE_H_

#include <istream>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corpus.h"

namespace hyperdepth {

using HeadingSet = std::set<std::string>;

// One meaning of a word: the headings of one non-disambiguation article.
struct Meaning {
  std::string source_title;
  HeadingSet headings;

  bool operator==(const Meaning &) const = default;
};

// The collection of heading sets for every resolved meaning of a word.
struct HeadingSets {
  std::string word;
  std::vector<Meaning> meanings;  // sorted by source title
};

struct HeadingOptions {
  int max_disambig_hops = 2;
  bool use_stoplist = true;
};

// Headings present on almost every page; dropped when use_stoplist is set.
const std::set<std::string, std::less<>> &BoilerplateHeadings();

std::string NormalizeHeading(std::string_view heading);

// Resolves `word` to its article (following redirects) and walks
// disambiguation pages breadth first. Ordinary articles contribute their
// heading set; disambiguation pages contribute their outgoing links as
// further candidates. Titles are visited at most once, and pages more than
// max_disambig_hops disambiguation expansions away from the start are not
// expanded into. A word without an article yields no meanings.
HeadingSets ExtractHeadings(std::string_view word, const Corpus &corpus,
                            const HeadingOptions &options = {});

// |a ∩ b| / |a ∪ b|, and 0 when both are empty.
double Jaccard(const HeadingSet &a, const HeadingSet &b);

// Pretrained word vectors in the common text format: optional "count dim"
// header line, then "token v1 ... vd" per line.
class EmbeddingTable {
 public:
  static EmbeddingTable Load(std::istream &in);
  static EmbeddingTable LoadFile(const std::string &path);

  void Add(std::string_view token, std::span<const double> vector);

  int dimension() const { return dimension_; }
  size_t size() const { return rows_.size(); }
  // Empty span when the (casefolded) token is unknown.
  std::span<const double> Find(std::string_view token) const;

 private:
  int dimension_ = 0;
  std::unordered_map<std::string, size_t> rows_;
  std::vector<double> values_;
};

// Mean over headings of the mean vector of each heading's known tokens.
// Headings with no known token are skipped; nullopt when all are skipped.
std::optional<std::vector<double>> EmbeddingSetVector(const HeadingSet &headings,
                                                      const EmbeddingTable &table);

// Cosine clamped to [0, 1]; nullopt if either vector has zero norm.
std::optional<double> ClampedCosine(std::span<const double> a,
                                    std::span<const double> b);

enum class SimMethod { kJaccard, kEmbeddingCosine };

std::string_view SimMethodName(SimMethod method);
// Accepts "jaccard" / "cosine"; throws kInvalidArgument otherwise.
SimMethod ParseSimMethod(std::string_view name);

// Maximum similarity over all pairs of meanings. Zero when either side is
// empty or no pair has a defined similarity. Cosine mode requires a table
// (kInvalidArgument otherwise).
double SimScore(const HeadingSets &s1, const HeadingSets &s2, SimMethod method,
                const EmbeddingTable *table = nullptr);

}  // namespace hyperdepth

#endif  // HYPERDEPTH_HEADING_ENGINE_H_
