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

#ifndef HYPERDEPTH_CORPUS_H_
#define HYPERDEPTH_CORPUS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hyperdepth {

// A heading plus the sentences that follow it up to the next heading. Level 0
// is the lead unit whose heading is the page title.
struct Unit {
  std::string heading;
  int level = 0;
  std::vector<std::string> sentences;
  std::vector<std::string> links;  // normalized titles, in page order

  bool operator==(const Unit &) const = default;
};

struct Article {
  std::string id;
  std::string title;
  std::string normalized_title;
  bool is_disambiguation = false;
  std::optional<std::string> redirect_target;
  std::vector<Unit> units;

  bool is_redirect() const { return redirect_target.has_value(); }

  bool operator==(const Article &) const = default;
};

// Position of a phrase occurrence: unit index and 0-based sentence index.
struct Occurrence {
  int unit = 0;
  int sentence = 0;

  auto operator<=>(const Occurrence &) const = default;
};

// Casefolds, maps underscores to spaces and collapses whitespace. Throws
// kInvalidArgument on a blank title.
std::string NormalizeTitle(std::string_view raw);

// Checks the structural invariants of a single article; throws kParse with a
// description on violation.
void ValidateArticle(const Article &article);

// Sentences containing `phrase` as a contiguous token run, one entry per
// (unit, sentence), sorted. Headings never host occurrences.
std::vector<Occurrence> FindOccurrences(const Article &article,
                                        std::string_view phrase);

// Same, for a phrase that is already tokenized.
std::vector<Occurrence> FindOccurrences(const Article &article,
                                        const std::vector<std::string> &tokens);

// Articles keyed by normalized title. Immutable once built.
class Corpus {
 public:
  static constexpr int kMaxRedirectHops = 4;

  // Throws kDuplicate if the normalized title or the id is already present.
  void Add(Article article);

  const Article *Find(std::string_view normalized_title) const;
  const Article *FindById(std::string_view id) const;

  // Looks up `title` (normalized here) and follows redirects. Returns null
  // when the title is absent, the chain is longer than kMaxRedirectHops, or
  // it loops.
  const Article *Resolve(std::string_view title) const;

  size_t size() const { return articles_.size(); }
  bool empty() const { return articles_.empty(); }

  // Ordered by normalized title.
  const std::map<std::string, Article, std::less<>> &articles() const {
    return articles_;
  }

  bool operator==(const Corpus &other) const {
    return articles_ == other.articles_;
  }

 private:
  std::map<std::string, Article, std::less<>> articles_;
  std::unordered_map<std::string, std::string> title_by_id_;
};

// Line-delimited JSON corpus file. One article per line, sorted by
// normalized title on write.
Corpus ReadCorpus(std::istream &in);
Corpus ReadCorpusFile(const std::string &path);
void WriteCorpus(const Corpus &corpus, std::ostream &out);
void WriteCorpusFile(const Corpus &corpus, const std::string &path);

std::string SerializeArticle(const Article &article);
Article ParseArticle(std::string_view line);

// FNV-1a 64 over the canonical serialization. Used to key index sidecars.
uint64_t CorpusFingerprint(const Corpus &corpus);

}  // namespace hyperdepth

#endif  // HYPERDEPTH_CORPUS_H_
