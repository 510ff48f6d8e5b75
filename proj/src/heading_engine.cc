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

#include "heading_engine.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "error.h"
#include "text.h"

namespace hyperdepth {

const std::set<std::string, std::less<>> &BoilerplateHeadings() {
  static const std::set<std::string, std::less<>> kHeadings = {
      "references", "external links", "see also", "notes", "further reading"};
  return kHeadings;
}

std::string NormalizeHeading(std::string_view heading) {
  return CollapseWhitespace(Casefold(heading));
}

HeadingSets ExtractHeadings(std::string_view word, const Corpus &corpus,
                            const HeadingOptions &options) {
  HeadingSets result;
  result.word = std::string(word);
  const Article *start = corpus.Resolve(word);
  if (start == nullptr) return result;

  struct Pending {
    const Article *article;
    int hops;
  };
  std::deque<Pending> pending = {{start, 0}};
  std::unordered_set<std::string> visited = {start->normalized_title};
  while (!pending.empty()) {
    Pending page = pending.front();
    pending.pop_front();
    if (!page.article->is_disambiguation) {
      Meaning meaning{page.article->title, {}};
      for (const Unit &unit : page.article->units) {
        std::string heading = NormalizeHeading(unit.heading);
        if (heading.empty()) continue;
        if (options.use_stoplist && BoilerplateHeadings().contains(heading)) {
          continue;
        }
        meaning.headings.insert(std::move(heading));
      }
      result.meanings.push_back(std::move(meaning));
      continue;
    }
    if (page.hops + 1 > options.max_disambig_hops) continue;
    for (const Unit &unit : page.article->units) {
      for (const auto &link : unit.links) {
        const Article *target = corpus.Resolve(link);
        if (target == nullptr) continue;
        if (!visited.insert(target->normalized_title).second) continue;
        pending.push_back({target, page.hops + 1});
      }
    }
  }
  std::sort(result.meanings.begin(), result.meanings.end(),
            [](const Meaning &a, const Meaning &b) {
              return a.source_title < b.source_title;
            });
  return result;
}

double Jaccard(const HeadingSet &a, const HeadingSet &b) {
  if (a.empty() && b.empty()) return 0.0;
  size_t common = 0;
  for (const auto &h : a) common += b.count(h);
  return static_cast<double>(common) / (a.size() + b.size() - common);
}

void EmbeddingTable::Add(std::string_view token, std::span<const double> vector) {
  if (vector.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "embedding vector is empty");
  }
  if (dimension_ == 0) dimension_ = static_cast<int>(vector.size());
  if (static_cast<int>(vector.size()) != dimension_) {
    throw Error(ErrorCode::kParse, "vector for '" + std::string(token) +
                                       "' has dimension " +
                                       std::to_string(vector.size()) +
                                       ", expected " + std::to_string(dimension_));
  }
  std::string key = Casefold(token);
  if (rows_.contains(key)) return;
  rows_.emplace(std::move(key), rows_.size());
  values_.insert(values_.end(), vector.begin(), vector.end());
}

std::span<const double> EmbeddingTable::Find(std::string_view token) const {
  auto it = rows_.find(Casefold(token));
  if (it == rows_.end()) return {};
  return std::span<const double>(values_).subspan(it->second * dimension_,
                                                  dimension_);
}

EmbeddingTable EmbeddingTable::Load(std::istream &in) {
  EmbeddingTable table;
  std::string line;
  size_t line_number = 0;
  std::vector<double> vector;
  while (std::getline(in, line)) {
    ++line_number;
    if (TrimView(line).empty()) continue;
    std::istringstream fields(line);
    std::string token;
    fields >> token;
    vector.clear();
    std::string value;
    while (fields >> value) {
      try {
        size_t used = 0;
        vector.push_back(std::stod(value, &used));
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception &) {
        throw Error(ErrorCode::kParse, "line " + std::to_string(line_number) +
                                           ": bad number '" + value + "'");
      }
    }
    if (line_number == 1 && vector.size() == 1 &&
        token.find_first_not_of("0123456789") == std::string::npos) {
      table.dimension_ = static_cast<int>(vector.front());
      if (table.dimension_ < 1) {
        throw Error(ErrorCode::kParse, "line 1: dimension must be >= 1");
      }
      continue;
    }
    if (vector.empty()) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_number) + ": no vector values");
    }
    try {
      table.Add(token, vector);
    } catch (const Error &e) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return table;
}

EmbeddingTable EmbeddingTable::LoadFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open embeddings file: " + path);
  return Load(in);
}

std::optional<std::vector<double>> EmbeddingSetVector(const HeadingSet &headings,
                                                      const EmbeddingTable &table) {
  std::vector<double> sum(table.dimension(), 0.0);
  size_t used_headings = 0;
  for (const auto &heading : headings) {
    std::vector<double> heading_sum(table.dimension(), 0.0);
    size_t known = 0;
    for (const auto &token : Tokenize(heading)) {
      auto v = table.Find(token);
      if (v.empty()) continue;
      for (size_t d = 0; d < v.size(); ++d) heading_sum[d] += v[d];
      ++known;
    }
    if (known == 0) continue;
    for (size_t d = 0; d < sum.size(); ++d) sum[d] += heading_sum[d] / known;
    ++used_headings;
  }
  if (used_headings == 0) return std::nullopt;
  for (double &x : sum) x /= used_headings;
  return sum;
}

std::optional<double> ClampedCosine(std::span<const double> a,
                                    std::span<const double> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t d = 0; d < a.size() && d < b.size(); ++d) {
    dot += a[d] * b[d];
    na += a[d] * a[d];
    nb += b[d] * b[d];
  }
  if (na == 0.0 || nb == 0.0) return std::nullopt;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

std::string_view SimMethodName(SimMethod method) {
  return method == SimMethod::kJaccard ? "jaccard" : "cosine";
}

SimMethod ParseSimMethod(std::string_view name) {
  if (name == "jaccard") return SimMethod::kJaccard;
  if (name == "cosine") return SimMethod::kEmbeddingCosine;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown similarity method '" + std::string(name) + "'");
}

double SimScore(const HeadingSets &s1, const HeadingSets &s2, SimMethod method,
                const EmbeddingTable *table) {
  if (method == SimMethod::kEmbeddingCosine && table == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "cosine similarity needs an embedding table");
  }
  double best = 0.0;
  if (method == SimMethod::kJaccard) {
    for (const auto &m1 : s1.meanings) {
      for (const auto &m2 : s2.meanings) {
        best = std::max(best, Jaccard(m1.headings, m2.headings));
      }
    }
    return best;
  }
  std::vector<std::optional<std::vector<double>>> v2;
  for (const auto &m2 : s2.meanings) {
    v2.push_back(EmbeddingSetVector(m2.headings, *table));
  }
  for (const auto &m1 : s1.meanings) {
    auto v1 = EmbeddingSetVector(m1.headings, *table);
    if (!v1) continue;
    for (const auto &other : v2) {
      if (!other) continue;
      best = std::max(best, ClampedCosine(*v1, *other).value_or(0.0));
    }
  }
  return best;
}

}  // namespace hyperdepth
