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

// Builders shared by the unit and acceptance tests.

#ifndef HYPERDEPTH_TESTS_TEST_UTIL_H_
#define HYPERDEPTH_TESTS_TEST_UTIL_H_

#include <string>
#include <utility>
#include <vector>

#include "corpus.h"

namespace hyperdepth::testing {

struct UnitSpec {
  std::string heading;
  int level;
  std::vector<std::string> sentences;
  std::vector<std::string> links = {};
};

inline Article MakeArticle(const std::string &title, std::vector<UnitSpec> units,
                           bool disambiguation = false) {
  Article article;
  article.title = title;
  article.normalized_title = NormalizeTitle(title);
  article.id = "id:" + article.normalized_title;
  article.is_disambiguation = disambiguation;
  for (auto &spec : units) {
    Unit unit;
    unit.heading = spec.heading;
    unit.level = spec.level;
    unit.sentences = std::move(spec.sentences);
    unit.links = std::move(spec.links);
    article.units.push_back(std::move(unit));
  }
  return article;
}

inline Article MakeRedirect(const std::string &title, const std::string &target) {
  Article article;
  article.title = title;
  article.normalized_title = NormalizeTitle(title);
  article.id = "id:" + article.normalized_title;
  article.redirect_target = NormalizeTitle(target);
  return article;
}

// Article whose units carry the given levels, one filler sentence each.
inline Article MakeLeveledArticle(const std::string &title,
                                  const std::vector<int> &levels) {
  std::vector<UnitSpec> units;
  for (size_t i = 0; i < levels.size(); ++i) {
    units.push_back({i == 0 ? title : "Section " + std::to_string(i), levels[i],
                     {"Filler sentence."}});
  }
  return MakeArticle(title, std::move(units));
}

// Expected average precision of a uniformly random ranking of n items of
// which p are positive.
inline double ExpectedRandomAp(int n, int p) {
  if (n == 1) return 1.0;
  double harmonic = 0.0;
  for (int i = 1; i <= n; ++i) harmonic += 1.0 / i;
  return double(p - 1) / (n - 1) + double(n - p) / (double(n) * (n - 1)) * harmonic;
}

}  // namespace hyperdepth::testing

#endif  // HYPERDEPTH_TESTS_TEST_UTIL_H_
