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

#include "corpus.h"

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "error.h"
#include "text.h"

namespace hyperdepth {

namespace {

using Json = nlohmann::ordered_json;

const std::set<std::string, std::less<>> kArticleKeys = {
    "id", "title", "is_disambiguation", "redirect_target", "units"};
const std::set<std::string, std::less<>> kUnitKeys = {"heading", "level",
                                                      "sentences", "links"};

[[noreturn]] void Fail(const std::string &message) {
  throw Error(ErrorCode::kParse, message);
}

void CheckKeys(const Json &object,
               const std::set<std::string, std::less<>> &allowed,
               const char *what) {
  if (!object.is_object()) Fail(std::string(what) + " is not an object");
  for (const auto &item : object.items()) {
    if (!allowed.contains(item.key())) {
      Fail(std::string("unknown field '") + item.key() + "' in " + what);
    }
  }
  for (const auto &key : allowed) {
    if (!object.contains(key)) {
      Fail(std::string("missing field '") + key + "' in " + what);
    }
  }
}

std::vector<std::string> StringArray(const Json &value, const char *what) {
  if (!value.is_array()) Fail(std::string(what) + " must be an array");
  std::vector<std::string> out;
  out.reserve(value.size());
  for (const auto &item : value) {
    if (!item.is_string()) Fail(std::string(what) + " must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

std::string NormalizeTitle(std::string_view raw) {
  std::string folded = Casefold(raw);
  for (char &c : folded) {
    if (c == '_') c = ' ';
  }
  std::string normalized = CollapseWhitespace(folded);
  if (normalized.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "invalid title: empty");
  }
  return normalized;
}

void ValidateArticle(const Article &article) {
  if (article.id.empty()) Fail("article id is empty");
  if (article.is_redirect()) {
    if (!article.units.empty()) {
      Fail("redirect article '" + article.title + "' must have no units");
    }
    return;
  }
  if (article.units.empty()) {
    Fail("article '" + article.title + "' has no units and no redirect");
  }
  if (article.units.front().level != 0) {
    Fail("first unit of '" + article.title + "' must have level 0");
  }
  for (size_t i = 0; i < article.units.size(); ++i) {
    const Unit &unit = article.units[i];
    if (unit.level < 0) Fail("negative unit level in '" + article.title + "'");
    if (i > 0 && unit.level == 0) {
      Fail("article '" + article.title + "' has more than one level-0 unit");
    }
    for (const auto &sentence : unit.sentences) {
      if (TrimView(sentence).empty()) {
        Fail("blank sentence in '" + article.title + "'");
      }
    }
  }
}

std::vector<Occurrence> FindOccurrences(const Article &article,
                                        const std::vector<std::string> &tokens) {
  std::vector<Occurrence> found;
  if (tokens.empty()) return found;
  for (size_t u = 0; u < article.units.size(); ++u) {
    const auto &sentences = article.units[u].sentences;
    for (size_t s = 0; s < sentences.size(); ++s) {
      if (ContainsSequence(Tokenize(sentences[s]), tokens)) {
        found.push_back({static_cast<int>(u), static_cast<int>(s)});
      }
    }
  }
  return found;
}

std::vector<Occurrence> FindOccurrences(const Article &article,
                                        std::string_view phrase) {
  return FindOccurrences(article, Tokenize(phrase));
}

void Corpus::Add(Article article) {
  if (article.normalized_title.empty()) {
    article.normalized_title = NormalizeTitle(article.title);
  }
  if (articles_.contains(article.normalized_title)) {
    throw Error(ErrorCode::kDuplicate,
                "duplicate normalized title '" + article.normalized_title + "'");
  }
  if (title_by_id_.contains(article.id)) {
    throw Error(ErrorCode::kDuplicate, "duplicate article id '" + article.id + "'");
  }
  title_by_id_.emplace(article.id, article.normalized_title);
  std::string key = article.normalized_title;
  articles_.emplace(std::move(key), std::move(article));
}

const Article *Corpus::Find(std::string_view normalized_title) const {
  auto it = articles_.find(normalized_title);
  return it == articles_.end() ? nullptr : &it->second;
}

const Article *Corpus::FindById(std::string_view id) const {
  auto it = title_by_id_.find(std::string(id));
  return it == title_by_id_.end() ? nullptr : Find(it->second);
}

const Article *Corpus::Resolve(std::string_view title) const {
  if (TrimView(title).empty()) return nullptr;
  const Article *article = Find(NormalizeTitle(title));
  for (int hops = 0; article != nullptr && article->is_redirect(); ++hops) {
    if (hops == kMaxRedirectHops) return nullptr;
    article = Find(*article->redirect_target);
  }
  return article;
}

std::string SerializeArticle(const Article &article) {
  Json units = Json::array();
  for (const auto &unit : article.units) {
    Json u;
    u["heading"] = unit.heading;
    u["level"] = unit.level;
    u["sentences"] = unit.sentences;
    u["links"] = unit.links;
    units.push_back(std::move(u));
  }
  Json record;
  record["id"] = article.id;
  record["title"] = article.title;
  record["is_disambiguation"] = article.is_disambiguation;
  record["redirect_target"] = article.redirect_target
                                  ? Json(*article.redirect_target)
                                  : Json(nullptr);
  record["units"] = std::move(units);
  return record.dump(-1, ' ', false, Json::error_handler_t::replace);
}

Article ParseArticle(std::string_view line) {
  Json record;
  try {
    record = Json::parse(line);
  } catch (const Json::parse_error &e) {
    Fail(std::string("invalid JSON: ") + e.what());
  }
  CheckKeys(record, kArticleKeys, "article");
  Article article;
  if (!record["id"].is_string()) Fail("'id' must be a string");
  if (!record["title"].is_string()) Fail("'title' must be a string");
  if (!record["is_disambiguation"].is_boolean()) {
    Fail("'is_disambiguation' must be a boolean");
  }
  article.id = record["id"].get<std::string>();
  article.title = record["title"].get<std::string>();
  article.is_disambiguation = record["is_disambiguation"].get<bool>();
  const Json &redirect = record["redirect_target"];
  if (redirect.is_string()) {
    article.redirect_target = redirect.get<std::string>();
  } else if (!redirect.is_null()) {
    Fail("'redirect_target' must be null or a string");
  }
  if (!record["units"].is_array()) Fail("'units' must be an array");
  for (const auto &u : record["units"]) {
    CheckKeys(u, kUnitKeys, "unit");
    if (!u["heading"].is_string()) Fail("'heading' must be a string");
    if (!u["level"].is_number_integer()) Fail("'level' must be an integer");
    Unit unit;
    unit.heading = u["heading"].get<std::string>();
    unit.level = u["level"].get<int>();
    unit.sentences = StringArray(u["sentences"], "'sentences'");
    unit.links = StringArray(u["links"], "'links'");
    article.units.push_back(std::move(unit));
  }
  try {
    article.normalized_title = NormalizeTitle(article.title);
  } catch (const Error &) {
    Fail("article title is blank");
  }
  ValidateArticle(article);
  return article;
}

Corpus ReadCorpus(std::istream &in) {
  Corpus corpus;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (TrimView(line).empty()) continue;
    try {
      corpus.Add(ParseArticle(line));
    } catch (const Error &e) {
      throw Error(e.code(),
                  "line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return corpus;
}

Corpus ReadCorpusFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus file: " + path);
  return ReadCorpus(in);
}

void WriteCorpus(const Corpus &corpus, std::ostream &out) {
  for (const auto &[title, article] : corpus.articles()) {
    out << SerializeArticle(article) << '\n';
  }
}

void WriteCorpusFile(const Corpus &corpus, const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write corpus file: " + path);
  WriteCorpus(corpus, out);
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path);
}

uint64_t CorpusFingerprint(const Corpus &corpus) {
  uint64_t hash = 14695981039346656037ULL;
  auto mix = [&hash](std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash ^= c;
      hash *= 1099511628211ULL;
    }
  };
  for (const auto &[title, article] : corpus.articles()) {
    mix(SerializeArticle(article));
    mix("\n");
  }
  return hash;
}

}  // namespace hyperdepth
