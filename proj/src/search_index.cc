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

#include "search_index.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "error.h"
#include "parallel.h"
#include "text.h"

namespace hyperdepth {

namespace {

constexpr char kMagic[8] = {'H', 'D', 'I', 'D', 'X', '0', '0', '1'};

struct TokenizedDoc {
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> heading_tokens;
};

template <typename T>
void WritePod(std::ostream &out, const T &value) {
  out.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

template <typename T>
T ReadPod(std::istream &in) {
  T value{};
  in.read(reinterpret_cast<char *>(&value), sizeof(T));
  if (!in) throw Error(ErrorCode::kParse, "truncated index file");
  return value;
}

void WriteString(std::ostream &out, const std::string &s) {
  WritePod<uint64_t>(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string ReadString(std::istream &in) {
  auto size = ReadPod<uint64_t>(in);
  if (size > (1ULL << 32)) throw Error(ErrorCode::kParse, "corrupt index file");
  std::string s(size, '\0');
  in.read(s.data(), static_cast<std::streamsize>(size));
  if (!in) throw Error(ErrorCode::kParse, "truncated index file");
  return s;
}

template <typename T>
void WriteVector(std::ostream &out, const std::vector<T> &v) {
  WritePod<uint64_t>(out, v.size());
  out.write(reinterpret_cast<const char *>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <typename T>
std::vector<T> ReadVector(std::istream &in) {
  auto size = ReadPod<uint64_t>(in);
  if (size > (1ULL << 36) / sizeof(T)) {
    throw Error(ErrorCode::kParse, "corrupt index file");
  }
  std::vector<T> v(size);
  in.read(reinterpret_cast<char *>(v.data()),
          static_cast<std::streamsize>(size * sizeof(T)));
  if (!in) throw Error(ErrorCode::kParse, "truncated index file");
  return v;
}

}  // namespace

double Bm25Score(uint32_t phrase_frequency, uint32_t doc_length,
                 double avg_doc_length, uint32_t doc_count,
                 uint32_t docs_with_phrase, const Bm25Params &params) {
  double n = docs_with_phrase;
  double idf = std::log(1.0 + (doc_count - n + 0.5) / (n + 0.5));
  double tf = phrase_frequency;
  double norm = avg_doc_length > 0 ? doc_length / avg_doc_length : 0.0;
  return idf * tf * (params.k1 + 1.0) /
         (tf + params.k1 * (1.0 - params.b + params.b * norm));
}

InvertedIndex InvertedIndex::Build(const Corpus &corpus, unsigned threads) {
  InvertedIndex index;
  index.fingerprint_ = CorpusFingerprint(corpus);

  std::vector<const Article *> docs;
  for (const auto &[title, article] : corpus.articles()) {
    if (!article.is_redirect()) docs.push_back(&article);
  }
  std::sort(docs.begin(), docs.end(),
            [](const Article *a, const Article *b) { return a->id < b->id; });

  std::vector<TokenizedDoc> tokenized(docs.size());
  ParallelFor(docs.size(), threads, [&](size_t d) {
    for (const Unit &unit : docs[d]->units) {
      for (auto &token : Tokenize(unit.heading)) {
        tokenized[d].heading_tokens.push_back(std::move(token));
      }
      for (const auto &sentence : unit.sentences) {
        tokenized[d].sentences.push_back(Tokenize(sentence));
      }
    }
  });

  uint64_t total_length = 0;
  index.doc_sentence_begin_.push_back(0);
  index.sentence_begin_.push_back(0);
  for (size_t d = 0; d < docs.size(); ++d) {
    index.doc_ids_.push_back(docs[d]->id);
    index.doc_titles_.push_back(docs[d]->normalized_title);
    std::unordered_map<uint32_t, uint32_t> tf;
    std::vector<uint32_t> first_seen;
    auto intern = [&](const std::string &token) {
      auto [it, inserted] =
          index.term_ids_.emplace(token, static_cast<uint32_t>(index.terms_.size()));
      if (inserted) {
        index.terms_.push_back(token);
        index.postings_.emplace_back();
      }
      if (tf[it->second]++ == 0) first_seen.push_back(it->second);
      return it->second;
    };
    uint32_t length = 0;
    for (const auto &token : tokenized[d].heading_tokens) {
      intern(token);
      ++length;
    }
    for (const auto &sentence : tokenized[d].sentences) {
      for (const auto &token : sentence) {
        index.tokens_.push_back(intern(token));
        ++length;
      }
      index.sentence_begin_.push_back(index.tokens_.size());
    }
    index.doc_sentence_begin_.push_back(index.sentence_begin_.size() - 1);
    for (uint32_t term : first_seen) {
      index.postings_[term].push_back({static_cast<uint32_t>(d), tf[term]});
    }
    index.doc_lengths_.push_back(length);
    total_length += length;
  }
  index.avg_doc_length_ =
      docs.empty() ? 0.0 : static_cast<double>(total_length) / docs.size();
  return index;
}

const std::vector<InvertedIndex::Posting> &InvertedIndex::postings(
    std::string_view token) const {
  static const std::vector<Posting> kEmpty;
  auto it = term_ids_.find(std::string(token));
  return it == term_ids_.end() ? kEmpty : postings_[it->second];
}

uint32_t InvertedIndex::PhraseFrequency(uint32_t doc,
                                        const std::vector<uint32_t> &ids) const {
  uint32_t count = 0;
  for (uint64_t s = doc_sentence_begin_[doc]; s < doc_sentence_begin_[doc + 1];
       ++s) {
    auto begin = tokens_.begin() + static_cast<ptrdiff_t>(sentence_begin_[s]);
    auto end = tokens_.begin() + static_cast<ptrdiff_t>(sentence_begin_[s + 1]);
    if (std::search(begin, end, ids.begin(), ids.end()) != end) ++count;
  }
  return count;
}

std::vector<SearchHit> InvertedIndex::TopK(std::string_view phrase,
                                           size_t k) const {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  std::vector<std::string> tokens = Tokenize(phrase);
  if (tokens.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "query phrase is empty");
  }
  std::vector<uint32_t> ids;
  for (const auto &token : tokens) {
    auto it = term_ids_.find(token);
    if (it == term_ids_.end()) return {};
    ids.push_back(it->second);
  }

  // Candidate documents contain every token of the phrase.
  std::vector<uint32_t> rarest_first(ids);
  std::sort(rarest_first.begin(), rarest_first.end(), [&](uint32_t a, uint32_t b) {
    return postings_[a].size() < postings_[b].size();
  });
  std::vector<uint32_t> candidates;
  for (const Posting &p : postings_[rarest_first.front()]) candidates.push_back(p.doc);
  for (size_t t = 1; t < rarest_first.size() && !candidates.empty(); ++t) {
    std::vector<uint32_t> docs;
    for (const Posting &p : postings_[rarest_first[t]]) docs.push_back(p.doc);
    std::vector<uint32_t> kept;
    std::set_intersection(candidates.begin(), candidates.end(), docs.begin(),
                          docs.end(), std::back_inserter(kept));
    candidates = std::move(kept);
  }

  std::vector<SearchHit> hits;
  std::vector<uint32_t> hit_docs;
  for (uint32_t doc : candidates) {
    uint32_t pf = PhraseFrequency(doc, ids);
    if (pf == 0) continue;
    hits.push_back({doc_ids_[doc], doc_titles_[doc], pf, 0.0});
    hit_docs.push_back(doc);
  }
  auto with_phrase = static_cast<uint32_t>(hits.size());
  for (size_t h = 0; h < hits.size(); ++h) {
    hits[h].score = Bm25Score(hits[h].phrase_frequency, doc_lengths_[hit_docs[h]],
                              avg_doc_length_, doc_count(), with_phrase);
  }
  std::sort(hits.begin(), hits.end(), [](const SearchHit &a, const SearchHit &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.normalized_title < b.normalized_title;
  });
  if (hits.size() > k) hits.resize(k);
  return hits;
}

void InvertedIndex::Save(std::ostream &out) const {
  out.write(kMagic, sizeof(kMagic));
  WritePod(out, fingerprint_);
  WritePod<uint64_t>(out, doc_ids_.size());
  for (size_t d = 0; d < doc_ids_.size(); ++d) {
    WriteString(out, doc_ids_[d]);
    WriteString(out, doc_titles_[d]);
  }
  WriteVector(out, doc_lengths_);
  WritePod(out, avg_doc_length_);
  WritePod<uint64_t>(out, terms_.size());
  for (size_t t = 0; t < terms_.size(); ++t) {
    WriteString(out, terms_[t]);
    WriteVector(out, postings_[t]);
  }
  WriteVector(out, tokens_);
  WriteVector(out, sentence_begin_);
  WriteVector(out, doc_sentence_begin_);
}

InvertedIndex InvertedIndex::Load(std::istream &in) {
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || !std::equal(magic, magic + sizeof(magic), kMagic)) {
    throw Error(ErrorCode::kParse, "not a hyperdepth index file");
  }
  InvertedIndex index;
  index.fingerprint_ = ReadPod<uint64_t>(in);
  auto docs = ReadPod<uint64_t>(in);
  for (uint64_t d = 0; d < docs; ++d) {
    index.doc_ids_.push_back(ReadString(in));
    index.doc_titles_.push_back(ReadString(in));
  }
  index.doc_lengths_ = ReadVector<uint32_t>(in);
  index.avg_doc_length_ = ReadPod<double>(in);
  auto terms = ReadPod<uint64_t>(in);
  for (uint64_t t = 0; t < terms; ++t) {
    index.terms_.push_back(ReadString(in));
    index.term_ids_.emplace(index.terms_.back(), static_cast<uint32_t>(t));
    index.postings_.push_back(ReadVector<Posting>(in));
  }
  index.tokens_ = ReadVector<uint32_t>(in);
  index.sentence_begin_ = ReadVector<uint64_t>(in);
  index.doc_sentence_begin_ = ReadVector<uint64_t>(in);
  if (index.doc_lengths_.size() != docs ||
      index.doc_sentence_begin_.size() != docs + 1 ||
      index.sentence_begin_.empty() ||
      index.sentence_begin_.back() != index.tokens_.size()) {
    throw Error(ErrorCode::kParse, "inconsistent index file");
  }
  for (const auto &list : index.postings_) {
    for (const Posting &p : list) {
      if (p.doc >= docs) throw Error(ErrorCode::kParse, "inconsistent index file");
    }
  }
  for (uint32_t token : index.tokens_) {
    if (token >= terms) throw Error(ErrorCode::kParse, "inconsistent index file");
  }
  for (uint64_t s : index.doc_sentence_begin_) {
    if (s >= index.sentence_begin_.size()) {
      throw Error(ErrorCode::kParse, "inconsistent index file");
    }
  }
  return index;
}

void InvertedIndex::SaveFile(const std::string &path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write index file: " + path);
  Save(out);
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path);
}

InvertedIndex InvertedIndex::LoadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open index file: " + path);
  return Load(in);
}

}  // namespace hyperdepth
