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

#ifndef HYPERDEPTH_SEARCH_INDEX_H_
#define HYPERDEPTH_SEARCH_INDEX_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corpus.h"

namespace hyperdepth {

struct SearchHit {
  std::string id;
  std::string normalized_title;
  uint32_t phrase_frequency = 0;  // sentences with a contiguous match
  double score = 0.0;
};

// BM25 parameters. The phrase is scored as a single term.
struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

// Ranks documents by BM25 with the whole phrase as the term. The term
// frequency of a document is the number of its sentences containing the
// phrase; `docs_with_phrase` is the document frequency.
double Bm25Score(uint32_t phrase_frequency, uint32_t doc_length,
                 double avg_doc_length, uint32_t doc_count,
                 uint32_t docs_with_phrase, const Bm25Params &params = {});

// Inverted index over sentence and heading tokens, plus a forward store of
// sentence token ids used to verify phrase matches. Redirects are skipped.
// Documents are numbered in ascending article id order.
class InvertedIndex {
 public:
  struct Posting {
    uint32_t doc;
    uint32_t tf;
    bool operator==(const Posting &) const = default;
  };

  static InvertedIndex Build(const Corpus &corpus, unsigned threads = 1);

  // At most k hits with phrase frequency >= 1, best first; ties go to the
  // smaller normalized title.
  std::vector<SearchHit> TopK(std::string_view phrase, size_t k) const;

  uint32_t doc_count() const { return static_cast<uint32_t>(doc_ids_.size()); }
  double avg_doc_length() const { return avg_doc_length_; }
  uint32_t doc_length(uint32_t doc) const { return doc_lengths_[doc]; }
  const std::string &doc_id(uint32_t doc) const { return doc_ids_[doc]; }
  const std::string &doc_title(uint32_t doc) const { return doc_titles_[doc]; }
  uint64_t fingerprint() const { return fingerprint_; }

  // Empty when the token is not indexed.
  const std::vector<Posting> &postings(std::string_view token) const;

  // Binary sidecar. Load throws kParse on a damaged file; a file built from a
  // different corpus loads fine and is detected with IsCurrentFor.
  void Save(std::ostream &out) const;
  static InvertedIndex Load(std::istream &in);
  void SaveFile(const std::string &path) const;
  static InvertedIndex LoadFile(const std::string &path);
  bool IsCurrentFor(const Corpus &corpus) const {
    return fingerprint_ == CorpusFingerprint(corpus);
  }

  bool operator==(const InvertedIndex &) const = default;

 private:
  uint32_t PhraseFrequency(uint32_t doc, const std::vector<uint32_t> &ids) const;

  uint64_t fingerprint_ = 0;
  std::vector<std::string> doc_ids_;
  std::vector<std::string> doc_titles_;
  std::vector<uint32_t> doc_lengths_;
  double avg_doc_length_ = 0.0;

  std::vector<std::string> terms_;
  std::unordered_map<std::string, uint32_t> term_ids_;
  std::vector<std::vector<Posting>> postings_;

  // Sentence s of the corpus spans tokens_[sentence_begin_[s] ..
  // sentence_begin_[s+1]); document d owns sentences doc_sentence_begin_[d] ..
  // doc_sentence_begin_[d+1].
  std::vector<uint32_t> tokens_;
  std::vector<uint64_t> sentence_begin_;
  std::vector<uint64_t> doc_sentence_begin_;
};

}  // namespace hyperdepth

#endif  // HYPERDEPTH_SEARCH_INDEX_H_
