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

#ifndef HYPERDEPTH_WIKI_INGEST_H_
#define HYPERDEPTH_WIKI_INGEST_H_

#include <deque>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.h"

namespace hyperdepth {

struct RawPage {
  std::string id;
  std::string title;
  int ns = 0;
  std::string wikitext;
};

// Streaming reader over a MediaWiki XML export. Input is consumed in fixed
// size chunks, so memory is bounded by the chunk size plus the largest page.
// Pages without revision text are skipped and counted.
class DumpReader {
 public:
  static constexpr size_t kChunkSize = 64 * 1024;

  explicit DumpReader(std::istream &in);
  ~DumpReader();
  DumpReader(const DumpReader &) = delete;
  DumpReader &operator=(const DumpReader &) = delete;

  // Next page in document order, or nullopt at end of input. Throws kParse
  // with the byte offset on malformed XML.
  std::optional<RawPage> Next();

  size_t pages_without_text() const;
  // Largest number of bytes held in pending pages at any point.
  size_t buffered_high_water() const;

  struct State;

 private:
  std::istream &in_;
  std::unique_ptr<State> state_;
  bool finished_ = false;
};

struct Section {
  std::string heading;
  int level = 0;
  std::string body;

  bool operator==(const Section &) const = default;
};

// Splits wikitext at heading lines. The lead becomes a level-0 section titled
// `title`; `== H ==` opens a level-1 section, `=== H ===` level 2, and so on.
// Bodies are returned raw (markup intact).
std::vector<Section> SplitRawSections(std::string_view wikitext,
                                      std::string_view title);

// As SplitRawSections, with markup stripped from headings and bodies.
std::vector<Section> SegmentSections(std::string_view wikitext,
                                     std::string_view title);

// Removes comments, references, templates, tables, file/category links,
// bold/italic quotes, HTML tags and list markers; keeps link labels.
std::string StripMarkup(std::string_view wikitext);

std::vector<std::string> SplitSentences(std::string_view text);

bool DetectDisambiguation(const RawPage &page);

// Normalized targets of [[Target]] / [[Target|label]] links, in order.
std::vector<std::string> ExtractLinks(std::string_view wikitext);

// Target of a `#REDIRECT [[X]]` page, normalized.
std::optional<std::string> DetectRedirect(std::string_view wikitext);

// Converts one page into an article; nullopt if the namespace does not match.
std::optional<Article> ConvertPage(const RawPage &page, int ns = 0);

struct IngestStats {
  size_t pages_read = 0;
  size_t articles_written = 0;
  size_t skipped_no_text = 0;
  size_t filtered_namespace = 0;
  size_t duplicate_titles = 0;
};

// Whole pipeline: dump stream to corpus. Progress is reported through the
// stats struct.
Corpus IngestDump(std::istream &dump, int ns, IngestStats *stats);

}  // namespace hyperdepth

#endif  // HYPERDEPTH_WIKI_INGEST_H_
