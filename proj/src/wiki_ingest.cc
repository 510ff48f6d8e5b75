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

#include "wiki_ingest.h"

#include <expat.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "error.h"
#include "text.h"

namespace hyperdepth {

// Expat callback state. Completed pages are queued until Next() hands them out.
struct DumpReader::State {
  XML_Parser parser = nullptr;
  std::vector<std::string> stack;
  std::deque<RawPage> ready;
  size_t ready_bytes = 0;
  size_t high_water = 0;
  size_t no_text = 0;

  bool in_page = false;
  RawPage page;
  std::string ns_text;
  std::string revision_text;
  std::string page_text;
  std::string *capture = nullptr;

  const std::string &parent() const {
    static const std::string kNone;
    return stack.size() >= 2 ? stack[stack.size() - 2] : kNone;
  }

  void Track() {
    size_t pending = ready_bytes + page.title.size() + revision_text.size() +
                     page_text.size();
    high_water = std::max(high_water, pending);
  }

  static void OnStart(void *data, const XML_Char *name, const XML_Char **) {
    auto *s = static_cast<State *>(data);
    s->stack.emplace_back(name);
    const std::string &tag = s->stack.back();
    if (tag == "page") {
      s->in_page = true;
      s->page = RawPage();
      s->ns_text.clear();
      s->revision_text.clear();
      s->page_text.clear();
      return;
    }
    if (!s->in_page) return;
    const std::string &parent = s->parent();
    if (parent == "page") {
      if (tag == "title") s->capture = &s->page.title;
      if (tag == "ns") s->capture = &s->ns_text;
      if (tag == "id") s->capture = &s->page.id;
    } else if (parent == "revision" && tag == "text") {
      // Later revisions replace earlier ones.
      s->revision_text.clear();
      s->capture = &s->revision_text;
    }
  }

  static void OnEnd(void *data, const XML_Char *) {
    auto *s = static_cast<State *>(data);
    const std::string tag = s->stack.back();
    s->stack.pop_back();
    s->capture = nullptr;
    if (!s->in_page) return;
    if (tag == "text") {
      s->page_text = std::move(s->revision_text);
      s->revision_text.clear();
    } else if (tag == "page") {
      s->in_page = false;
      if (TrimView(s->page_text).empty()) {
        ++s->no_text;
        return;
      }
      try {
        s->page.ns = std::stoi(s->ns_text);
      } catch (const std::exception &) {
        s->page.ns = 0;
      }
      s->page.wikitext = std::move(s->page_text);
      s->page_text.clear();
      s->ready_bytes += s->page.title.size() + s->page.wikitext.size();
      s->ready.push_back(std::move(s->page));
      s->Track();
    }
  }

  static void OnText(void *data, const XML_Char *text, int len) {
    auto *s = static_cast<State *>(data);
    if (s->capture != nullptr) {
      s->capture->append(text, static_cast<size_t>(len));
      s->Track();
    }
  }
};

DumpReader::DumpReader(std::istream &in)
    : in_(in), state_(std::make_unique<State>()) {
  state_->parser = XML_ParserCreate("UTF-8");
  XML_SetUserData(state_->parser, state_.get());
  XML_SetElementHandler(state_->parser, &State::OnStart, &State::OnEnd);
  XML_SetCharacterDataHandler(state_->parser, &State::OnText);
}

DumpReader::~DumpReader() { XML_ParserFree(state_->parser); }

std::optional<RawPage> DumpReader::Next() {
  std::array<char, kChunkSize> buffer;
  while (state_->ready.empty() && !finished_) {
    in_.read(buffer.data(), buffer.size());
    auto got = static_cast<int>(in_.gcount());
    bool last = got < static_cast<int>(buffer.size());
    if (XML_Parse(state_->parser, buffer.data(), got, last) == XML_STATUS_ERROR) {
      throw Error(ErrorCode::kParse,
                  "malformed XML at byte offset " +
                      std::to_string(XML_GetCurrentByteIndex(state_->parser)) +
                      ": " + XML_ErrorString(XML_GetErrorCode(state_->parser)));
    }
    finished_ = last;
  }
  if (state_->ready.empty()) return std::nullopt;
  RawPage page = std::move(state_->ready.front());
  state_->ready.pop_front();
  state_->ready_bytes -= page.title.size() + page.wikitext.size();
  return page;
}

size_t DumpReader::pages_without_text() const { return state_->no_text; }

size_t DumpReader::buffered_high_water() const { return state_->high_water; }

namespace {

bool StartsWithFolded(std::string_view text, std::string_view prefix) {
  if (text.size() < prefix.size()) return false;
  return Casefold(text.substr(0, prefix.size())) == prefix;
}

std::vector<std::string_view> Lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

struct HeadingLine {
  std::string_view text;
  int level;
};

std::optional<HeadingLine> ParseHeadingLine(std::string_view line) {
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                           line.back() == '\r')) {
    line.remove_suffix(1);
  }
  size_t lead = 0;
  while (lead < line.size() && line[lead] == '=') ++lead;
  size_t trail = 0;
  while (trail < line.size() && line[line.size() - 1 - trail] == '=') ++trail;
  size_t n = std::min({lead, trail, size_t{6}});
  if (n < 2 || line.size() <= 2 * n) return std::nullopt;
  std::string_view inner = TrimView(line.substr(n, line.size() - 2 * n));
  if (inner.empty()) return std::nullopt;
  return HeadingLine{inner, static_cast<int>(n) - 1};
}

// Removes every balanced open...close span (nesting aware). Unbalanced
// delimiters are left as literal text.
std::string RemoveNested(std::string_view text, std::string_view open,
                         std::string_view close) {
  std::vector<size_t> stack;
  std::vector<std::pair<size_t, size_t>> spans;
  for (size_t i = 0; i < text.size();) {
    if (text.compare(i, open.size(), open) == 0) {
      stack.push_back(i);
      i += open.size();
    } else if (!stack.empty() && text.compare(i, close.size(), close) == 0) {
      spans.emplace_back(stack.back(), i + close.size());
      stack.pop_back();
      i += close.size();
    } else {
      ++i;
    }
  }
  if (spans.empty()) return std::string(text);
  std::sort(spans.begin(), spans.end());
  std::string out;
  size_t pos = 0;
  for (const auto &[begin, end] : spans) {
    if (end <= pos) continue;  // nested inside an earlier span
    if (begin > pos) out.append(text.substr(pos, begin - pos));
    pos = std::max(pos, end);
  }
  out.append(text.substr(pos));
  return out;
}

std::string RemoveBetween(std::string_view text, std::string_view open,
                          std::string_view close) {
  std::string out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t begin = text.find(open, pos);
    if (begin == std::string_view::npos) break;
    size_t end = text.find(close, begin + open.size());
    if (end == std::string_view::npos) break;
    out.append(text.substr(pos, begin - pos));
    pos = end + close.size();
  }
  out.append(text.substr(pos));
  return out;
}

std::string RemoveRefs(std::string_view text) {
  std::string folded = Casefold(text);
  std::string out;
  size_t pos = 0;
  while (true) {
    size_t begin = folded.find("<ref", pos);
    if (begin == std::string::npos) break;
    char after = begin + 4 < folded.size() ? folded[begin + 4] : '\0';
    if (after != '>' && after != ' ' && after != '/') {
      out.append(text.substr(pos, begin + 4 - pos));
      pos = begin + 4;
      continue;
    }
    size_t tag_end = folded.find('>', begin);
    if (tag_end == std::string::npos) break;
    out.append(text.substr(pos, begin - pos));
    if (folded[tag_end - 1] == '/') {
      pos = tag_end + 1;
      continue;
    }
    size_t close = folded.find("</ref>", tag_end);
    pos = close == std::string::npos ? tag_end + 1 : close + 6;
  }
  out.append(text.substr(pos));
  return out;
}

bool IsNamespacedMedia(std::string_view target) {
  static constexpr std::array<std::string_view, 5> kPrefixes = {
      "file:", "image:", "category:", "media:", ":category:"};
  for (auto prefix : kPrefixes) {
    if (StartsWithFolded(TrimView(target), prefix)) return true;
  }
  return false;
}

// Finds the "]]" closing the link opened at `open`, honoring nesting.
size_t MatchLink(std::string_view text, size_t open) {
  int depth = 0;
  for (size_t i = open; i + 1 < text.size();) {
    if (text[i] == '[' && text[i + 1] == '[') {
      ++depth;
      i += 2;
    } else if (text[i] == ']' && text[i + 1] == ']') {
      if (--depth == 0) return i;
      i += 2;
    } else {
      ++i;
    }
  }
  return std::string_view::npos;
}

std::string ReplaceLinks(std::string_view text) {
  std::string out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t open = text.find("[[", pos);
    if (open == std::string_view::npos) break;
    size_t close = MatchLink(text, open);
    if (close == std::string_view::npos) break;
    out.append(text.substr(pos, open - pos));
    std::string_view inner = text.substr(open + 2, close - open - 2);
    if (!IsNamespacedMedia(inner)) {
      size_t bar = inner.find('|');
      std::string_view label =
          bar == std::string_view::npos ? inner : inner.substr(bar + 1);
      if (bar == std::string_view::npos && !label.empty() &&
          label.front() == ':') {
        label.remove_prefix(1);
      }
      out.append(ReplaceLinks(label));
    }
    pos = close + 2;
  }
  out.append(text.substr(pos));
  return out;
}

std::string ReplaceExternalLinks(std::string_view text) {
  static constexpr std::array<std::string_view, 4> kSchemes = {
      "http://", "https://", "ftp://", "//"};
  std::string out;
  size_t pos = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '[') continue;
    std::string_view rest = text.substr(i + 1);
    bool is_url = std::any_of(kSchemes.begin(), kSchemes.end(),
                              [&](auto s) { return rest.starts_with(s); });
    if (!is_url) continue;
    size_t close = text.find(']', i);
    if (close == std::string_view::npos) break;
    out.append(text.substr(pos, i - pos));
    std::string_view inner = text.substr(i + 1, close - i - 1);
    size_t space = inner.find(' ');
    if (space != std::string_view::npos) out.append(inner.substr(space + 1));
    pos = close + 1;
    i = close;
  }
  out.append(text.substr(pos));
  return out;
}

std::string RemoveQuotesAndTags(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size();) {
    if (text[i] == '\'' && i + 1 < text.size() && text[i + 1] == '\'') {
      while (i < text.size() && text[i] == '\'') ++i;
      continue;
    }
    if (text[i] == '<' && i + 1 < text.size() &&
        (std::isalpha(static_cast<unsigned char>(text[i + 1])) ||
         text[i + 1] == '/')) {
      size_t close = text.find('>', i);
      if (close != std::string_view::npos) {
        i = close + 1;
        continue;
      }
    }
    if (text.compare(i, 2, "__") == 0) {
      size_t j = i + 2;
      while (j < text.size() && std::isupper(static_cast<unsigned char>(text[j])))
        ++j;
      if (j > i + 2 && text.compare(j, 2, "__") == 0) {
        i = j + 2;
        continue;
      }
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

std::string DecodeEntities(std::string_view text) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 7>
      kEntities = {{{"&nbsp;", " "},
                    {"&lt;", "<"},
                    {"&gt;", ">"},
                    {"&quot;", "\""},
                    {"&ndash;", "–"},
                    {"&mdash;", "—"},
                    {"&amp;", "&"}}};
  std::string out;
  for (size_t i = 0; i < text.size();) {
    bool replaced = false;
    if (text[i] == '&') {
      for (const auto &[entity, value] : kEntities) {
        if (text.compare(i, entity.size(), entity) == 0) {
          out.append(value);
          i += entity.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out.push_back(text[i++]);
  }
  return out;
}

std::string CleanLines(std::string_view text) {
  std::string out;
  for (std::string_view line : Lines(text)) {
    std::string_view trimmed = TrimView(line);
    if (trimmed.starts_with("----")) trimmed = {};
    while (!trimmed.empty() && std::string_view("*#:;").find(trimmed.front()) !=
                                   std::string_view::npos) {
      trimmed.remove_prefix(1);
    }
    if (!out.empty()) out.push_back('\n');
    out.append(TrimView(trimmed));
  }
  return out;
}

}  // namespace

std::vector<Section> SplitRawSections(std::string_view wikitext,
                                      std::string_view title) {
  std::vector<Section> sections;
  sections.push_back({std::string(title), 0, {}});
  bool first_line = true;
  for (std::string_view line : Lines(wikitext)) {
    if (auto heading = ParseHeadingLine(line)) {
      sections.push_back({std::string(heading->text), heading->level, {}});
      first_line = true;
      continue;
    }
    std::string &body = sections.back().body;
    if (!first_line) body.push_back('\n');
    body.append(line);
    first_line = false;
  }
  return sections;
}

std::string StripMarkup(std::string_view wikitext) {
  std::string text = RemoveBetween(wikitext, "<!--", "-->");
  text = RemoveRefs(text);
  text = RemoveNested(text, "{{", "}}");
  text = RemoveNested(text, "{|", "|}");
  text = ReplaceLinks(text);
  text = ReplaceExternalLinks(text);
  text = RemoveQuotesAndTags(text);
  text = DecodeEntities(text);
  return CleanLines(text);
}

std::vector<Section> SegmentSections(std::string_view wikitext,
                                     std::string_view title) {
  std::vector<Section> sections = SplitRawSections(wikitext, title);
  for (size_t i = 0; i < sections.size(); ++i) {
    if (i > 0) sections[i].heading = CollapseWhitespace(StripMarkup(sections[i].heading));
    sections[i].body = StripMarkup(sections[i].body);
  }
  return sections;
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> sentences;
  auto emit = [&sentences](std::string_view piece) {
    std::string sentence = CollapseWhitespace(piece);
    if (!sentence.empty()) sentences.push_back(std::move(sentence));
  };
  std::string paragraph;
  auto flush_paragraph = [&]() {
    size_t start = 0;
    for (size_t i = 0; i < paragraph.size(); ++i) {
      char c = paragraph[i];
      if (c != '.' && c != '?' && c != '!') continue;
      bool boundary = i + 1 == paragraph.size() ||
                      std::isspace(static_cast<unsigned char>(paragraph[i + 1]));
      if (!boundary) continue;
      emit(std::string_view(paragraph).substr(start, i + 1 - start));
      start = i + 1;
    }
    emit(std::string_view(paragraph).substr(start));
    paragraph.clear();
  };
  for (std::string_view line : Lines(text)) {
    if (TrimView(line).empty()) {
      flush_paragraph();
      continue;
    }
    if (!paragraph.empty()) paragraph.push_back(' ');
    paragraph.append(line);
  }
  flush_paragraph();
  return sentences;
}

bool DetectDisambiguation(const RawPage &page) {
  if (Casefold(TrimView(page.title)).ends_with("(disambiguation)")) return true;
  std::string_view text = page.wikitext;
  for (size_t open = text.find("{{"); open != std::string_view::npos;
       open = text.find("{{", open + 2)) {
    size_t end = text.find_first_of("|}", open + 2);
    std::string_view name = text.substr(open + 2, end == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : end - open - 2);
    if (Casefold(TrimView(name)).find("disambig") != std::string::npos) {
      return true;
    }
  }
  return false;
}

std::vector<std::string> ExtractLinks(std::string_view wikitext) {
  std::vector<std::string> links;
  for (size_t open = wikitext.find("[["); open != std::string_view::npos;
       open = wikitext.find("[[", open + 2)) {
    size_t end = wikitext.find_first_of("|[]", open + 2);
    if (end == std::string_view::npos) break;
    std::string_view target = wikitext.substr(open + 2, end - open - 2);
    if (!target.empty() && target.front() == ':') target.remove_prefix(1);
    target = target.substr(0, target.find('#'));
    if (TrimView(target).empty()) continue;
    links.push_back(NormalizeTitle(target));
  }
  return links;
}

std::optional<std::string> DetectRedirect(std::string_view wikitext) {
  std::string_view text = TrimView(wikitext);
  if (!StartsWithFolded(text, "#redirect")) return std::nullopt;
  text.remove_prefix(9);
  if (!text.empty() && text.front() == ':') text.remove_prefix(1);
  text = TrimView(text);
  if (!text.starts_with("[[")) return std::nullopt;
  size_t end = text.find_first_of("|]", 2);
  if (end == std::string_view::npos) return std::nullopt;
  std::string_view target = text.substr(2, end - 2);
  target = target.substr(0, target.find('#'));
  if (TrimView(target).empty()) return std::nullopt;
  return NormalizeTitle(target);
}

std::optional<Article> ConvertPage(const RawPage &page, int ns) {
  if (page.ns != ns) return std::nullopt;
  Article article;
  article.title = page.title;
  article.normalized_title = NormalizeTitle(page.title);
  article.id = page.id.empty() ? article.normalized_title : page.id;
  if (auto target = DetectRedirect(page.wikitext)) {
    article.redirect_target = std::move(*target);
    return article;
  }
  article.is_disambiguation = DetectDisambiguation(page);
  for (const Section &raw : SplitRawSections(page.wikitext, page.title)) {
    Unit unit;
    unit.level = raw.level;
    unit.heading = raw.level == 0 ? raw.heading
                                  : CollapseWhitespace(StripMarkup(raw.heading));
    unit.sentences = SplitSentences(StripMarkup(raw.body));
    unit.links = ExtractLinks(raw.body);
    article.units.push_back(std::move(unit));
  }
  return article;
}

Corpus IngestDump(std::istream &dump, int ns, IngestStats *stats) {
  IngestStats local;
  IngestStats &s = stats != nullptr ? *stats : local;
  s = IngestStats();
  Corpus corpus;
  DumpReader reader(dump);
  while (auto page = reader.Next()) {
    ++s.pages_read;
    if (TrimView(page->title).empty()) continue;
    std::optional<Article> article = ConvertPage(*page, ns);
    if (!article) {
      ++s.filtered_namespace;
      continue;
    }
    try {
      corpus.Add(std::move(*article));
      ++s.articles_written;
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kDuplicate) throw;
      ++s.duplicate_titles;
    }
  }
  s.skipped_no_text = reader.pages_without_text();
  return corpus;
}

}  // namespace hyperdepth
