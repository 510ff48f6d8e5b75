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

#ifndef HYPERDEPTH_TEXT_H_
#define HYPERDEPTH_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hyperdepth {

// Simple (length-changing-free) lowercase mapping over UTF-8. Covers ASCII,
// Latin-1, Latin Extended-A, Greek and Cyrillic; everything else, including
// malformed bytes, is copied through.
std::string Casefold(std::string_view text);

// Trims ASCII whitespace at both ends and collapses inner runs to one space.
std::string CollapseWhitespace(std::string_view text);

std::string_view TrimView(std::string_view text);

// Casefolded tokens split on whitespace with punctuation stripped from the
// token edges. Tokens that are pure punctuation disappear.
std::vector<std::string> Tokenize(std::string_view text);

// True if `needle` occurs as a contiguous run inside `haystack`.
bool ContainsSequence(std::span<const std::string> haystack,
                      std::span<const std::string> needle);

}  // namespace hyperdepth

#endif  // HYPERDEPTH_TEXT_H_
