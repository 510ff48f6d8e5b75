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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "error.h"
#include "test_util.h"
#include "text.h"

namespace hyperdepth {
namespace {

using testing::MakeArticle;
using testing::MakeRedirect;

TEST(NormalizeTitle, Examples) {
  EXPECT_EQ(NormalizeTitle("Jumping"), "jumping");
  EXPECT_EQ(NormalizeTitle("jumping"), "jumping");
  EXPECT_EQ(NormalizeTitle("Big_Cat "), "big cat");
  EXPECT_EQ(NormalizeTitle("  Big__Cat\tfamily "), "big cat family");
  EXPECT_EQ(NormalizeTitle("Ärger"), "ärger");
  EXPECT_EQ(NormalizeTitle("ΑΘΗΝΑ"), "αθηνα");
}

TEST(NormalizeTitle, IsIdempotent) {
  for (const char *raw : {"Big_Cat ", "A  B_c", "Москва", "x", "İstanbul"}) {
    std::string once = NormalizeTitle(raw);
    EXPECT_EQ(NormalizeTitle(once), once) << raw;
  }
}

TEST(NormalizeTitle, RejectsBlank) {
  for (const char *raw : {"", "   ", "\t\n"}) {
    try {
      NormalizeTitle(raw);
      FAIL() << "expected error for '" << raw << "'";
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    }
  }
}

TEST(Tokenize, StripsEdgePunctuationAndCasefolds) {
  EXPECT_EQ(Tokenize("A cat, (the) CAT's “quoted” -- end."),
            (std::vector<std::string>{"a", "cat", "the", "cat's", "quoted", "end"}));
  EXPECT_TRUE(Tokenize("  ...  ").empty());
}

Article OneSentence(const std::string &sentence) {
  return MakeArticle("T", {{"T", 0, {sentence}}});
}

TEST(FindOccurrences, SingleMatch) {
  auto occ = FindOccurrences(OneSentence("A cat is an animal."), "cat");
  EXPECT_EQ(occ, (std::vector<Occurrence>{{0, 0}}));
}

TEST(FindOccurrences, RepeatedInSentenceCountsOnce) {
  auto occ = FindOccurrences(OneSentence("The cat saw another cat."), "cat");
  EXPECT_EQ(occ, (std::vector<Occurrence>{{0, 0}}));
}

TEST(FindOccurrences, TokenBoundaryNotSubstring) {
  Article article = OneSentence("the bigcat ran");
  // A naive substring matcher would accept this sentence for "cat"; the
  // token matcher must not, and "big cat" never appears as two tokens.
  EXPECT_NE(article.units[0].sentences[0].find("cat"), std::string::npos);
  EXPECT_TRUE(FindOccurrences(article, "big cat").empty());
  EXPECT_TRUE(FindOccurrences(article, "cat").empty());
  EXPECT_EQ(FindOccurrences(OneSentence("A big cat ran."), "big cat").size(), 1u);
}

TEST(FindOccurrences, HeadingsNeverHostOccurrences) {
  Article article = MakeArticle(
      "Cat", {{"Cat", 0, {"Intro."}}, {"Cat anatomy", 1, {"A cat here."}}});
  EXPECT_EQ(FindOccurrences(article, "cat"), (std::vector<Occurrence>{{1, 0}}));
}

TEST(FindOccurrences, EmptyPhraseMatchesNothing) {
  EXPECT_TRUE(FindOccurrences(OneSentence("a b c"), "").empty());
  EXPECT_TRUE(FindOccurrences(OneSentence("a b c"), " ,; ").empty());
}

// Property: duplicating the phrase inside a sentence never changes the
// result, and every occurrence points at an existing sentence.
TEST(FindOccurrences, InvariantUnderDuplicationAndInBounds) {
  std::mt19937 rng(7);
  const std::vector<std::string> vocab = {"cat", "dog", "big", "the", "cats",
                                          "Cat.", "fish", "(cat)"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<testing::UnitSpec> units;
    int n_units = 1 + static_cast<int>(rng() % 5);
    for (int u = 0; u < n_units; ++u) {
      std::vector<std::string> sentences;
      int n = static_cast<int>(rng() % 4);
      for (int s = 0; s < n; ++s) {
        std::string text;
        for (int w = 0; w < 1 + static_cast<int>(rng() % 6); ++w) {
          text += vocab[rng() % vocab.size()] + " ";
        }
        sentences.push_back(text);
      }
      units.push_back({"H", u == 0 ? 0 : 1, sentences});
    }
    Article article = MakeArticle("T", units);
    auto base = FindOccurrences(article, "cat");
    for (auto occ : base) {
      ASSERT_LT(occ.unit, static_cast<int>(article.units.size()));
      ASSERT_LT(occ.sentence,
                static_cast<int>(article.units[occ.unit].sentences.size()));
    }
    Article doubled = article;
    for (const auto &occ : base) {
      doubled.units[occ.unit].sentences[occ.sentence] += " and cat again";
    }
    EXPECT_EQ(FindOccurrences(doubled, "cat"), base);
  }
}

TEST(CorpusIo, EmptyFileGivesEmptyCorpus) {
  std::istringstream in("");
  EXPECT_TRUE(ReadCorpus(in).empty());
}

TEST(CorpusIo, SingleArticleRoundTrip) {
  Corpus corpus;
  corpus.Add(MakeArticle("Big Cat",
                         {{"Big Cat", 0, {"A big cat.", "Second."}, {"cat"}},
                          {"History", 1, {}, {}},
                          {"Range", 2, {"Wide “range”."}, {"africa", "asia"}}}));
  std::stringstream buffer;
  WriteCorpus(corpus, buffer);
  Corpus back = ReadCorpus(buffer);
  EXPECT_EQ(back, corpus);
}

TEST(CorpusIo, WritesExactSchema) {
  Corpus corpus;
  corpus.Add(MakeRedirect("Cats", "Cat"));
  std::stringstream buffer;
  WriteCorpus(corpus, buffer);
  EXPECT_EQ(buffer.str(),
            "{\"id\":\"id:cats\",\"title\":\"Cats\",\"is_disambiguation\":false,"
            "\"redirect_target\":\"cat\",\"units\":[]}\n");
}

void ExpectParseErrorAtLine(const std::string &text, int line) {
  std::istringstream in(text);
  try {
    ReadCorpus(in);
    FAIL() << "expected parse error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line " + std::to_string(line)),
              std::string::npos)
        << e.what();
  }
}

TEST(CorpusIo, MissingUnitsAndRedirectIsParseError) {
  ExpectParseErrorAtLine(
      "{\"id\":\"1\",\"title\":\"A\",\"is_disambiguation\":false}\n", 1);
}

TEST(CorpusIo, SchemaViolations) {
  const std::string good =
      "{\"id\":\"1\",\"title\":\"A\",\"is_disambiguation\":false,"
      "\"redirect_target\":null,\"units\":[{\"heading\":\"A\",\"level\":0,"
      "\"sentences\":[\"x.\"],\"links\":[]}]}\n";
  // Unknown field.
  ExpectParseErrorAtLine(
      good + "{\"id\":\"2\",\"title\":\"B\",\"is_disambiguation\":false,"
             "\"redirect_target\":null,\"units\":[],\"extra\":1}\n",
      2);
  // No units and no redirect.
  ExpectParseErrorAtLine(
      "{\"id\":\"2\",\"title\":\"B\",\"is_disambiguation\":false,"
      "\"redirect_target\":null,\"units\":[]}\n",
      1);
  // First unit not level 0.
  ExpectParseErrorAtLine(
      "{\"id\":\"2\",\"title\":\"B\",\"is_disambiguation\":false,"
      "\"redirect_target\":null,\"units\":[{\"heading\":\"B\",\"level\":1,"
      "\"sentences\":[],\"links\":[]}]}\n",
      1);
  // Blank sentence.
  ExpectParseErrorAtLine(
      "{\"id\":\"2\",\"title\":\"B\",\"is_disambiguation\":false,"
      "\"redirect_target\":null,\"units\":[{\"heading\":\"B\",\"level\":0,"
      "\"sentences\":[\"  \"],\"links\":[]}]}\n",
      1);
  ExpectParseErrorAtLine("\n\nnot json\n", 3);
}

TEST(CorpusIo, DuplicateNormalizedTitle) {
  std::string a =
      "{\"id\":\"1\",\"title\":\"Big Cat\",\"is_disambiguation\":false,"
      "\"redirect_target\":\"x\",\"units\":[]}\n";
  std::string b =
      "{\"id\":\"2\",\"title\":\"big_cat\",\"is_disambiguation\":false,"
      "\"redirect_target\":\"y\",\"units\":[]}\n";
  std::istringstream in(a + b);
  try {
    ReadCorpus(in);
    FAIL() << "expected duplication error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicate);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

// Property: random corpora survive write/read unchanged.
TEST(CorpusIo, RoundTripRandomCorpora) {
  std::mt19937 rng(11);
  const std::vector<std::string> words = {"alpha", "Beta", "γάμμα", "\"q\"",
                                          "tab\there", "back\\slash", "ü"};
  auto word = [&] { return words[rng() % words.size()]; };
  for (int trial = 0; trial < 50; ++trial) {
    Corpus corpus;
    int n = static_cast<int>(rng() % 6);
    for (int a = 0; a < n; ++a) {
      std::string title = "Title " + std::to_string(a) + " " + word();
      if (rng() % 4 == 0) {
        corpus.Add(MakeRedirect(title, "Target " + word()));
        continue;
      }
      std::vector<testing::UnitSpec> units;
      for (int u = 0; u < 1 + static_cast<int>(rng() % 4); ++u) {
        std::vector<std::string> sentences, links;
        for (int s = 0; s < static_cast<int>(rng() % 3); ++s) {
          sentences.push_back(word() + " " + word() + ".");
        }
        for (int l = 0; l < static_cast<int>(rng() % 3); ++l) links.push_back(word());
        units.push_back({u == 0 ? title : word(), u == 0 ? 0 : 1 + u % 3,
                         sentences, links});
      }
      corpus.Add(MakeArticle(title, units, rng() % 5 == 0));
    }
    std::stringstream buffer;
    WriteCorpus(corpus, buffer);
    EXPECT_EQ(ReadCorpus(buffer), corpus);
  }
}

TEST(Corpus, ResolveFollowsRedirectsUpToFourHops) {
  Corpus corpus;
  corpus.Add(MakeArticle("Target", {{"Target", 0, {"x."}}}));
  corpus.Add(MakeRedirect("R1", "Target"));
  corpus.Add(MakeRedirect("R2", "R1"));
  corpus.Add(MakeRedirect("R3", "R2"));
  corpus.Add(MakeRedirect("R4", "R3"));
  corpus.Add(MakeRedirect("R5", "R4"));
  corpus.Add(MakeRedirect("Loop A", "Loop B"));
  corpus.Add(MakeRedirect("Loop B", "Loop A"));
  ASSERT_NE(corpus.Resolve("target"), nullptr);
  EXPECT_EQ(corpus.Resolve("R1")->title, "Target");
  EXPECT_EQ(corpus.Resolve("r4")->title, "Target");
  EXPECT_EQ(corpus.Resolve("R5"), nullptr);
  EXPECT_EQ(corpus.Resolve("Loop A"), nullptr);
  EXPECT_EQ(corpus.Resolve("absent"), nullptr);
  EXPECT_EQ(corpus.Resolve("  "), nullptr);
  EXPECT_EQ(corpus.FindById("id:r1")->title, "R1");
}

TEST(Corpus, FingerprintTracksContent) {
  Corpus a;
  a.Add(MakeArticle("A", {{"A", 0, {"x."}}}));
  Corpus b = a;
  EXPECT_EQ(CorpusFingerprint(a), CorpusFingerprint(b));
  b.Add(MakeArticle("B", {{"B", 0, {"y."}}}));
  EXPECT_NE(CorpusFingerprint(a), CorpusFingerprint(b));
}

}  // namespace
}  // namespace hyperdepth
