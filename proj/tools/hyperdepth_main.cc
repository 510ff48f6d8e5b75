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

// Command line front end. Subcommands:
//
//   ingest    MediaWiki XML dump -> corpus file
//   index     corpus -> search index sidecar (index query: debug lookup)
//   depth     depth measure of one word
//   headings  heading sets of one word
//   score     score word pairs
//   eval      directionality precision / detection AP over a dataset
//
// Data goes to stdout, diagnostics to stderr. Exit codes: 0 success, 1
// runtime or domain error, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperdepth/hyperdepth.h"

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// Thrown to leave a subcommand with a specific exit code; the message has
// already been printed.
struct ExitRequest {
  int code;
};

[[noreturn]] void Fail(int code, const std::string &message) {
  std::cerr << "hyperdepth: " << message << "\n";
  throw ExitRequest{code};
}

void Check(hd_status status, const std::string &context) {
  if (status == HD_OK) return;
  int code = status == HD_ERR_INVALID_ARGUMENT ? kExitUsage : kExitDomain;
  Fail(code, context + ": " + hd_last_error());
}

template <typename T, void (*Free)(T *)>
struct Deleter {
  void operator()(T *p) const { Free(p); }
};
using CorpusPtr = std::unique_ptr<hd_corpus, Deleter<hd_corpus, hd_corpus_free>>;
using IndexPtr = std::unique_ptr<hd_index, Deleter<hd_index, hd_index_free>>;
using EmbeddingsPtr =
    std::unique_ptr<hd_embeddings, Deleter<hd_embeddings, hd_embeddings_free>>;
using DatasetPtr =
    std::unique_ptr<hd_dataset, Deleter<hd_dataset, hd_dataset_free>>;
using ReportPtr = std::unique_ptr<hd_report, Deleter<hd_report, hd_report_free>>;

struct Options {
  unsigned threads = 0;
  std::string corpus;
  std::string index;
  std::string embeddings;
  std::string topology = "star";
  size_t k = 1000;
  std::string sim = "jaccard";
  int max_hops = 2;
  bool no_stoplist = false;
  bool strip_pos = false;
  std::string tie = "stable";
  bool strict = false;
  bool verbose = false;

  std::string dump;
  std::string out;
  int ns = 0;
  std::string word;
  std::string pairs;
  std::string dataset;
  std::string vs;
  std::string json;
};

hd_config MakeConfig(const Options &o) {
  hd_config config;
  hd_config_init(&config);
  config.topology = o.topology == "linear" ? HD_TOPOLOGY_LINEAR : HD_TOPOLOGY_STAR;
  config.k = o.k;
  config.sim = o.sim == "cosine" ? HD_SIM_COSINE : HD_SIM_JACCARD;
  config.max_disambig_hops = o.max_hops;
  config.use_stoplist = o.no_stoplist ? 0 : 1;
  config.tie = o.tie == "worst" ? HD_TIE_WORST : HD_TIE_STABLE;
  config.threads = o.threads;
  return config;
}

CorpusPtr OpenCorpus(const Options &o) {
  hd_corpus *corpus = nullptr;
  Check(hd_corpus_open(o.corpus.c_str(), &corpus), "reading corpus");
  return CorpusPtr(corpus);
}

// Loads the sidecar index. It is rebuilt when not given, when the file does
// not exist yet, or when it was built from a different corpus; a given path
// is then (re)written.
IndexPtr OpenIndex(const Options &o, const hd_corpus *corpus) {
  hd_index *index = nullptr;
  if (!o.index.empty() && std::filesystem::exists(o.index)) {
    Check(hd_index_load(o.index.c_str(), &index), "reading index");
    if (hd_index_is_current(index, corpus)) return IndexPtr(index);
    hd_index_free(index);
    index = nullptr;
    std::cerr << "hyperdepth: index " << o.index
              << " does not match the corpus; rebuilding\n";
  }
  Check(hd_index_build(corpus, o.threads, &index), "building index");
  IndexPtr owned(index);
  if (!o.index.empty() && hd_index_save(index, o.index.c_str()) != HD_OK) {
    std::cerr << "hyperdepth: could not rewrite " << o.index << ": "
              << hd_last_error() << "\n";
  }
  return owned;
}

EmbeddingsPtr OpenEmbeddings(const Options &o) {
  if (o.sim == "cosine" && o.embeddings.empty()) {
    Fail(kExitUsage, "--sim cosine requires --embeddings");
  }
  if (o.embeddings.empty()) return nullptr;
  hd_embeddings *table = nullptr;
  Check(hd_embeddings_load(o.embeddings.c_str(), &table), "reading embeddings");
  return EmbeddingsPtr(table);
}

std::string FormatNumber(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

int RunIngest(const Options &o) {
  hd_ingest_stats stats{};
  Check(hd_ingest_dump(o.dump.c_str(), o.out.c_str(), o.ns, &stats), "ingest");
  std::cerr << "pages read: " << stats.pages_read
            << "\narticles written: " << stats.articles_written
            << "\nskipped (no text): " << stats.skipped_no_text
            << "\nfiltered (namespace): " << stats.filtered_namespace
            << "\nskipped (duplicate title): " << stats.duplicate_titles << "\n";
  return 0;
}

int RunIndexBuild(const Options &o) {
  CorpusPtr corpus = OpenCorpus(o);
  hd_index *index = nullptr;
  Check(hd_index_build(corpus.get(), o.threads, &index), "building index");
  IndexPtr owned(index);
  Check(hd_index_save(index, o.out.c_str()), "writing index");
  std::cerr << "indexed " << hd_index_doc_count(index) << " articles\n";
  return 0;
}

int RunIndexQuery(const Options &o) {
  CorpusPtr corpus = OpenCorpus(o);
  IndexPtr index = OpenIndex(o, corpus.get());
  auto print = [](void *, const char *id, const char *, double, unsigned) {
    std::cout << id << "\n";
  };
  Check(hd_index_query(index.get(), o.word.c_str(), o.k, print, nullptr), "query");
  return 0;
}

int RunDepth(const Options &o) {
  CorpusPtr corpus = OpenCorpus(o);
  IndexPtr index = OpenIndex(o, corpus.get());
  hd_config config = MakeConfig(o);
  std::vector<std::pair<std::string, double>> rows;
  auto collect = [](void *user, const char *id, double lambda) {
    static_cast<decltype(rows) *>(user)->emplace_back(id, lambda);
  };
  double aggregate = 0.0;
  int defined = 0;
  Check(hd_depth(corpus.get(), index.get(), o.word.c_str(), &config, &aggregate,
                 &defined, collect, &rows),
        "depth");
  std::cout << o.word << "\t" << (defined ? FormatNumber(aggregate) : "NA")
            << "\t" << rows.size() << "\n";
  if (o.verbose) {
    for (const auto &[id, lambda] : rows) {
      std::cout << id << "\t" << FormatNumber(lambda) << "\n";
    }
  }
  if (!defined && o.strict) Fail(kExitDomain, "no article contains '" + o.word + "'");
  return 0;
}

int RunHeadings(const Options &o) {
  CorpusPtr corpus = OpenCorpus(o);
  hd_config config = MakeConfig(o);
  auto print = [](void *, const char *title, const char *const *headings,
                  size_t count) {
    std::cout << title;
    for (size_t i = 0; i < count; ++i) std::cout << "\t" << headings[i];
    std::cout << "\n";
  };
  size_t count = 0;
  Check(hd_headings(corpus.get(), o.word.c_str(), &config, print, nullptr, &count),
        "headings");
  if (count == 0 && o.strict) Fail(kExitDomain, "no article for '" + o.word + "'");
  return 0;
}

std::vector<std::pair<std::string, std::string>> ReadPairs(const std::string &path) {
  std::ifstream in(path);
  if (!in) Fail(kExitDomain, "cannot open pairs file: " + path);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string w1, w2;
    if (!std::getline(fields, w1, '\t') || !std::getline(fields, w2, '\t') ||
        w1.empty() || w2.empty()) {
      Fail(kExitDomain, path + ":" + std::to_string(line_number) +
                            ": expected w1<TAB>w2");
    }
    pairs.emplace_back(w1, w2);
  }
  return pairs;
}

int RunScore(const Options &o) {
  EmbeddingsPtr embeddings = OpenEmbeddings(o);
  auto pairs = ReadPairs(o.pairs);
  CorpusPtr corpus = OpenCorpus(o);
  IndexPtr index = OpenIndex(o, corpus.get());
  hd_config config = MakeConfig(o);
  std::vector<const char *> w1, w2;
  for (const auto &[a, b] : pairs) {
    w1.push_back(a.c_str());
    w2.push_back(b.c_str());
  }
  std::vector<hd_pair_score> scores(pairs.size());
  Check(hd_score_pairs(corpus.get(), index.get(), embeddings.get(), &config,
                       w1.data(), w2.data(), pairs.size(), scores.data()),
        "score");
  std::cout << "w1\tw2\tlambda1\tlambda2\tdepth_term\tsim\tcombined\tdirection\t"
               "missing\n";
  bool any_missing = false;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const hd_pair_score &s = scores[i];
    std::string missing;
    if (!s.lambda1_defined) missing = "w1";
    if (!s.lambda2_defined) missing += missing.empty() ? "w2" : ",w2";
    if (missing.empty()) {
      missing = "-";
    } else {
      any_missing = true;
    }
    const char *direction = s.direction == HD_DIRECTION_W1_HYPER   ? "w1_hyper"
                            : s.direction == HD_DIRECTION_W2_HYPER ? "w2_hyper"
                                                                   : "undecided";
    std::cout << pairs[i].first << "\t" << pairs[i].second << "\t"
              << (s.lambda1_defined ? FormatNumber(s.lambda1) : "NA") << "\t"
              << (s.lambda2_defined ? FormatNumber(s.lambda2) : "NA") << "\t"
              << (s.depth_term_defined ? FormatNumber(s.depth_term) : "NA") << "\t"
              << FormatNumber(s.sim) << "\t" << FormatNumber(s.combined) << "\t"
              << direction << "\t" << missing << "\n";
  }
  if (any_missing && o.strict) Fail(kExitDomain, "some words have no articles");
  return 0;
}

int RunEval(const Options &o, bool detect) {
  EmbeddingsPtr embeddings = OpenEmbeddings(o);
  hd_dataset *dataset = nullptr;
  Check(hd_dataset_load(o.dataset.c_str(), o.strip_pos, &dataset), "reading dataset");
  DatasetPtr owned_dataset(dataset);
  CorpusPtr corpus = OpenCorpus(o);
  IndexPtr index = OpenIndex(o, corpus.get());
  hd_config config = MakeConfig(o);
  std::string name = std::filesystem::path(o.dataset).filename().string();
  hd_report *report = nullptr;
  if (detect) {
    Check(hd_eval_detect(dataset, corpus.get(), index.get(), embeddings.get(),
                         &config, name.c_str(), o.vs.c_str(), &report),
          "eval detect");
  } else {
    Check(hd_eval_direction(dataset, corpus.get(), index.get(), embeddings.get(),
                            &config, name.c_str(), &report),
          "eval direction");
  }
  ReportPtr owned_report(report);
  auto json = nlohmann::ordered_json::parse(hd_report_json(report));
  std::cout << "dataset\ttopology\tsimilarity\trelation\ttotal\tscored\tmissing\t"
               "metric\tvalue\n";
  std::cout << json["dataset"].get<std::string>() << "\t"
            << json["topology"].get<std::string>() << "\t"
            << json["similarity"].get<std::string>() << "\t"
            << json["relation"].get<std::string>() << "\t" << json["total"] << "\t"
            << json["scored"] << "\t" << json["missing"] << "\t"
            << json["metric"].get<std::string>() << "\t"
            << FormatNumber(json["value"].get<double>()) << "\n";
  if (!o.json.empty()) {
    std::ofstream out(o.json);
    out << hd_report_json(report) << "\n";
    if (!out) Fail(kExitDomain, "cannot write " + o.json);
  }
  size_t missing = 0;
  hd_report_counts(report, nullptr, nullptr, &missing);
  if (missing > 0 && o.strict) Fail(kExitDomain, "some pairs have missing words");
  return 0;
}

void AddCorpusFlags(CLI::App *cmd, Options &o, bool with_index) {
  cmd->add_option("--corpus", o.corpus, "Corpus file (JSON lines)")
      ->envname("HYPERDEPTH_CORPUS")
      ->required();
  if (with_index) {
    cmd->add_option("--index", o.index,
                    "Index sidecar; rebuilt when missing from the command line "
                    "or stale")
        ->envname("HYPERDEPTH_INDEX");
  }
}

void AddDepthFlags(CLI::App *cmd, Options &o) {
  cmd->add_option("--topology", o.topology, "Article topology")
      ->check(CLI::IsMember({"star", "linear"}));
  cmd->add_option("--k", o.k, "Articles retrieved per word")
      ->check(CLI::PositiveNumber);
}

void AddHeadingFlags(CLI::App *cmd, Options &o) {
  cmd->add_option("--max-hops", o.max_hops, "Disambiguation expansion limit")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--no-stoplist", o.no_stoplist, "Keep boilerplate headings");
}

void AddSimFlags(CLI::App *cmd, Options &o) {
  cmd->add_option("--sim", o.sim, "Heading similarity")
      ->check(CLI::IsMember({"jaccard", "cosine"}));
  cmd->add_option("--embeddings", o.embeddings, "Word vectors (text format)")
      ->envname("HYPERDEPTH_EMBEDDINGS");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Hypernym detection and directionality from article structure"};
  app.set_version_flag("--version", std::string("hyperdepth ") + hd_version());
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  auto *ingest = app.add_subcommand("ingest", "Convert a MediaWiki XML dump");
  ingest->add_option("--dump", o.dump, "XML dump")->required();
  ingest->add_option("--out", o.out, "Corpus file to write")->required();
  ingest->add_option("--namespace", o.ns, "Namespace to keep");

  auto *index = app.add_subcommand("index", "Build the search index");
  index->require_subcommand(0, 1);
  index->add_option("--corpus", o.corpus, "Corpus file")->envname("HYPERDEPTH_CORPUS");
  index->add_option("--out", o.out, "Index file to write");
  auto *query = index->add_subcommand("query", "Print the top k article ids");
  AddCorpusFlags(query, o, true);
  query->add_option("--word", o.word, "Word or phrase")->required();
  query->add_option("--k", o.k, "Number of results")->check(CLI::PositiveNumber);

  auto *depth = app.add_subcommand("depth", "Depth measure of a word");
  AddCorpusFlags(depth, o, true);
  depth->add_option("--word", o.word, "Word or phrase")->required();
  AddDepthFlags(depth, o);
  depth->add_flag("--verbose", o.verbose, "Print per-article values");
  depth->add_flag("--strict", o.strict, "Fail when the word is not found");

  auto *headings = app.add_subcommand("headings", "Heading sets of a word");
  AddCorpusFlags(headings, o, false);
  headings->add_option("--word", o.word, "Word or phrase")->required();
  AddHeadingFlags(headings, o);
  headings->add_flag("--strict", o.strict, "Fail when the word has no article");

  auto *score = app.add_subcommand("score", "Score word pairs");
  AddCorpusFlags(score, o, true);
  score->add_option("--pairs", o.pairs, "TSV: w1 TAB w2 per line")->required();
  AddDepthFlags(score, o);
  AddSimFlags(score, o);
  AddHeadingFlags(score, o);
  score->add_flag("--strict", o.strict, "Fail when a word is not found");

  auto *eval = app.add_subcommand("eval", "Benchmark protocols");
  eval->require_subcommand(1);
  auto *direction = eval->add_subcommand("direction", "Directionality precision");
  auto *detect = eval->add_subcommand("detect", "Detection average precision");
  for (auto *cmd : {direction, detect}) {
    AddCorpusFlags(cmd, o, true);
    cmd->add_option("--dataset", o.dataset, "TSV: w1, w2, True|False, relation")
        ->required();
    AddDepthFlags(cmd, o);
    AddSimFlags(cmd, o);
    AddHeadingFlags(cmd, o);
    cmd->add_flag("--strip-pos", o.strip_pos, "Drop -n/-v/-j word suffixes");
    cmd->add_option("--json", o.json, "Write the report as JSON");
    cmd->add_flag("--strict", o.strict, "Fail when a pair has missing words");
  }
  detect->add_option("--vs", o.vs, "Negative relation, or 'all'")->required();
  detect->add_option("--tie", o.tie, "Tie handling for AP")
      ->check(CLI::IsMember({"stable", "worst"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*ingest) return RunIngest(o);
    if (*query) return RunIndexQuery(o);
    if (*index) {
      if (o.corpus.empty() || o.out.empty()) {
        std::cerr << "hyperdepth: index needs --corpus and --out\n"
                  << index->help();
        return kExitUsage;
      }
      return RunIndexBuild(o);
    }
    if (*depth) return RunDepth(o);
    if (*headings) return RunHeadings(o);
    if (*score) return RunScore(o);
    if (*direction) return RunEval(o, false);
    if (*detect) return RunEval(o, true);
  } catch (const ExitRequest &exit) {
    return exit.code;
  } catch (const std::exception &e) {
    std::cerr << "hyperdepth: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
