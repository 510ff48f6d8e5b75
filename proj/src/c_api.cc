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

#include <fstream>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "hyperdepth/hyperdepth.h"

#include "corpus.h"
#include "depth_engine.h"
#include "error.h"
#include "evaluation.h"
#include "heading_engine.h"
#include "scoring.h"
#include "search_index.h"
#include "wiki_ingest.h"

struct hd_corpus {
  hyperdepth::Corpus corpus;
};

struct hd_index {
  hyperdepth::InvertedIndex index;
};

struct hd_embeddings {
  hyperdepth::EmbeddingTable table;
};

struct hd_dataset {
  std::vector<hyperdepth::LabeledPair> pairs;
};

struct hd_report {
  hyperdepth::EvalReport report;
  std::string json;
};

namespace {

thread_local std::string last_error;

hd_status ToStatus(hyperdepth::ErrorCode code) {
  using hyperdepth::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return HD_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo:
      return HD_ERR_IO;
    case ErrorCode::kParse:
      return HD_ERR_PARSE;
    case ErrorCode::kDuplicate:
      return HD_ERR_DUPLICATE;
    case ErrorCode::kNotComputable:
      return HD_ERR_NOT_COMPUTABLE;
    case ErrorCode::kUndefinedMetric:
      return HD_ERR_UNDEFINED_METRIC;
  }
  return HD_ERR_INTERNAL;
}

// Runs fn, translating exceptions into a status and the thread-local message.
template <typename Fn>
hd_status Guard(Fn &&fn) {
  last_error.clear();
  try {
    fn();
    return HD_OK;
  } catch (const hyperdepth::Error &e) {
    last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc &) {
    last_error = "out of memory";
  } catch (const std::exception &e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return HD_ERR_INTERNAL;
}

void Require(bool condition, const char *what) {
  if (!condition) {
    throw hyperdepth::Error(hyperdepth::ErrorCode::kInvalidArgument, what);
  }
}

hyperdepth::ScoreConfig ToScoreConfig(const hd_config *config) {
  hd_config defaults;
  hd_config_init(&defaults);
  const hd_config &c = config != nullptr ? *config : defaults;
  Require(c.k >= 1, "k must be >= 1");
  Require(c.max_disambig_hops >= 0, "max_disambig_hops must be >= 0");
  Require(c.topology == HD_TOPOLOGY_STAR || c.topology == HD_TOPOLOGY_LINEAR,
          "unknown topology");
  Require(c.sim == HD_SIM_JACCARD || c.sim == HD_SIM_COSINE,
          "unknown similarity method");
  hyperdepth::ScoreConfig out;
  out.topology = c.topology == HD_TOPOLOGY_STAR ? hyperdepth::Topology::kStar
                                                : hyperdepth::Topology::kLinear;
  out.k = c.k;
  out.sim = c.sim == HD_SIM_JACCARD ? hyperdepth::SimMethod::kJaccard
                                    : hyperdepth::SimMethod::kEmbeddingCosine;
  out.headings.max_disambig_hops = c.max_disambig_hops;
  out.headings.use_stoplist = c.use_stoplist != 0;
  out.threads = c.threads;
  return out;
}

hyperdepth::TieMode ToTieMode(const hd_config *config) {
  return config != nullptr && config->tie == HD_TIE_WORST
             ? hyperdepth::TieMode::kWorst
             : hyperdepth::TieMode::kStable;
}

}  // namespace

extern "C" {

void hd_config_init(hd_config *config) {
  if (config == nullptr) return;
  config->topology = HD_TOPOLOGY_STAR;
  config->k = 1000;
  config->sim = HD_SIM_JACCARD;
  config->max_disambig_hops = 2;
  config->use_stoplist = 1;
  config->tie = HD_TIE_STABLE;
  config->threads = 0;
}

const char *hd_version(void) { return HYPERDEPTH_VERSION; }

const char *hd_last_error(void) { return last_error.c_str(); }

const char *hd_status_name(hd_status status) {
  switch (status) {
    case HD_OK:
      return "ok";
    case HD_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case HD_ERR_IO:
      return "i/o error";
    case HD_ERR_PARSE:
      return "parse error";
    case HD_ERR_DUPLICATE:
      return "duplicate";
    case HD_ERR_NOT_COMPUTABLE:
      return "not computable";
    case HD_ERR_UNDEFINED_METRIC:
      return "undefined metric";
    case HD_ERR_INTERNAL:
      break;
  }
  return "internal error";
}

hd_status hd_ingest_dump(const char *dump_path, const char *corpus_path, int ns,
                         hd_ingest_stats *stats) {
  return Guard([&] {
    Require(dump_path != nullptr && corpus_path != nullptr, "null path");
    std::ifstream in(dump_path, std::ios::binary);
    if (!in) {
      throw hyperdepth::Error(hyperdepth::ErrorCode::kIo,
                              std::string("cannot open dump: ") + dump_path);
    }
    hyperdepth::IngestStats s;
    hyperdepth::Corpus corpus = hyperdepth::IngestDump(in, ns, &s);
    hyperdepth::WriteCorpusFile(corpus, corpus_path);
    if (stats != nullptr) {
      *stats = {s.pages_read, s.articles_written, s.skipped_no_text,
                s.filtered_namespace, s.duplicate_titles};
    }
  });
}

hd_status hd_corpus_open(const char *path, hd_corpus **out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = new hd_corpus{hyperdepth::ReadCorpusFile(path)};
  });
}

hd_status hd_corpus_write(const hd_corpus *corpus, const char *path) {
  return Guard([&] {
    Require(corpus != nullptr && path != nullptr, "null argument");
    hyperdepth::WriteCorpusFile(corpus->corpus, path);
  });
}

size_t hd_corpus_size(const hd_corpus *corpus) {
  return corpus != nullptr ? corpus->corpus.size() : 0;
}

void hd_corpus_free(hd_corpus *corpus) { delete corpus; }

hd_status hd_index_build(const hd_corpus *corpus, unsigned threads,
                         hd_index **out) {
  return Guard([&] {
    Require(corpus != nullptr && out != nullptr, "null argument");
    *out = new hd_index{hyperdepth::InvertedIndex::Build(corpus->corpus, threads)};
  });
}

hd_status hd_index_save(const hd_index *index, const char *path) {
  return Guard([&] {
    Require(index != nullptr && path != nullptr, "null argument");
    index->index.SaveFile(path);
  });
}

hd_status hd_index_load(const char *path, hd_index **out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = new hd_index{hyperdepth::InvertedIndex::LoadFile(path)};
  });
}

int hd_index_is_current(const hd_index *index, const hd_corpus *corpus) {
  if (index == nullptr || corpus == nullptr) return 0;
  return index->index.IsCurrentFor(corpus->corpus) ? 1 : 0;
}

size_t hd_index_doc_count(const hd_index *index) {
  return index != nullptr ? index->index.doc_count() : 0;
}

hd_status hd_index_query(const hd_index *index, const char *phrase, size_t k,
                         hd_hit_fn fn, void *user) {
  return Guard([&] {
    Require(index != nullptr && phrase != nullptr, "null argument");
    for (const auto &hit : index->index.TopK(phrase, k)) {
      if (fn != nullptr) {
        fn(user, hit.id.c_str(), hit.normalized_title.c_str(), hit.score,
           hit.phrase_frequency);
      }
    }
  });
}

void hd_index_free(hd_index *index) { delete index; }

hd_status hd_lambda_article(const hd_corpus *corpus, const char *title,
                            const char *word, hd_topology topology,
                            double *out) {
  return Guard([&] {
    Require(corpus != nullptr && title != nullptr && word != nullptr &&
                out != nullptr,
            "null argument");
    const hyperdepth::Article *article = corpus->corpus.Resolve(title);
    if (article == nullptr) {
      throw hyperdepth::Error(hyperdepth::ErrorCode::kInvalidArgument,
                              std::string("no article titled '") + title + "'");
    }
    *out = hyperdepth::LambdaArticle(*article, word,
                                     topology == HD_TOPOLOGY_LINEAR
                                         ? hyperdepth::Topology::kLinear
                                         : hyperdepth::Topology::kStar);
  });
}

hd_status hd_depth(const hd_corpus *corpus, const hd_index *index,
                   const char *word, const hd_config *config, double *aggregate,
                   int *defined, hd_article_lambda_fn fn, void *user) {
  return Guard([&] {
    Require(corpus != nullptr && index != nullptr && word != nullptr,
            "null argument");
    hyperdepth::ScoreConfig c = ToScoreConfig(config);
    hyperdepth::DepthProfile profile = hyperdepth::LambdaWord(
        word, index->index, corpus->corpus, c.topology, c.k, c.threads);
    if (aggregate != nullptr) *aggregate = profile.aggregate.value_or(0.0);
    if (defined != nullptr) *defined = profile.aggregate.has_value() ? 1 : 0;
    if (fn != nullptr) {
      for (const auto &[id, lambda] : profile.per_article) {
        fn(user, id.c_str(), lambda);
      }
    }
  });
}

hd_status hd_headings(const hd_corpus *corpus, const char *word,
                      const hd_config *config, hd_meaning_fn fn, void *user,
                      size_t *count) {
  return Guard([&] {
    Require(corpus != nullptr && word != nullptr, "null argument");
    hyperdepth::ScoreConfig c = ToScoreConfig(config);
    hyperdepth::HeadingSets sets =
        hyperdepth::ExtractHeadings(word, corpus->corpus, c.headings);
    if (count != nullptr) *count = sets.meanings.size();
    if (fn == nullptr) return;
    for (const auto &meaning : sets.meanings) {
      std::vector<const char *> headings;
      for (const auto &h : meaning.headings) headings.push_back(h.c_str());
      fn(user, meaning.source_title.c_str(), headings.data(), headings.size());
    }
  });
}

hd_status hd_embeddings_load(const char *path, hd_embeddings **out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = new hd_embeddings{hyperdepth::EmbeddingTable::LoadFile(path)};
  });
}

int hd_embeddings_dimension(const hd_embeddings *table) {
  return table != nullptr ? table->table.dimension() : 0;
}

void hd_embeddings_free(hd_embeddings *table) { delete table; }

hd_status hd_score_pairs(const hd_corpus *corpus, const hd_index *index,
                         const hd_embeddings *embeddings,
                         const hd_config *config, const char *const *w1,
                         const char *const *w2, size_t n, hd_pair_score *out) {
  return Guard([&] {
    Require(corpus != nullptr && index != nullptr, "null argument");
    Require(n == 0 || (w1 != nullptr && w2 != nullptr && out != nullptr),
            "null argument");
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      Require(w1[i] != nullptr && w2[i] != nullptr, "null word");
      pairs.emplace_back(w1[i], w2[i]);
    }
    hyperdepth::PairScorer scorer(corpus->corpus, index->index,
                                  ToScoreConfig(config),
                                  embeddings ? &embeddings->table : nullptr);
    std::vector<hyperdepth::PairScore> scores = scorer.ScoreAll(pairs);
    for (size_t i = 0; i < n; ++i) {
      const auto &s = scores[i];
      hd_pair_score &o = out[i];
      o.lambda1 = s.lambda1.value_or(0.0);
      o.lambda2 = s.lambda2.value_or(0.0);
      o.lambda1_defined = s.lambda1.has_value();
      o.lambda2_defined = s.lambda2.has_value();
      o.depth_term_raw = s.depth_term_raw.value_or(0.0);
      o.depth_term = s.depth_term.value_or(0.0);
      o.depth_term_defined = s.depth_term.has_value();
      o.sim = s.sim;
      o.combined = s.combined;
      o.direction = s.direction == hyperdepth::Direction::kW1IsHyper
                        ? HD_DIRECTION_W1_HYPER
                    : s.direction == hyperdepth::Direction::kW2IsHyper
                        ? HD_DIRECTION_W2_HYPER
                        : HD_DIRECTION_UNDECIDED;
    }
  });
}

hd_status hd_dataset_load(const char *path, int strip_pos, hd_dataset **out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = new hd_dataset{hyperdepth::LoadDatasetFile(path, strip_pos != 0)};
  });
}

size_t hd_dataset_size(const hd_dataset *dataset) {
  return dataset != nullptr ? dataset->pairs.size() : 0;
}

void hd_dataset_free(hd_dataset *dataset) { delete dataset; }

hd_status hd_eval_direction(const hd_dataset *dataset, const hd_corpus *corpus,
                            const hd_index *index,
                            const hd_embeddings *embeddings,
                            const hd_config *config, const char *dataset_name,
                            hd_report **out) {
  return Guard([&] {
    Require(dataset != nullptr && corpus != nullptr && index != nullptr &&
                out != nullptr,
            "null argument");
    hyperdepth::PairScorer scorer(corpus->corpus, index->index,
                                  ToScoreConfig(config),
                                  embeddings ? &embeddings->table : nullptr);
    auto report = hyperdepth::EvaluateDirection(dataset->pairs, scorer,
                                                dataset_name ? dataset_name : "");
    std::string json = hyperdepth::ReportToJson(report);
    *out = new hd_report{std::move(report), std::move(json)};
  });
}

hd_status hd_eval_detect(const hd_dataset *dataset, const hd_corpus *corpus,
                         const hd_index *index, const hd_embeddings *embeddings,
                         const hd_config *config, const char *dataset_name,
                         const char *relation, hd_report **out) {
  return Guard([&] {
    Require(dataset != nullptr && corpus != nullptr && index != nullptr &&
                relation != nullptr && out != nullptr,
            "null argument");
    hyperdepth::PairScorer scorer(corpus->corpus, index->index,
                                  ToScoreConfig(config),
                                  embeddings ? &embeddings->table : nullptr);
    auto report = hyperdepth::EvaluateDetection(
        dataset->pairs, relation, scorer, dataset_name ? dataset_name : "",
        ToTieMode(config));
    std::string json = hyperdepth::ReportToJson(report);
    *out = new hd_report{std::move(report), std::move(json)};
  });
}

double hd_report_value(const hd_report *report) {
  return report != nullptr ? report->report.value : 0.0;
}

const char *hd_report_metric(const hd_report *report) {
  return report != nullptr ? report->report.metric.c_str() : "";
}

const char *hd_report_relation(const hd_report *report) {
  return report != nullptr ? report->report.relation.c_str() : "";
}

void hd_report_counts(const hd_report *report, size_t *total, size_t *scored,
                      size_t *missing) {
  if (report == nullptr) return;
  if (total != nullptr) *total = report->report.total;
  if (scored != nullptr) *scored = report->report.scored;
  if (missing != nullptr) *missing = report->report.missing;
}

const char *hd_report_json(const hd_report *report) {
  return report != nullptr ? report->json.c_str() : "{}";
}

void hd_report_free(hd_report *report) { delete report; }

}  // extern "C"
