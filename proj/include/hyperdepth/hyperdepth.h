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

/*
 * C interface to the hyperdepth toolkit: corpus ingestion, the article
 * search index, the depth and heading measures, pair scoring and the
 * benchmark protocols.
 *
 * Objects are opaque handles released with their *_free function. Every
 * fallible call returns an hd_status; on failure hd_last_error() describes
 * the problem (thread local, valid until the next call on that thread).
 * Strings are UTF-8. Strings passed to callbacks are only valid during the
 * callback.
 */
#ifndef HYPERDEPTH_HYPERDEPTH_H_
#define HYPERDEPTH_HYPERDEPTH_H_

#include <stddef.h>

#if defined(_WIN32)
#define HD_API __declspec(dllexport)
#else
#define HD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hd_status {
  HD_OK = 0,
  HD_ERR_INVALID_ARGUMENT = 1,
  HD_ERR_IO = 2,
  HD_ERR_PARSE = 3,
  HD_ERR_DUPLICATE = 4,
  HD_ERR_NOT_COMPUTABLE = 5,
  HD_ERR_UNDEFINED_METRIC = 6,
  HD_ERR_INTERNAL = 7
} hd_status;

typedef enum hd_topology { HD_TOPOLOGY_STAR = 0, HD_TOPOLOGY_LINEAR = 1 } hd_topology;

typedef enum hd_sim_method { HD_SIM_JACCARD = 0, HD_SIM_COSINE = 1 } hd_sim_method;

typedef enum hd_tie_mode { HD_TIE_STABLE = 0, HD_TIE_WORST = 1 } hd_tie_mode;

typedef enum hd_direction {
  HD_DIRECTION_W1_HYPER = 0,
  HD_DIRECTION_W2_HYPER = 1,
  HD_DIRECTION_UNDECIDED = 2
} hd_direction;

typedef struct hd_corpus hd_corpus;
typedef struct hd_index hd_index;
typedef struct hd_embeddings hd_embeddings;
typedef struct hd_dataset hd_dataset;
typedef struct hd_report hd_report;

/* Shared run configuration. Initialize with hd_config_init. */
typedef struct hd_config {
  hd_topology topology;   /* default HD_TOPOLOGY_STAR */
  size_t k;               /* retrieved articles per word, default 1000 */
  hd_sim_method sim;      /* default HD_SIM_JACCARD */
  int max_disambig_hops;  /* default 2 */
  int use_stoplist;       /* drop boilerplate headings, default 1 */
  hd_tie_mode tie;        /* AP tie handling, default HD_TIE_STABLE */
  unsigned threads;       /* 0 = available parallelism */
} hd_config;

HD_API void hd_config_init(hd_config *config);

HD_API const char *hd_version(void);
HD_API const char *hd_last_error(void);
HD_API const char *hd_status_name(hd_status status);

/* ---- ingest ---- */

typedef struct hd_ingest_stats {
  size_t pages_read;
  size_t articles_written;
  size_t skipped_no_text;
  size_t filtered_namespace;
  size_t duplicate_titles;
} hd_ingest_stats;

/* Converts a MediaWiki XML export into a corpus file. stats may be NULL. */
HD_API hd_status hd_ingest_dump(const char *dump_path, const char *corpus_path,
                                int ns, hd_ingest_stats *stats);

/* ---- corpus ---- */

HD_API hd_status hd_corpus_open(const char *path, hd_corpus **out);
HD_API hd_status hd_corpus_write(const hd_corpus *corpus, const char *path);
HD_API size_t hd_corpus_size(const hd_corpus *corpus);
HD_API void hd_corpus_free(hd_corpus *corpus);

/* ---- search index ---- */

typedef void (*hd_hit_fn)(void *user, const char *article_id,
                          const char *normalized_title, double score,
                          unsigned phrase_frequency);

HD_API hd_status hd_index_build(const hd_corpus *corpus, unsigned threads,
                                hd_index **out);
HD_API hd_status hd_index_save(const hd_index *index, const char *path);
HD_API hd_status hd_index_load(const char *path, hd_index **out);
/* 1 if the index was built from exactly this corpus, 0 otherwise. */
HD_API int hd_index_is_current(const hd_index *index, const hd_corpus *corpus);
HD_API size_t hd_index_doc_count(const hd_index *index);
/* Calls fn for each of the top k articles, best first. */
HD_API hd_status hd_index_query(const hd_index *index, const char *phrase,
                                size_t k, hd_hit_fn fn, void *user);
HD_API void hd_index_free(hd_index *index);

/* ---- depth measure ---- */

typedef void (*hd_article_lambda_fn)(void *user, const char *article_id,
                                     double lambda);

/* Depth measure of one word in the article titled `title`. */
HD_API hd_status hd_lambda_article(const hd_corpus *corpus, const char *title,
                                   const char *word, hd_topology topology,
                                   double *out);

/*
 * Median depth measure over the top config->k articles. *defined is 0 when
 * no article contains the word. fn (nullable) receives per-article values
 * sorted by article id.
 */
HD_API hd_status hd_depth(const hd_corpus *corpus, const hd_index *index,
                          const char *word, const hd_config *config,
                          double *aggregate, int *defined,
                          hd_article_lambda_fn fn, void *user);

/* ---- heading measure ---- */

typedef void (*hd_meaning_fn)(void *user, const char *source_title,
                              const char *const *headings, size_t count);

/* Calls fn once per meaning, ordered by source title. count may be NULL. */
HD_API hd_status hd_headings(const hd_corpus *corpus, const char *word,
                             const hd_config *config, hd_meaning_fn fn,
                             void *user, size_t *count);

HD_API hd_status hd_embeddings_load(const char *path, hd_embeddings **out);
HD_API int hd_embeddings_dimension(const hd_embeddings *table);
HD_API void hd_embeddings_free(hd_embeddings *table);

/* ---- scoring ---- */

typedef struct hd_pair_score {
  double lambda1;
  double lambda2;
  int lambda1_defined;
  int lambda2_defined;
  double depth_term_raw; /* unclamped (1 + lambda1 - lambda2) / 2 */
  double depth_term;     /* clamped to [0, 1] */
  int depth_term_defined;
  double sim;
  double combined;
  hd_direction direction;
} hd_pair_score;

/*
 * Scores n pairs (w1[i], w2[i]) into out[i]. embeddings may be NULL unless
 * config->sim is HD_SIM_COSINE.
 */
HD_API hd_status hd_score_pairs(const hd_corpus *corpus, const hd_index *index,
                                const hd_embeddings *embeddings,
                                const hd_config *config, const char *const *w1,
                                const char *const *w2, size_t n,
                                hd_pair_score *out);

/* ---- evaluation ---- */

HD_API hd_status hd_dataset_load(const char *path, int strip_pos,
                                 hd_dataset **out);
HD_API size_t hd_dataset_size(const hd_dataset *dataset);
HD_API void hd_dataset_free(hd_dataset *dataset);

HD_API hd_status hd_eval_direction(const hd_dataset *dataset,
                                   const hd_corpus *corpus,
                                   const hd_index *index,
                                   const hd_embeddings *embeddings,
                                   const hd_config *config,
                                   const char *dataset_name, hd_report **out);

/* relation is a relation label or "all". */
HD_API hd_status hd_eval_detect(const hd_dataset *dataset,
                                const hd_corpus *corpus, const hd_index *index,
                                const hd_embeddings *embeddings,
                                const hd_config *config,
                                const char *dataset_name, const char *relation,
                                hd_report **out);

HD_API double hd_report_value(const hd_report *report);
HD_API const char *hd_report_metric(const hd_report *report);
HD_API const char *hd_report_relation(const hd_report *report);
HD_API void hd_report_counts(const hd_report *report, size_t *total,
                             size_t *scored, size_t *missing);
/* JSON object mirroring the report; owned by the report. */
HD_API const char *hd_report_json(const hd_report *report);
HD_API void hd_report_free(hd_report *report);

#ifdef __cplusplus
}
#endif

#endif /* HYPERDEPTH_HYPERDEPTH_H_ */
