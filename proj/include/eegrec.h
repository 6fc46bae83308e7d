/*
 * Copyright 2026 the eegrec authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the eegrec pipeline: EEG-signal based item recommendation
 * with learned per-segment state decomposition, continuity/interference
 * graph aggregation and pairwise ranking training.
 *
 * All entry points are driven through an opaque context holding the run
 * configuration. Functions return EEGREC_OK or a status code; the last
 * failure message is kept on the context.
 */

#ifndef EEGREC_H
#define EEGREC_H

#include <stddef.h>

#if defined(_WIN32)
#define EEGREC_API __declspec(dllexport)
#else
#define EEGREC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct eegrec_ctx eegrec_ctx;

typedef enum {
  EEGREC_OK = 0,
  EEGREC_ERR_CONFIG = 1,   /* bad key, value or hyperparameter combination */
  EEGREC_ERR_DATA = 2,     /* dataset or catalog content problems */
  EEGREC_ERR_PARSE = 3,    /* malformed input file */
  EEGREC_ERR_IO = 4,       /* filesystem failures */
  EEGREC_ERR_CONTRACT = 5, /* API misuse */
  EEGREC_ERR_INTERNAL = 6
} eegrec_status;

typedef struct {
  double p_at_k;
  double r_at_k;
  double f1_at_k;
  unsigned long long instances;
} eegrec_metrics;

EEGREC_API eegrec_ctx* eegrec_ctx_new(void);
EEGREC_API void eegrec_ctx_free(eegrec_ctx* ctx);

/* Message for the most recent failure on this context; never NULL. */
EEGREC_API const char* eegrec_last_error(const eegrec_ctx* ctx);

EEGREC_API const char* eegrec_version(void);

/* Configuration: key = value pairs, also loadable from a config file.
 * Values set later win, so load the file before applying overrides. */
EEGREC_API eegrec_status eegrec_config_load(eegrec_ctx* ctx, const char* path);
EEGREC_API eegrec_status eegrec_config_set(eegrec_ctx* ctx, const char* key, const char* value);

/* Copies the resolved value of one key into buffer (NUL-terminated). */
EEGREC_API eegrec_status eegrec_config_get(eegrec_ctx* ctx, const char* key, char* buffer,
                                           size_t buffer_len);

/* Writes a synthetic dataset (recordings, embeddings, images) to `out`. */
EEGREC_API eegrec_status eegrec_generate(eegrec_ctx* ctx);

/* Trains per the configuration; writes config snapshot, epoch log and
 * checkpoint into the configured output directory. */
EEGREC_API eegrec_status eegrec_train(eegrec_ctx* ctx);

/* Scores the held-out split against a checkpoint; metrics_out may be NULL. */
EEGREC_API eegrec_status eegrec_eval(eegrec_ctx* ctx, const char* checkpoint_path,
                                     eegrec_metrics* metrics_out);

/* Trains + evaluates once per comma-separated value of a sweepable key. */
EEGREC_API eegrec_status eegrec_sweep(eegrec_ctx* ctx, const char* key, const char* values_csv);

/* Dumps collapse probabilities and adjacency matrices for one recording
 * (empty or NULL recording_id picks the first). */
EEGREC_API eegrec_status eegrec_inspect(eegrec_ctx* ctx, const char* checkpoint_path,
                                        const char* recording_id);

#ifdef __cplusplus
}
#endif

#endif /* EEGREC_H */
