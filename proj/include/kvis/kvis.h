/* kvis - k-visibility regions under a bounded-workspace execution model.
 *
 * C interface to the shared library: opaque handles, integer status codes,
 * and text results. Every function returning kvis_status writes an error
 * message into the caller's buffer on failure (when one is supplied).
 * Objects are created and destroyed by this library only.
 */
#ifndef KVIS_H
#define KVIS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define KVIS_API __declspec(dllexport)
#else
#define KVIS_API __attribute__((visibility("default")))
#endif

typedef struct kvis_scene kvis_scene;
typedef struct kvis_result kvis_result;

typedef enum kvis_status {
  KVIS_OK = 0,
  KVIS_ERROR_PARSE = 1,      /* malformed scene text */
  KVIS_ERROR_INVALID = 2,    /* scene fails validation (not simple, q outside, ...) */
  KVIS_ERROR_DEGENERATE = 3, /* weak general position violated */
  KVIS_ERROR_BUDGET = 4,     /* strict-mode workspace budget exceeded */
  KVIS_ERROR_ARG = 5,        /* bad argument */
  KVIS_ERROR_IO = 6,         /* file not readable */
  KVIS_ERROR_GENERATE = 7,   /* random scene generation failed */
  KVIS_ERROR_INTERNAL = 8
} kvis_status;

typedef enum kvis_algo {
  KVIS_ALGO_CONST = 0,
  KVIS_ALGO_BATCH_ALL = 1,
  KVIS_ALGO_BATCH_CRIT = 2,
  KVIS_ALGO_ORACLE = 3
} kvis_algo;

typedef enum kvis_report {
  KVIS_REPORT_WINDOWS = 0,
  KVIS_REPORT_BOUNDARY = 1
} kvis_report;

typedef struct kvis_run_options {
  kvis_algo algo;
  kvis_report report;
  long workspace;    /* the s parameter; >= 1 */
  int strict;        /* nonzero: enforce the documented workspace budget */
  long budget_words; /* strict only; <= 0 uses the documented budget */
} kvis_run_options;

typedef struct kvis_stats {
  unsigned long long n;          /* input records */
  long long k;                   /* effective (even) k */
  long long s;
  unsigned long long c;          /* critical vertices */
  unsigned long long reads;      /* counted input-record reads */
  unsigned long long peak_words; /* peak metered workspace */
  unsigned long long emitted;    /* output records */
  unsigned long long windows;    /* window chords */
} kvis_stats;

KVIS_API const char* kvis_version(void);
KVIS_API const char* kvis_status_name(kvis_status st);

/* Scene lifecycle. */
KVIS_API kvis_status kvis_scene_parse(const char* text, kvis_scene** out, char* err,
                                      size_t err_len);
KVIS_API kvis_status kvis_scene_load(const char* path, kvis_scene** out, char* err,
                                     size_t err_len);
KVIS_API kvis_status kvis_scene_generate(const char* profile, unsigned long n,
                                         unsigned long long seed, long k, kvis_scene** out,
                                         char* err, size_t err_len);
KVIS_API void kvis_scene_free(kvis_scene* scene);

/* Canonical scene text (free with kvis_text_free). */
KVIS_API kvis_status kvis_scene_format(const kvis_scene* scene, char** out_text);
KVIS_API unsigned long kvis_scene_vertices(const kvis_scene* scene);
KVIS_API long kvis_scene_k(const kvis_scene* scene);

/* Run one algorithm; on success *out owns the result. */
KVIS_API kvis_status kvis_run(const kvis_scene* scene, const kvis_run_options* options,
                              kvis_result** out, char* err, size_t err_len);

/* Result text in the documented line format (owned by the result). */
KVIS_API const char* kvis_result_text(const kvis_result* result);
KVIS_API kvis_status kvis_result_stats(const kvis_result* result, kvis_stats* out);
/* SVG rendering of a result over its scene (free with kvis_text_free). */
KVIS_API kvis_status kvis_result_svg(const kvis_scene* scene, const kvis_result* result,
                                     char** out_svg);
KVIS_API void kvis_result_free(kvis_result* result);

/* Benchmark grid; emits CSV (free with kvis_text_free). Lists are
 * comma-separated integers; `wall` adds the informational wall_ns column. */
KVIS_API kvis_status kvis_bench(const char* n_list, const char* s_list, const char* k_list,
                                const char* profile, unsigned reps, unsigned long long seed,
                                int wall, char** out_csv, char* err, size_t err_len);

KVIS_API void kvis_text_free(char* text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KVIS_H */
