/*
 * C interface to the bssize library: optimal Bayesian sample size for the
 * mean of a Birnbaum-Saunders distribution.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns a bss_status;
 * on failure bss_last_error() describes the problem for the calling thread.
 * Strings returned through char** are released with bss_string_free().
 */
#ifndef BSSIZE_BSSIZE_H
#define BSSIZE_BSSIZE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BSSIZE_BUILDING_LIBRARY)
#    define BSS_API __declspec(dllexport)
#  else
#    define BSS_API __declspec(dllimport)
#  endif
#else
#  define BSS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bss_status {
  BSS_OK = 0,
  BSS_ERR_INVALID_ARGUMENT = 1, /* bad configuration, parameter or input */
  BSS_ERR_SIMULATION = 2,       /* degenerate chains, unusable fit */
  BSS_ERR_IO = 3,
  BSS_ERR_INTERNAL = 4
} bss_status;

typedef struct bss_config_builder bss_config_builder;
typedef struct bss_config bss_config;
typedef struct bss_manifest bss_manifest;

typedef enum bss_event_kind {
  BSS_EVENT_POINT_STARTED = 0,
  BSS_EVENT_POINT_FINISHED = 1,
  BSS_EVENT_WARNING = 2
} bss_event_kind;

typedef struct bss_event {
  bss_event_kind kind;
  int replicate;      /* 1-based pipeline repetition */
  int n;              /* grid sample size, 0 if not point-specific */
  int estimate;       /* 0-based risk estimate index at n */
  int effective_k;    /* surviving outer replicates (finished events) */
  const char* message; /* warnings only; valid during the callback */
} bss_event;

/* Called from worker threads, never concurrently. */
typedef void (*bss_event_callback)(const bss_event* event, void* user_data);

typedef struct bss_ssd_result {
  int worthwhile;      /* 0: not worth sampling */
  long optimal_n;      /* valid when worthwhile */
  double raw_value;    /* pre-rounding value, NaN when G_hat <= 0 */
  double e_hat;
  double g_hat;
  double c;
  double r_squared;
  int points_used;
  int points_dropped;
} bss_ssd_result;

BSS_API const char* bss_version(void);
BSS_API const char* bss_last_error(void);
BSS_API void bss_string_free(char* s);

/* Configuration: collect key/value settings, then validate in build. */
BSS_API bss_status bss_builder_create(bss_config_builder** out);
BSS_API void bss_builder_destroy(bss_config_builder* builder);
BSS_API bss_status bss_builder_load_text(bss_config_builder* builder, const char* text);
BSS_API bss_status bss_builder_load_file(bss_config_builder* builder, const char* path);
BSS_API bss_status bss_builder_set(bss_config_builder* builder, const char* key, const char* value);
BSS_API bss_status bss_builder_build(const bss_config_builder* builder, bss_config** out);

BSS_API bss_status bss_config_parse(const char* text, bss_config** out);
BSS_API void bss_config_destroy(bss_config* config);
BSS_API bss_status bss_config_to_text(const bss_config* config, char** out);
/* replicates x grid size x estimates per n: the number of risk estimates a
 * run produces. */
BSS_API size_t bss_config_work_units(const bss_config* config);

/* Runs every pipeline repetition. callback may be NULL. threads == 0 uses
 * the hardware concurrency. Results do not depend on the thread count. */
BSS_API bss_status bss_run(const bss_config* config, unsigned threads,
                           bss_event_callback callback, void* user_data,
                           bss_manifest** out);

BSS_API void bss_manifest_destroy(bss_manifest* manifest);
BSS_API bss_status bss_manifest_to_json(const bss_manifest* manifest, char** out);
BSS_API bss_status bss_manifest_from_json(const char* json, bss_manifest** out);
BSS_API size_t bss_manifest_replicate_count(const bss_manifest* manifest);
/* index: 1-based repetition, or 0 for the consensus result. */
BSS_API bss_status bss_manifest_result(const bss_manifest* manifest, size_t index,
                                       bss_ssd_result* out);
BSS_API bss_status bss_manifest_write_report(const bss_manifest* manifest, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* BSSIZE_BSSIZE_H */
