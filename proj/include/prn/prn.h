#ifndef PRN_PRN_H
#define PRN_PRN_H

/* C interface to the parametric regulatory network library.
 *
 * Handles are opaque and owned by the caller; free them with the matching
 * *_free function. Strings returned through char** are heap allocated and
 * released with prn_string_free. On any status other than PRN_OK a message
 * is available from prn_last_error() until the next call on the same thread.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PRN_API __declspec(dllexport)
#else
#define PRN_API __attribute__((visibility("default")))
#endif

typedef enum prn_status {
  PRN_OK = 0,
  PRN_VERIFICATION_FAILED = 1,
  PRN_INPUT_ERROR = 2,
  PRN_RESOURCE_LIMIT = 3,
  PRN_INTERNAL_ERROR = 4
} prn_status;

typedef struct prn_model prn_model;
typedef struct prn_prefix prn_prefix;

PRN_API const char* prn_last_error(void);
PRN_API void prn_string_free(char* s);

/* Models ---------------------------------------------------------------- */

PRN_API prn_status prn_model_load(const char* path, prn_model** out);
PRN_API prn_status prn_model_parse(const char* text, const char* name, prn_model** out);
PRN_API void prn_model_free(prn_model* model);

typedef struct prn_model_info {
  size_t nodes;
  size_t influences;
  size_t constraints;
  int minmax;
  size_t parameters;           /* |Omega| */
  uint64_t parametrisations;   /* |P|, saturated at UINT64_MAX */
  int parametrisations_saturated;
} prn_model_info;

PRN_API prn_status prn_model_info_get(const prn_model* model, prn_model_info* out);
/* Multi-line summary: sizes, constraints, base box and Min-Max notes. */
PRN_API prn_status prn_model_describe(const prn_model* model, char** out);
/* Canonical model text. */
PRN_API prn_status prn_model_print(const prn_model* model, char** out);
/* One line per node skipped by the Min-Max rule; empty when none. */
PRN_API prn_status prn_model_warnings(const prn_model* model, char** out);

/* Unfolding -------------------------------------------------------------- */

typedef struct prn_unfold_options {
  size_t max_events;   /* 0: unlimited */
  double max_seconds;  /* <= 0: unlimited */
  int no_constraints;  /* ignore the model's constraints */
} prn_unfold_options;

/* Builds the complete finite prefix. When a limit stops construction the
 * truncated prefix is still returned and the status is PRN_RESOURCE_LIMIT. */
PRN_API prn_status prn_unfold(const prn_model* model, const prn_unfold_options* options,
                              prn_prefix** out);
PRN_API void prn_prefix_free(prn_prefix* prefix);

typedef struct prn_prefix_stats {
  size_t events; /* non-cut-off events */
  size_t events_with_cutoffs;
  size_t conditions;
  double runtime_ms;
  int complete;
} prn_prefix_stats;

PRN_API prn_status prn_prefix_stats_get(const prn_prefix* prefix, prn_prefix_stats* out);
PRN_API prn_status prn_prefix_dot(const prn_prefix* prefix, char** out);
/* Counts the states of all prefix configurations. Cached after the first call. */
PRN_API prn_status prn_prefix_reachable_count(prn_prefix* prefix, size_t* out);
/* Reachable states, one per line, as digit strings in node order. */
PRN_API prn_status prn_prefix_reachable_states(prn_prefix* prefix, char** out);
/* Stats JSON. Reachable states are included when computed; runtime only
 * when include_runtime is set. */
PRN_API prn_status prn_prefix_report(prn_prefix* prefix, int include_reachable, int include_runtime,
                                     int as_json, char** out);

/* Verification ----------------------------------------------------------- */

/* Compares the prefix's reachable states with the brute-force oracle on a
 * desk-scale model. Writes a human readable report. */
PRN_API prn_status prn_verify_model(const prn_model* model, char** report);

/* Random trials of the abstraction and prefix checks. One line per trial plus
 * a summary. PRN_VERIFICATION_FAILED when any trial fails. */
PRN_API prn_status prn_verify_random(uint64_t seed, size_t trials, char** report);

#ifdef __cplusplus
}
#endif

#endif
