#ifndef DUALRAMSEY_H
#define DUALRAMSEY_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(DR_BUILDING_LIBRARY)
#define DR_API __attribute__((visibility("default")))
#else
#define DR_API
#endif

/* Numeric values are stable; DR_OK is the only success code. */
typedef enum dr_status {
  DR_OK = 0,
  DR_E_INVALID_ARGUMENT = 1,
  DR_E_OUT_OF_SHAPE = 2,
  DR_E_BUDGET_EXCEEDED = 3,
  DR_E_NOT_FOUND = 4,
  DR_E_NOT_SIMPLE = 5,
  DR_E_NO_COLLISION = 6,
  DR_E_DOMAIN_MISMATCH = 7,
  DR_E_OVERFLOW = 8,
  DR_E_MISSING_ORACLE = 9,
  DR_E_PARSE = 10,
  DR_E_INTERNAL = 11
} dr_status;

typedef struct dr_context dr_context;

/* Receives one JSON object per verified prefix of a universal verification. */
typedef void (*dr_progress_fn)(const char* progress_json, void* user);

DR_API dr_context* dr_context_new(void);
DR_API void dr_context_free(dr_context* ctx);

DR_API const char* dr_status_name(dr_status status);
/* Message of the last failed call; empty after a success. Owned by ctx. */
DR_API const char* dr_last_error(const dr_context* ctx);
/* JSON response of the last successful call. Owned by ctx, valid until the next call. */
DR_API const char* dr_result(const dr_context* ctx);
DR_API void dr_set_progress(dr_context* ctx, dr_progress_fn fn, void* user);

/* Each operation takes a JSON request and leaves a JSON response in dr_result. */
DR_API dr_status dr_enumerate(dr_context* ctx, const char* request_json);
DR_API dr_status dr_check(dr_context* ctx, const char* request_json);
DR_API dr_status dr_shelah(dr_context* ctx, const char* request_json);
DR_API dr_status dr_bounds(dr_context* ctx, const char* request_json);
DR_API dr_status dr_search(dr_context* ctx, const char* request_json);
DR_API dr_status dr_verify(dr_context* ctx, const char* request_json);

DR_API const char* dr_version(void);

#ifdef __cplusplus
}
#endif

#endif
