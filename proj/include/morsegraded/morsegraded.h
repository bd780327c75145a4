#ifndef MORSEGRADED_H
#define MORSEGRADED_H

#include <stddef.h>

#if defined(MG_BUILDING_LIBRARY)
#define MG_API __attribute__((visibility("default")))
#else
#define MG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mg_session mg_session;

typedef enum {
  MG_OK = 0,
  MG_PARSE_ERROR = 1,
  MG_INVALID_INPUT = 2,
  MG_INVALID_BASIS = 3,
  MG_NOT_COMPARABLE = 4,
  MG_CROSSING_VIOLATION = 5,
  MG_PATH_CAP_EXCEEDED = 6,
  MG_STATE_BUDGET_EXCEEDED = 7,
  MG_DEGREE_EXPLOSION = 8,
  MG_INVARIANT_BREACH = 9,
  MG_UNKNOWN_COMMAND = 10,
  MG_NULL_ARGUMENT = 20,
  MG_INTERNAL_ERROR = 21
} mg_status;

MG_API const char* mg_version(void);

// Parses and validates an input document. On failure *out is NULL.
MG_API mg_status mg_session_open(const char* input_json, mg_session** out);
MG_API void mg_session_close(mg_session* session);

// Runs one command. config_json may be NULL or "" for defaults. The report
// is returned in *out and released with mg_free_string.
MG_API mg_status mg_run(mg_session* session, const char* config_json, char** out);
MG_API void mg_free_string(char* s);

// Message of the last failure on the calling thread.
MG_API const char* mg_last_error(void);
MG_API const char* mg_status_name(mg_status status);

// Process exit status for a status: 0, 1 for validation errors, 2 otherwise.
MG_API int mg_exit_code(mg_status status);

// Writes 1 when mu <= lambda in the semigroup poset, else 0.
MG_API mg_status mg_semigroup_leq(const mg_session* session, const int* mu, const int* lambda, size_t length, int* out);

#ifdef __cplusplus
}
#endif

#endif
