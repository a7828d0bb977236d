/* C interface to the hypdist core. Results are UTF-8 JSON strings owned by
 * the caller and released with hd_string_free. All rational numbers in
 * results are "a/b" strings. */
#ifndef HYPDIST_H
#define HYPDIST_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(HYPDIST_BUILDING)
#define HD_API __attribute__((visibility("default")))
#else
#define HD_API
#endif

/* Status codes; they double as CLI exit codes. */
#define HD_OK 0
#define HD_ERR_USAGE 1
#define HD_ERR_DOMAIN 2
#define HD_ERR_INTERNAL 3

typedef struct hd_session hd_session;

HD_API const char* hd_version(void);

/* Details of the last failure on the calling thread. The name is the stable
 * error identifier (e.g. "NotHomogeneous"); "UsageError" for malformed
 * requests and "InternalError" for invariant breaches. */
HD_API const char* hd_last_error_name(void);
HD_API const char* hd_last_error_message(void);

/* Loads {"ambient": N, "variety": [...], "family": [...], ...}. */
HD_API int hd_session_open(const char* config_json, hd_session** out);
HD_API void hd_session_free(hd_session* session);

/* 1 if the operation exists, 0 otherwise; *needs_session tells whether it
 * reads a configuration. */
HD_API int hd_operation_info(const char* op, int* needs_session);

/* Runs `op` with a JSON object of arguments. `session` may be NULL for
 * operations that take no configuration. On HD_OK, *result_json receives a
 * newly allocated string. */
HD_API int hd_call(const hd_session* session, const char* op, const char* args_json, char** result_json);

/* Lowercase hex SHA-256 of the bytes; out must hold 65 chars. */
HD_API void hd_sha256_hex(const void* data, size_t len, char out[65]);

HD_API void hd_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
