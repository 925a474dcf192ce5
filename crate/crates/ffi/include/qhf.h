#ifndef QHF_H
#define QHF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum QhfStatus {
  QHF_STATUS_OK = 0,
  QHF_STATUS_NULL_POINTER = 1,
  QHF_STATUS_INVALID_UTF8 = 2,
  QHF_STATUS_PARSE_ERROR = 3,
  QHF_STATUS_INVALID_INPUT = 4,
  QHF_STATUS_VERIFICATION_FAILED = 5,
  QHF_STATUS_EXCEPTIONAL_IDEMPOTENT = 6,
  QHF_STATUS_INTERNAL = 7,
} QhfStatus;

// Which scene command to run.
typedef enum QhfCommand {
  QHF_COMMAND_VERIFY = 0,
  QHF_COMMAND_CONSTRUCT = 1,
} QhfCommand;

// Opaque handle to structure tensors.
typedef struct QhfStructure QhfStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Owned by the
// library; valid until the next call.
const char *qhf_last_error(void);

// Static name of a status code.
const char *qhf_status_name(enum QhfStatus status);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void qhf_string_free(char *s);

// Parses structure tensors from JSON (the format written by
// `qhf_structure_to_json`).
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum QhfStatus qhf_structure_from_json(const char *json, struct QhfStructure **out);

// `K(G)` for a catalog group such as `"symmetric 3"`.
//
// # Safety
// `catalog` must be a NUL-terminated string; `out` must be writable.
enum QhfStatus qhf_function_algebra(const char *catalog, struct QhfStructure **out);

// `ℂ[G]` for a catalog group.
//
// # Safety
// `catalog` must be a NUL-terminated string; `out` must be writable.
enum QhfStatus qhf_group_algebra(const char *catalog, struct QhfStructure **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `h` must come from this library and not have been freed.
void qhf_structure_free(struct QhfStructure *h);

// Dimension of the algebra.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum QhfStatus qhf_structure_dim(const struct QhfStructure *h, size_t *out);

// Runs the axiom verifier. `all_pass` receives 1 or 0; `ledger_json`, if
// not NULL, receives the ledger as JSON with witnesses.
//
// # Safety
// `h` must be a live handle; `all_pass` must be writable.
enum QhfStatus qhf_structure_verify(const struct QhfStructure *h,
                                    int *all_pass,
                                    char **ledger_json);

// Serializes a handle to JSON.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum QhfStatus qhf_structure_to_json(const struct QhfStructure *h, char **out);

// Runs a scene given as JSON text and returns the report as JSON.
// `exit_code` (optional) receives the CLI exit code for the report.
//
// # Safety
// `scene_json` must be a NUL-terminated string; `report_json` must be
// writable; `exit_code` may be NULL.
enum QhfStatus qhf_run_scene(const char *scene_json,
                             enum QhfCommand command,
                             int witnesses,
                             char **report_json,
                             int *exit_code);

// Runs the catalog sweep up to `max_order`.
//
// # Safety
// `report_json` must be writable; `exit_code` may be NULL.
enum QhfStatus qhf_sweep(size_t max_order,
                         int search_exceptional,
                         char **report_json,
                         int *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QHF_H */
