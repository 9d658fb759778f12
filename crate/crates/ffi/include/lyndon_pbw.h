#ifndef LYNDON_PBW_H
#define LYNDON_PBW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LpStatus {
  LP_STATUS_OK = 0,
  LP_STATUS_NULL_POINTER = 1,
  LP_STATUS_INVALID_UTF8 = 2,
  LP_STATUS_PARSE_ERROR = 3,
  LP_STATUS_VALIDATION_ERROR = 4,
  LP_STATUS_ALGEBRA_ERROR = 5,
  LP_STATUS_PANIC = 6,
} LpStatus;

// A parsed and validated presentation.
typedef struct LpPresentation LpPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *lp_version(void);

// Message of the last failed call on this thread, or NULL. Valid until the next call on this thread.
const char *lp_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void lp_string_free(char *s);

// Parses a presentation document.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be a valid pointer.
enum LpStatus lp_presentation_parse(const char *text, struct LpPresentation **out);

// Loads one of the bundled example presentations by name.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be a valid pointer.
enum LpStatus lp_presentation_from_corpus(const char *name, struct LpPresentation **out);

// Releases a presentation. NULL is ignored.
//
// # Safety
// `p` must come from this library and not have been freed already.
void lp_presentation_free(struct LpPresentation *p);

// Number of letters in the presentation's alphabet.
//
// # Safety
// `p` and `out` must be valid pointers.
enum LpStatus lp_presentation_letter_count(const struct LpPresentation *p, uintptr_t *out);

// Canonical document text of the presentation.
//
// # Safety
// `p` and `out` must be valid pointers. Free the result with [`lp_string_free`].
enum LpStatus lp_presentation_to_string(const struct LpPresentation *p, char **out);

// Normal form of a polynomial expression modulo the presentation's relations,
// using the Gröbner basis truncated at the presentation's max degree.
//
// # Safety
// `p`, `expr` and `out` must be valid pointers. Free the result with [`lp_string_free`].
enum LpStatus lp_normal_form(const struct LpPresentation *p, const char *expr, char **out);

// Runs a command-line invocation, e.g. `{"pbw", "quantum_plane", "--max-degree", "8"}`.
// `exit_status` receives 0, 1 or 2 with the same meaning as the binary's exit status.
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings; `exit_status` and `output` must be valid.
// Free `*output` with [`lp_string_free`].
enum LpStatus lp_run_command(const char *const *argv,
                             uintptr_t argc,
                             int *exit_status,
                             char **output);

// Runs a command on an already parsed presentation. `command` is the command name,
// `flags` holds whitespace-separated options (may be NULL).
//
// # Safety
// `p`, `command`, `exit_status` and `output` must be valid pointers. Free `*output` with [`lp_string_free`].
enum LpStatus lp_presentation_run(const struct LpPresentation *p,
                                  const char *command,
                                  const char *flags,
                                  int *exit_status,
                                  char **output);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LYNDON_PBW_H */
