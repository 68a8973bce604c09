#ifndef RELCYL_H
#define RELCYL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes of every fallible call.
typedef enum RelcylStatus {
  RELCYL_STATUS_OK = 0,
  // The check ran and found violations (or a play ran out of budget).
  RELCYL_STATUS_FAILED = 1,
  RELCYL_STATUS_NULL_POINTER = 2,
  RELCYL_STATUS_INVALID_UTF8 = 3,
  // Malformed input: JSON, shapes, unknown names, dimensions.
  RELCYL_STATUS_FORMAT = 4,
  // The input is well formed but outside what the call accepts.
  RELCYL_STATUS_PRECONDITION = 5,
  RELCYL_STATUS_BUDGET = 6,
  // An internal invariant broke; please report with the input.
  RELCYL_STATUS_INTERNAL = 7,
} RelcylStatus;

// Opaque algebra handle.
typedef struct RelcylAlgebra RelcylAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or null. Valid until
// the next failing call on the same thread.
const char *relcyl_last_error(void);

// Parses an algebra in the JSON atom-table format.
//
// # Safety
// `json` must be a nul-terminated string and `out` a valid pointer.
enum RelcylStatus relcyl_algebra_from_json(const char *json, struct RelcylAlgebra **out);

// Releases an algebra; null is ignored.
//
// # Safety
// `a` must come from [`relcyl_algebra_from_json`] and not be used afterwards.
void relcyl_algebra_free(struct RelcylAlgebra *a);

// Number of atoms, or 0 for null.
//
// # Safety
// `a` must be null or a live handle.
size_t relcyl_algebra_num_atoms(const struct RelcylAlgebra *a);

// Dimension, or 0 for null.
//
// # Safety
// `a` must be null or a live handle.
size_t relcyl_algebra_dimension(const struct RelcylAlgebra *a);

// Checks the algebra against `"PTA"`, `"TA"`, `"SA"` or `"TEA"` and writes
// the violation report (a JSON array) to `report`. Returns `Ok` when the
// report is empty and `Failed` otherwise.
//
// # Safety
// `a` must be a live handle, `class` a nul-terminated string and `report` a
// valid pointer.
enum RelcylStatus relcyl_check_class(const struct RelcylAlgebra *a,
                                     const char *class_,
                                     char **report);

// Plays the representation game in `mode` (`"PTA"` or `"TEA"`) with the
// given budgets (0 picks the default) and writes
// `{"representation": …, "verify": …, "complete": …}` to `result`. Returns
// `Ok` iff the play saturated and every check passed.
//
// # Safety
// `a` must be a live handle, `mode` a nul-terminated string and `result` a
// valid pointer.
enum RelcylStatus relcyl_represent(const struct RelcylAlgebra *a,
                                   const char *mode,
                                   size_t max_rounds,
                                   size_t max_nodes,
                                   char **result);

// Releases a string handed out by this library; null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void relcyl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RELCYL_H */
