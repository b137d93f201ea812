#ifndef RLDUAL_H
#define RLDUAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RldStatus {
  RLD_STATUS_OK = 0,
  RLD_STATUS_NULL_POINTER = 1,
  RLD_STATUS_INVALID_UTF8 = 2,
  RLD_STATUS_PARSE = 3,
  RLD_STATUS_INVALID_ALGEBRA = 4,
  RLD_STATUS_UNKNOWN_NAME = 5,
  RLD_STATUS_NOT_APPLICABLE = 6,
  RLD_STATUS_BOUND_EXCEEDED = 7,
  RLD_STATUS_INTERNAL = 8,
} RldStatus;

// Opaque handle to a validated algebra.
typedef struct RldAlgebra RldAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer is
// valid until the next call into this library on the same thread.
const char *rld_last_error(void);

// # Safety
// `s` is null or a string returned by this library and not yet freed.
void rld_string_free(char *s);

// Parses and validates an algebra in the text format.
//
// # Safety
// `text` is a NUL-terminated string; `out` is writable.
enum RldStatus rld_algebra_parse(const char *text, struct RldAlgebra **out);

// Looks up a built-in fixture such as `"g3"` or `"nm4"`.
//
// # Safety
// `name` is a NUL-terminated string; `out` is writable.
enum RldStatus rld_algebra_fixture(const char *name, struct RldAlgebra **out);

// # Safety
// `alg` is null or a handle returned by this library and not yet freed.
void rld_algebra_free(struct RldAlgebra *alg);

// # Safety
// `alg` is a live handle; `out` is writable.
enum RldStatus rld_algebra_size(const struct RldAlgebra *alg, size_t *out);

// Writes 1 or 0 for a classification property, or -1 when the property
// does not apply (zero divisors in GMTL mode). Names are those printed by
// `rldual classify`, e.g. `"mtl"`, `"sbp"`, `"zero_divisors"`.
//
// # Safety
// `alg` is a live handle; `name` is a NUL-terminated string; `out` is writable.
enum RldStatus rld_algebra_property(const struct RldAlgebra *alg, const char *name, int32_t *out);

// Number of points of the prime spectrum.
//
// # Safety
// `alg` is a live handle; `out` is writable.
enum RldStatus rld_spectrum_size(const struct RldAlgebra *alg, size_t *out);

// The prime spectrum as JSON, freed with [`rld_string_free`].
//
// # Safety
// `alg` is a live handle; `out` is writable.
enum RldStatus rld_spectrum_json(const struct RldAlgebra *alg, char **out);

// Runs a named verification suite. `passed` receives whether every check
// held; the status is `NOT_APPLICABLE` when the suite needs an sbp-algebra.
//
// # Safety
// `alg` is a live handle; `suite` is a NUL-terminated string; `passed` is
// writable.
enum RldStatus rld_verify(const struct RldAlgebra *alg, const char *suite, bool *passed);

// Number of MTL-chains with `n` elements up to isomorphism.
//
// # Safety
// `out` is writable.
enum RldStatus rld_mtl_chain_count(size_t n, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RLDUAL_H */
