#ifndef LEVALG_H
#define LEVALG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LevalgStatus {
  LEVALG_STATUS_OK = 0,
  LEVALG_STATUS_NULL_POINTER = 1,
  LEVALG_STATUS_INVALID_UTF8 = 2,
  LEVALG_STATUS_PARSE = 3,
  LEVALG_STATUS_INVALID_ARGUMENT = 4,
  LEVALG_STATUS_COMPUTATION = 5,
  LEVALG_STATUS_BUFFER_TOO_SMALL = 6,
  LEVALG_STATUS_PANIC = 7,
} LevalgStatus;

/*
 Opaque homogeneous ideal.
 */
typedef struct LevalgIdeal LevalgIdeal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses comma-separated homogeneous generators (optionally `+ m^t`) in
 `nvars` variables over GF(`prime`). The handle must be released with
 `levalg_ideal_free`.

 # Safety
 `text` must be a NUL-terminated string and `out` writable.
 */
enum LevalgStatus levalg_ideal_parse(uint64_t prime,
                                     uint32_t nvars,
                                     const char *text,
                                     struct LevalgIdeal **out);

/*
 Named witness ideal; `seed` is ignored by unseeded witnesses.

 # Safety
 `name` must be a NUL-terminated string and `out` writable.
 */
enum LevalgStatus levalg_witness(const char *name,
                                 uint64_t prime,
                                 uint64_t seed,
                                 struct LevalgIdeal **out);

/*
 Releases a handle; null is a no-op.

 # Safety
 `ideal` must come from this library and not be used afterwards.
 */
void levalg_ideal_free(struct LevalgIdeal *ideal);

/*
 Hilbert function of an Artinian quotient through its socle degree.
 On `BUFFER_TOO_SMALL`, `out_len` holds the required length.

 # Safety
 `buf` must have room for `capacity` entries; `out_len` must be writable.
 */
enum LevalgStatus levalg_hilbert(const struct LevalgIdeal *ideal,
                                 size_t *buf,
                                 size_t capacity,
                                 size_t *out_len);

/*
 Betti table as a JSON string (`{"r", "entries", "display"}`); free it
 with `levalg_string_free`. A non-Artinian quotient must have a Hilbert
 function that stabilizes by degree ten, as for point sets; otherwise
 `COMPUTATION` is returned.

 # Safety
 `out` must be writable.
 */
enum LevalgStatus levalg_betti_json(const struct LevalgIdeal *ideal, char **out);

/*
 Releases a string returned by this library; null is a no-op.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void levalg_string_free(char *s);

/*
 `dim Hom(I, R/I)_0` for an Artinian quotient.

 # Safety
 `out` must be writable.
 */
enum LevalgStatus levalg_tangent_artinian(const struct LevalgIdeal *ideal, size_t *out);

/*
 `H(c)` for `c ≥ 3`, of length `2c`.

 # Safety
 `buf` must have room for `capacity` entries; `out_len` must be writable.
 */
enum LevalgStatus levalg_series_hilbert(uint64_t c, size_t *buf, size_t capacity, size_t *out_len);

/*
 Copies the calling thread's last error message, NUL-terminated, into
 `buf`. `out_len` receives the message length without the terminator.

 # Safety
 `buf` must have room for `capacity` bytes; `out_len` must be writable.
 */
enum LevalgStatus levalg_last_error(char *buf, size_t capacity, size_t *out_len);

/*
 Library version as a static NUL-terminated string.
 */
const char *levalg_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEVALG_H */
