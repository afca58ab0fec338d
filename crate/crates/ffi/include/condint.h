#ifndef CONDINT_H
#define CONDINT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum CondintStatus {
  CONDINT_STATUS_OK = 0,
  /*
   The property under test is false: a cluster was found or a
   certificate clause failed.
   */
  CONDINT_STATUS_PROPERTY_FALSE = 1,
  CONDINT_STATUS_NULL_POINTER = 2,
  CONDINT_STATUS_INVALID_ARGUMENT = 3,
  CONDINT_STATUS_PARSE_ERROR = 4,
  /*
   The node budget ran out before the search finished.
   */
  CONDINT_STATUS_INCONCLUSIVE = 5,
  CONDINT_STATUS_BUFFER_TOO_SMALL = 6,
  CONDINT_STATUS_INTERNAL = 7,
  CONDINT_STATUS_PANIC = 8,
} CondintStatus;

/*
 Enumeration mode for the search entry points.
 */
typedef enum CondintEnumerate {
  CONDINT_ENUMERATE_VALUE_ONLY = 0,
  CONDINT_ENUMERATE_ONE_WITNESS = 1,
  CONDINT_ENUMERATE_ALL_MAXIMUM = 2,
} CondintEnumerate;

/*
 Opaque decomposition certificate handle.
 */
typedef struct CondintDecomposition CondintDecomposition;

/*
 Opaque family handle.
 */
typedef struct CondintFamily CondintFamily;

/*
 Summary of an exact search.
 */
typedef struct CondintSearchSummary {
  size_t h;
  size_t upper_bound;
  bool certified;
  uint64_t nodes_explored;
  size_t witness_count;
} CondintSearchSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after success.
 The pointer stays valid until the next call on the same thread.
 */
const char *condint_last_error_message(void);

/*
 Builds a family from `count` sets of `k` vertices each, stored
 contiguously in `vertices` (1-based).

 # Safety
 `vertices` must point to `count * k` readable values (may be null when
 `count` is 0); `out` must be writable.
 */
enum CondintStatus condint_family_new(size_t n,
                                      size_t k,
                                      const uint32_t *vertices,
                                      size_t count,
                                      struct CondintFamily **out);

/*
 Parses the text family format.

 # Safety
 `text` must be a nul-terminated string; `out` must be writable.
 */
enum CondintStatus condint_family_parse(const char *text, struct CondintFamily **out);

/*
 # Safety
 `family` must come from this library and not be used afterwards.
 */
void condint_family_free(struct CondintFamily *family);

/*
 # Safety
 `family` must be a live handle or null.
 */
size_t condint_family_len(const struct CondintFamily *family);

/*
 # Safety
 `family` must be a live handle or null.
 */
size_t condint_family_n(const struct CondintFamily *family);

/*
 # Safety
 `family` must be a live handle or null.
 */
size_t condint_family_k(const struct CondintFamily *family);

/*
 Copies member `index` (canonical order) into `out`, which must hold
 `capacity >= k` values.

 # Safety
 `out` must point to `capacity` writable values.
 */
enum CondintStatus condint_family_member(const struct CondintFamily *family,
                                         size_t index,
                                         uint32_t *out,
                                         size_t capacity);

/*
 Canonical text serialization.

 # Safety
 `family` must be a live handle; `out` must be writable.
 */
enum CondintStatus condint_family_serialize(const struct CondintFamily *family, char **out);

/*
 # Safety
 `s` must come from this library and not be used afterwards.
 */
void condint_string_free(char *s);

/*
 Searches for the canonically least `(d, s)`-cluster. On
 `CONDINT_STATUS_PROPERTY_FALSE` the `d * k` witness vertices are written to
 `out_members` (member by member) when it is non-null and large enough.

 # Safety
 `out_members` must point to `capacity` writable values or be null.
 */
enum CondintStatus condint_find_violation(const struct CondintFamily *family,
                                          size_t d,
                                          size_t s,
                                          uint32_t *out_members,
                                          size_t capacity);

/*
 # Safety
 `family` must be a live handle; `out` must be writable.
 */
enum CondintStatus condint_is_conditionally_intersecting(const struct CondintFamily *family,
                                                         size_t d,
                                                         size_t s,
                                                         bool *out);

/*
 # Safety
 `family` must be a live handle; `out` must be writable.
 */
enum CondintStatus condint_decompose(const struct CondintFamily *family,
                                     size_t d,
                                     struct CondintDecomposition **out);

/*
 # Safety
 `dec` must be a live handle; `out` must be writable.
 */
enum CondintStatus condint_decomposition_to_json(const struct CondintDecomposition *dec,
                                                 char **out);

/*
 # Safety
 `text` must be a nul-terminated string; `out` must be writable.
 */
enum CondintStatus condint_decomposition_from_json(const char *text,
                                                   struct CondintDecomposition **out);

/*
 Checks every clause of the certificate. When a clause fails, `*passed`
 is false, the status is `CONDINT_STATUS_PROPERTY_FALSE` and the error
 message names the first failing clause.

 # Safety
 Handles must be live; `passed` must be writable.
 */
enum CondintStatus condint_verify_decomposition(const struct CondintFamily *family,
                                                const struct CondintDecomposition *dec,
                                                size_t d,
                                                size_t s,
                                                bool *passed);

/*
 # Safety
 `dec` must come from this library and not be used afterwards.
 */
void condint_decomposition_free(struct CondintDecomposition *dec);

/*
 Exact `h(n, k, d, s)`. `budget` 0 means unlimited. When `witness` is
 non-null it receives the first maximum family (or null in value-only mode).

 # Safety
 `summary` must be writable; `witness` must be writable or null.
 */
enum CondintStatus condint_max_family(size_t n,
                                      size_t k,
                                      size_t d,
                                      size_t s,
                                      enum CondintEnumerate enumerate,
                                      size_t workers,
                                      uint64_t budget,
                                      struct CondintSearchSummary *summary,
                                      struct CondintFamily **witness);

/*
 Largest `(3, 2k)`-conditionally intersecting family with a disjoint pair.

 # Safety
 As for [`condint_max_family`].
 */
enum CondintStatus condint_max_nonintersecting(size_t n,
                                               size_t k,
                                               enum CondintEnumerate enumerate,
                                               size_t workers,
                                               uint64_t budget,
                                               struct CondintSearchSummary *summary,
                                               struct CondintFamily **witness);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONDINT_H */
