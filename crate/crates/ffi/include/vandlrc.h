#ifndef VANDLRC_H
#define VANDLRC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Marks an erased symbol in word buffers.
 */
#define VLRC_ERASED UINT32_MAX

typedef enum VlrcStatus {
  VLRC_STATUS_OK = 0,
  VLRC_STATUS_NULL_POINTER = 1,
  VLRC_STATUS_INVALID_ARGUMENT = 2,
  VLRC_STATUS_INVALID_FAMILY = 3,
  VLRC_STATUS_GENERATION_FAILED = 4,
  VLRC_STATUS_LENGTH_MISMATCH = 5,
  VLRC_STATUS_UNRECOVERABLE = 6,
  VLRC_STATUS_INCONSISTENT = 7,
  VLRC_STATUS_BUDGET_EXCEEDED = 8,
  VLRC_STATUS_PARSE_ERROR = 9,
  /**
   * A Rust panic was caught at the boundary.
   */
  VLRC_STATUS_INTERNAL = 10,
} VlrcStatus;

/**
 * Opaque code built from a family.
 */
typedef struct VlrcCode VlrcCode;

/**
 * Opaque set family.
 */
typedef struct VlrcFamily VlrcFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on this thread.
 */
const char *vlrc_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *vlrc_version(void);

/**
 * Family from `m` sets of `r + 1` elements each, laid out consecutively
 * in `elements`.
 *
 * # Safety
 * `elements` must point to `m * (r + 1)` readable values; `out` must be writable.
 */
enum VlrcStatus vlrc_family_new(uint32_t q,
                                size_t r,
                                size_t t,
                                const uint32_t *elements,
                                size_t m,
                                struct VlrcFamily **out);

/**
 * Family parsed from the text format `q r t m` followed by `m` sets.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum VlrcStatus vlrc_family_parse(const char *text, struct VlrcFamily **out);

/**
 * Probabilistic construction (`t >= 3`).
 *
 * # Safety
 * `out` must be writable.
 */
enum VlrcStatus vlrc_family_random(uint32_t q,
                                   size_t r,
                                   size_t t,
                                   uint64_t seed,
                                   uint32_t max_attempts,
                                   struct VlrcFamily **out);

/**
 * Greedy construction from `candidate_budget` random candidates.
 *
 * # Safety
 * `out` must be writable.
 */
enum VlrcStatus vlrc_family_greedy(uint32_t q,
                                   size_t r,
                                   size_t t,
                                   uint64_t candidate_budget,
                                   uint64_t seed,
                                   struct VlrcFamily **out);

/**
 * Deterministic construction (`t` in {2, 3}).
 *
 * # Safety
 * `out` must be writable.
 */
enum VlrcStatus vlrc_family_derandomized(uint32_t q, size_t r, size_t t, struct VlrcFamily **out);

/**
 * # Safety
 * `family` must be NULL or a handle from this library not yet freed.
 */
void vlrc_family_free(struct VlrcFamily *family);

/**
 * Number of sets; 0 for NULL.
 *
 * # Safety
 * `family` must be NULL or a live handle.
 */
size_t vlrc_family_size(const struct VlrcFamily *family);

/**
 * Copies the `r + 1` elements of set `index` into `out`.
 *
 * # Safety
 * `family` must be a live handle and `out` must hold `out_len` values.
 */
enum VlrcStatus vlrc_family_get_set(const struct VlrcFamily *family,
                                    size_t index,
                                    uint32_t *out,
                                    size_t out_len);

/**
 * Sets `*passes` to whether the union condition holds at the family's depth.
 *
 * # Safety
 * `family` must be a live handle and `passes` writable.
 */
enum VlrcStatus vlrc_family_verify(const struct VlrcFamily *family, bool *passes);

/**
 * Code of design distance `d` from a family passing the union condition.
 *
 * # Safety
 * `family` must be a live handle and `out` writable.
 */
enum VlrcStatus vlrc_code_from_family(const struct VlrcFamily *family,
                                      size_t d,
                                      struct VlrcCode **out);

/**
 * # Safety
 * `code` must be NULL or a handle from this library not yet freed.
 */
void vlrc_code_free(struct VlrcCode *code);

/**
 * Length; 0 for NULL.
 *
 * # Safety
 * `code` must be NULL or a live handle.
 */
size_t vlrc_code_n(const struct VlrcCode *code);

/**
 * Dimension; 0 for NULL.
 *
 * # Safety
 * `code` must be NULL or a live handle.
 */
size_t vlrc_code_k(const struct VlrcCode *code);

/**
 * Design distance; 0 for NULL.
 *
 * # Safety
 * `code` must be NULL or a live handle.
 */
size_t vlrc_code_d(const struct VlrcCode *code);

/**
 * Locality; 0 for NULL.
 *
 * # Safety
 * `code` must be NULL or a live handle.
 */
size_t vlrc_code_r(const struct VlrcCode *code);

/**
 * Field order; 0 for NULL.
 *
 * # Safety
 * `code` must be NULL or a live handle.
 */
uint32_t vlrc_code_q(const struct VlrcCode *code);

/**
 * Encodes `k` message symbols into `n` codeword symbols.
 *
 * # Safety
 * `message` must hold `k` values and `out` must hold `n` values.
 */
enum VlrcStatus vlrc_code_encode(const struct VlrcCode *code,
                                 const uint32_t *message,
                                 size_t k,
                                 uint32_t *out,
                                 size_t n);

/**
 * Recovers the single erased symbol of `word` from its repair group.
 * Writes the position, the value and the number of symbols read.
 *
 * # Safety
 * `word` must hold `n` values; the three output pointers must be writable.
 */
enum VlrcStatus vlrc_code_local_repair(const struct VlrcCode *code,
                                       const uint32_t *word,
                                       size_t n,
                                       size_t *position,
                                       uint32_t *value,
                                       size_t *symbols_read);

/**
 * Fills every erasure of `word` into `out` by solving the parity checks.
 *
 * # Safety
 * `word` and `out` must each hold `n` values.
 */
enum VlrcStatus vlrc_code_decode(const struct VlrcCode *code,
                                 const uint32_t *word,
                                 uint32_t *out,
                                 size_t n);

/**
 * Returns 1 if `word` (no erasures) is a codeword, 0 if not, -1 on error.
 *
 * # Safety
 * `word` must hold `n` values.
 */
int32_t vlrc_code_is_codeword(const struct VlrcCode *code, const uint32_t *word, size_t n);

/**
 * Exact minimum distance, enumerating at most `budget` column subsets.
 *
 * # Safety
 * `code` must be a live handle and `distance` writable.
 */
enum VlrcStatus vlrc_code_min_distance(const struct VlrcCode *code,
                                       uint64_t budget,
                                       size_t *distance);

/**
 * Field order check helper for bindings: `q` is a prime power at most 65536.
 */
bool vlrc_is_valid_order(uint32_t q);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* VANDLRC_H */
