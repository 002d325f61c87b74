#ifndef DFSGF_H
#define DFSGF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DfsgfStatus {
  DFSGF_STATUS_OK = 0,
  DFSGF_STATUS_NULL_POINTER = 1,
  DFSGF_STATUS_INVALID_ARGUMENT = 2,
  DFSGF_STATUS_POLE = 3,
  DFSGF_STATUS_INSUFFICIENT_DATA = 4,
  DFSGF_STATUS_PANIC = 5,
} DfsgfStatus;

typedef enum DfsgfFamily {
  DFSGF_FAMILY_G = 0,
  DFSGF_FAMILY_GX = 1,
  DFSGF_FAMILY_GY = 2,
  DFSGF_FAMILY_GY_ALT = 3,
} DfsgfFamily;

typedef enum DfsgfRole {
  DFSGF_ROLE_LOOP = 0,
  DFSGF_ROLE_FORWARD = 1,
  DFSGF_ROLE_BACK = 2,
  DFSGF_ROLE_CROSS = 3,
  DFSGF_ROLE_TREE = 4,
} DfsgfRole;

/**
 * An exact distribution table of one arc count.
 */
typedef struct DfsgfDistribution DfsgfDistribution;

/**
 * Memo tables of all recursion families.
 */
typedef struct DfsgfEngine DfsgfEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *dfsgf_version(void);

/**
 * Message of the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *dfsgf_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void dfsgf_string_free(char *s);

/**
 * New engine with empty memo tables. Release with [`dfsgf_engine_free`].
 */
struct DfsgfEngine *dfsgf_engine_new(bool reduce);

/**
 * # Safety
 * `engine` must come from [`dfsgf_engine_new`] or be NULL.
 */
void dfsgf_engine_free(struct DfsgfEngine *engine);

/**
 * Whether forward and back arcs are equidistributed on `n` vertices.
 *
 * # Safety
 * `engine` must be a live handle and `out` writable.
 */
enum DfsgfStatus dfsgf_engine_verify_knuth(struct DfsgfEngine *engine, size_t n, bool *out);

/**
 * Whether `(L,F,B+C,T)` and `(L,B,F+C,T)` have the same joint law.
 *
 * # Safety
 * `engine` must be a live handle and `out` writable.
 */
enum DfsgfStatus dfsgf_engine_verify_extended(struct DfsgfEngine *engine, size_t n, bool *out);

/**
 * Whether the two recursions for `GY_n` agree.
 *
 * # Safety
 * `engine` must be a live handle and `out` writable.
 */
enum DfsgfStatus dfsgf_engine_check_gy_recursions(struct DfsgfEngine *engine, size_t n, bool *out);

/**
 * Entry `n` of a family as JSON `{"numerator": [...], "factors": [...]}`.
 *
 * # Safety
 * `engine` must be a live handle and `out` writable.
 */
enum DfsgfStatus dfsgf_engine_entry_json(struct DfsgfEngine *engine,
                                         enum DfsgfFamily family,
                                         size_t n,
                                         char **out);

/**
 * Exact law of one arc count for `n` vertices and outdegree parameter `p`
 * (`"a/b"`), through `k = kmax`. Release with [`dfsgf_distribution_free`].
 *
 * # Safety
 * `p` must be a NUL-terminated string and `out` writable.
 */
enum DfsgfStatus dfsgf_distribution_new(size_t n,
                                        const char *p,
                                        enum DfsgfRole role,
                                        size_t kmax,
                                        struct DfsgfDistribution **out);

/**
 * # Safety
 * `dist` must come from [`dfsgf_distribution_new`] or be NULL.
 */
void dfsgf_distribution_free(struct DfsgfDistribution *dist);

/**
 * Number of tabulated probabilities (`kmax + 1`); 0 for NULL.
 *
 * # Safety
 * `dist` must be a live handle or NULL.
 */
size_t dfsgf_distribution_len(const struct DfsgfDistribution *dist);

/**
 * `P(count = k)` as `"a/b"`.
 *
 * # Safety
 * `dist` must be a live handle and `out` writable.
 */
enum DfsgfStatus dfsgf_distribution_prob(const struct DfsgfDistribution *dist,
                                         size_t k,
                                         char **out);

/**
 * `P(count > kmax)` as `"a/b"`.
 *
 * # Safety
 * `dist` must be a live handle and `out` writable.
 */
enum DfsgfStatus dfsgf_distribution_tail(const struct DfsgfDistribution *dist, char **out);

/**
 * The table as JSON `{"n", "p", "role", "coeffs": [{"k", "prob"}], "tail"}`.
 *
 * # Safety
 * `dist` must be a live handle and `out` writable.
 */
enum DfsgfStatus dfsgf_distribution_json(const struct DfsgfDistribution *dist, char **out);

/**
 * Exact mean of one arc count as `"a/b"`.
 *
 * # Safety
 * `p` must be a NUL-terminated string and `out` writable.
 */
enum DfsgfStatus dfsgf_mean_arc_count(size_t n, const char *p, enum DfsgfRole role, char **out);

/**
 * Whether `F` and `B` have the same law at these parameters.
 *
 * # Safety
 * `p` must be a NUL-terminated string and `out` writable.
 */
enum DfsgfStatus dfsgf_verify_forward_back_law(size_t n, const char *p, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DFSGF_H */
