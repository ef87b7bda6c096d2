#ifndef PERMREX_H
#define PERMREX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Builder selector for [`permrex_build`].
 */
typedef enum PermrexBuilder {
  PERMREX_BUILDER_DIVIDE_AND_CONQUER = 0,
  PERMREX_BUILDER_TAIL_RECURSIVE = 1,
  PERMREX_BUILDER_FLAT_UNION = 2,
} PermrexBuilder;

/**
 * Result code of every fallible call.
 */
typedef enum PermrexStatus {
  PERMREX_STATUS_OK = 0,
  PERMREX_STATUS_NULL_POINTER = 1,
  PERMREX_STATUS_INVALID_ARGUMENT = 2,
  PERMREX_STATUS_PARSE_ERROR = 3,
  PERMREX_STATUS_CAP_EXCEEDED = 4,
  PERMREX_STATUS_RENDER_ERROR = 5,
  /**
   * A certified check could not be decided at the maximum precision.
   */
  PERMREX_STATUS_UNDECIDED = 6,
  /**
   * The check ran and reported a violation.
   */
  PERMREX_STATUS_CHECK_FAILED = 7,
  PERMREX_STATUS_PANIC = 8,
} PermrexStatus;

/**
 * Opaque expression handle.
 */
typedef struct PermrexRegex PermrexRegex;

/**
 * Outcome of [`permrex_verify`].
 */
typedef struct PermrexCertificate {
  uint32_t n;
  uint64_t words_tested;
  uint64_t accepted;
  uint64_t permutations_accepted;
  uint64_t non_permutations_accepted;
  uint64_t shorter_words_accepted;
  uint64_t position_count;
  /**
   * Nonzero when the language is exactly the permutations of `1..=n`.
   */
  uint8_t passed;
} PermrexCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *permrex_last_error(void);

/**
 * Builds an expression for the alphabet `1..=n`. `max_symbols` of 0 means
 * the library default.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum PermrexStatus permrex_build(uint32_t builder,
                                 uint32_t n,
                                 uint64_t max_symbols,
                                 struct PermrexRegex **out);

/**
 * Parses compact or spaced text over `1..=n`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PermrexStatus permrex_parse(const char *text, uint32_t n, struct PermrexRegex **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `re` must come from this library and not be used afterwards.
 */
void permrex_regex_free(struct PermrexRegex *re);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void permrex_string_free(char *s);

/**
 * Renders `re` as compact (`spaced == 0`) or spaced text.
 *
 * # Safety
 * `re` must be a live handle and `out` a valid pointer.
 */
enum PermrexStatus permrex_render(const struct PermrexRegex *re, uint8_t spaced, char **out);

/**
 * Alphabetic length of `re` as a decimal string.
 *
 * # Safety
 * `re` must be a live handle and `out` a valid pointer.
 */
enum PermrexStatus permrex_alphabetic_length(const struct PermrexRegex *re, char **out);

/**
 * `f(n)`, the minimal alphabetic length, as a decimal string.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PermrexStatus permrex_f(uint64_t n, char **out);

/**
 * `t(n)`, the tail-recursive length, as a decimal string.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PermrexStatus permrex_t(uint64_t n, char **out);

/**
 * Exhaustively checks that `re` denotes the permutations of `1..=n`
 * (`n <= 7`). Returns `Ok` with `out->passed` set either way; a failed
 * certificate is not an error.
 *
 * # Safety
 * `re` must be a live handle and `out` a valid pointer.
 */
enum PermrexStatus permrex_verify(const struct PermrexRegex *re,
                                  uint32_t n,
                                  struct PermrexCertificate *out);

/**
 * Brute-force minimal alphabetic length of the full permutation language
 * over `1..=n` (`n <= 3`), over star-free expressions.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PermrexStatus permrex_oracle_cost(uint32_t n, uint32_t *out);

/**
 * Certifies the growth bounds on `f(n)` for `1 <= n <= max_n`, starting at
 * `precision_bits` (0 for the default). Returns `Ok` when every inequality
 * is certified, `CheckFailed` on a violation, `Undecided` when precision ran
 * out.
 */
enum PermrexStatus permrex_check_fn_bounds(uint64_t max_n, uint32_t precision_bits);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERMREX_H */
