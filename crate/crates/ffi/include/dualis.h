#ifndef DUALIS_H
#define DUALIS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a fallible call.
 */
typedef enum DualisStatus {
  DUALIS_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  DUALIS_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  DUALIS_STATUS_INVALID_UTF8 = 2,
  /**
   * An expression, equation or word failed to parse.
   */
  DUALIS_STATUS_PARSE = 3,
  /**
   * Symbols or alphabets do not fit together.
   */
  DUALIS_STATUS_ALPHABET = 4,
  /**
   * An element index is out of range.
   */
  DUALIS_STATUS_OUT_OF_RANGE = 5,
  /**
   * A checked law failed inside the library.
   */
  DUALIS_STATUS_VIOLATION = 6,
  /**
   * The library panicked; the handle arguments are left untouched.
   */
  DUALIS_STATUS_INTERNAL = 7,
} DualisStatus;

/**
 * A regular language with its canonical minimal automaton.
 */
typedef struct DualisLanguage DualisLanguage;

/**
 * The syntactic monoid of a language together with the letter images and
 * the accepting set.
 */
typedef struct DualisMonoid DualisMonoid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *dualis_version(void);

/**
 * Message of the last failed call on this thread, or NULL after a
 * successful call. Release with [`dualis_string_free`].
 */
char *dualis_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void dualis_string_free(char *s);

/**
 * Parses `regex` over the symbols of `alphabet` (written `"ab"` or `"a,b"`).
 *
 * # Safety
 * `regex` and `alphabet` must be NUL-terminated strings; `out` must be a
 * writable pointer.
 */
enum DualisStatus dualis_language_parse(const char *regex,
                                        const char *alphabet,
                                        struct DualisLanguage **out);

/**
 * # Safety
 * `lang` must be NULL or a handle from this library, not yet freed.
 */
void dualis_language_free(struct DualisLanguage *lang);

/**
 * Whether `word` (a string of alphabet symbols) belongs to `lang`.
 *
 * # Safety
 * `lang` must be a live handle, `word` a NUL-terminated string and `out`
 * writable.
 */
enum DualisStatus dualis_language_accepts(const struct DualisLanguage *lang,
                                          const char *word,
                                          bool *out);

/**
 * States of the minimal automaton, 0 for a NULL handle.
 *
 * # Safety
 * `lang` must be NULL or a live handle.
 */
size_t dualis_language_state_count(const struct DualisLanguage *lang);

/**
 * Whether two languages over the same alphabet are equal.
 *
 * # Safety
 * Both handles must be live; `out` writable.
 */
enum DualisStatus dualis_language_equals(const struct DualisLanguage *a,
                                         const struct DualisLanguage *b,
                                         bool *out);

/**
 * Left residual `k\l` (words `w` with `k·w ⊆ l`) as a new handle.
 *
 * # Safety
 * Both handles must be live; `out` writable.
 */
enum DualisStatus dualis_language_residual_left(const struct DualisLanguage *k,
                                                const struct DualisLanguage *l,
                                                struct DualisLanguage **out);

/**
 * Right residual `l/k` (words `w` with `w·k ⊆ l`) as a new handle.
 *
 * # Safety
 * Both handles must be live; `out` writable.
 */
enum DualisStatus dualis_language_residual_right(const struct DualisLanguage *l,
                                                 const struct DualisLanguage *k,
                                                 struct DualisLanguage **out);

/**
 * The minimal automaton as JSON, or NULL for a NULL handle.
 *
 * # Safety
 * `lang` must be NULL or a live handle.
 */
char *dualis_language_to_json(const struct DualisLanguage *lang);

/**
 * Syntactic monoid of `lang` as a new handle.
 *
 * # Safety
 * `lang` must be a live handle; `out` writable.
 */
enum DualisStatus dualis_syntactic_monoid(const struct DualisLanguage *lang,
                                          struct DualisMonoid **out);

/**
 * # Safety
 * `m` must be NULL or a handle from this library, not yet freed.
 */
void dualis_monoid_free(struct DualisMonoid *m);

/**
 * Number of elements, 0 for a NULL handle.
 *
 * # Safety
 * `m` must be NULL or a live handle.
 */
size_t dualis_monoid_size(const struct DualisMonoid *m);

/**
 * Index of the identity (the image of the empty word).
 *
 * # Safety
 * `m` must be a live handle; `out` writable.
 */
enum DualisStatus dualis_monoid_identity(const struct DualisMonoid *m, size_t *out);

/**
 * Product `x·y` of two element indices.
 *
 * # Safety
 * `m` must be a live handle; `out` writable.
 */
enum DualisStatus dualis_monoid_multiply(const struct DualisMonoid *m,
                                         size_t x,
                                         size_t y,
                                         size_t *out);

/**
 * Image of `word` under the recognizing morphism.
 *
 * # Safety
 * `m` must be a live handle, `word` NUL-terminated and `out` writable.
 */
enum DualisStatus dualis_monoid_eval_word(const struct DualisMonoid *m,
                                          const char *word,
                                          size_t *out);

/**
 * Whether element `x` lies in the accepting set.
 *
 * # Safety
 * `m` must be a live handle; `out` writable.
 */
enum DualisStatus dualis_monoid_is_accepting(const struct DualisMonoid *m, size_t x, bool *out);

/**
 * The morphism (table, letter images, accepting set) as JSON, or NULL for
 * a NULL handle.
 *
 * # Safety
 * `m` must be NULL or a live handle.
 */
char *dualis_monoid_to_json(const struct DualisMonoid *m);

/**
 * Whether `lang` satisfies `equation` (`u -> v`, `u <-> v` or `u <= v`
 * over ω-terms in the alphabet letters).
 *
 * # Safety
 * `lang` must be a live handle, `equation` NUL-terminated and `out`
 * writable.
 */
enum DualisStatus dualis_check_equation(const struct DualisLanguage *lang,
                                        const char *equation,
                                        bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DUALIS_H */
