#ifndef FMTLAB_H
#define FMTLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Require an injective map.
 */
#define FMT_HOM_INJECTIVE 1

/**
 * Require a strong map.
 */
#define FMT_HOM_STRONG 2

/**
 * Require a full map.
 */
#define FMT_HOM_FULL 4

/**
 * Result codes.
 */
typedef enum FmtStatus {
  FMT_STATUS_OK = 0,
  FMT_STATUS_NULL_POINTER = 1,
  FMT_STATUS_INVALID_UTF8 = 2,
  FMT_STATUS_PARSE_ERROR = 3,
  FMT_STATUS_INVALID_INPUT = 4,
  FMT_STATUS_BUDGET_EXCEEDED = 5,
  FMT_STATUS_UNKNOWN_NAME = 6,
  FMT_STATUS_VOCABULARY_MISMATCH = 7,
  FMT_STATUS_PANIC = 8,
} FmtStatus;

/**
 * Opaque first-order formula.
 */
typedef struct FmtFormula FmtFormula;

/**
 * Opaque finite structure.
 */
typedef struct FmtStructure FmtStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *fmt_last_error(void);

/**
 * Library version as a static string.
 */
const char *fmt_version(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void fmt_string_free(char *s);

/**
 * Parses a structure from its text format.
 *
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum FmtStatus fmt_structure_parse(const char *src, struct FmtStructure **out);

/**
 * Generates a family member from `family:params`, e.g. `wheel:9`.
 *
 * # Safety
 * `family` must be a NUL-terminated string; `out` must be writable.
 */
enum FmtStatus fmt_structure_generate(const char *family, struct FmtStructure **out);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum FmtStatus fmt_structure_size(const struct FmtStructure *s, size_t *out);

/**
 * Text format of the structure; free with [`fmt_string_free`].
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum FmtStatus fmt_structure_to_string(const struct FmtStructure *s, char **out);

/**
 * # Safety
 * `s` must be null or a handle from this library not yet freed.
 */
void fmt_structure_free(struct FmtStructure *s);

/**
 * Parses a formula; built-in names such as `phi_bouquet` resolve first.
 *
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum FmtStatus fmt_formula_parse(const char *src, struct FmtFormula **out);

/**
 * S-expression form; free with [`fmt_string_free`].
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum FmtStatus fmt_formula_to_string(const struct FmtFormula *f, char **out);

/**
 * # Safety
 * `f` must be null or a handle from this library not yet freed.
 */
void fmt_formula_free(struct FmtFormula *f);

/**
 * Evaluates a sentence on a structure.
 *
 * # Safety
 * `f` and `s` must be live handles; `out` must be writable.
 */
enum FmtStatus fmt_evaluate(const struct FmtFormula *f, const struct FmtStructure *s, bool *out);

/**
 * Whether a homomorphism `a → b` exists. `flags` combines the
 * `FMT_HOM_*` bits; a zero `budget` means the default.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum FmtStatus fmt_hom_exists(const struct FmtStructure *a,
                              const struct FmtStructure *b,
                              uint32_t flags,
                              uint64_t budget,
                              bool *out);

/**
 * Number of homomorphisms `a → b` satisfying `flags`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum FmtStatus fmt_hom_count(const struct FmtStructure *a,
                             const struct FmtStructure *b,
                             uint32_t flags,
                             uint64_t budget,
                             uint64_t *out);

/**
 * Chromatic number of a graph.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum FmtStatus fmt_chromatic_number(const struct FmtStructure *g, uint64_t budget, size_t *out);

/**
 * Minor containment for a named pattern: `k4`, `k5`, `k33` or `k23`.
 *
 * # Safety
 * `g` must be a live handle, `pattern` a NUL-terminated string and `out`
 * writable.
 */
enum FmtStatus fmt_has_minor(const struct FmtStructure *g,
                             const char *pattern,
                             uint64_t budget,
                             bool *out);

/**
 * Runs a verification suite. `jobs == 0` uses the default thread pool.
 * `report` receives the plain-text report; free it with
 * [`fmt_string_free`].
 *
 * # Safety
 * `name` must be a NUL-terminated string; `passed` and `report` writable.
 */
enum FmtStatus fmt_run_suite(const char *name, size_t jobs, bool *passed, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FMTLAB_H */
