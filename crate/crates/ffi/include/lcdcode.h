#ifndef LCDCODE_H
#define LCDCODE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  LCD_BUILD_STATUS_OPTIMAL_LCD = 0,
  /**
   * The reference distance is undecided; the lower value was built.
   */
  LCD_BUILD_STATUS_OPTIMAL_OR_NEAR = 1,
} LcdBuildStatus;

typedef enum {
  LCD_STATUS_OK = 0,
  LCD_STATUS_NULL_POINTER = 1,
  LCD_STATUS_INVALID_UTF8 = 2,
  LCD_STATUS_PARSE = 3,
  LCD_STATUS_INVALID_ARGUMENT = 4,
  LCD_STATUS_IO = 5,
  LCD_STATUS_NOT_FOUND = 6,
  LCD_STATUS_VERIFICATION_FAILED = 7,
  LCD_STATUS_INTERNAL = 8,
  LCD_STATUS_PANIC = 9,
} LcdStatus;

/**
 * Opaque generator-matrix code.
 */
typedef struct LcdCode LcdCode;

/**
 * Opaque handle on a database directory.
 */
typedef struct LcdDatabase LcdDatabase;

/**
 * Parameters of a code; `hull` is the hull dimension, 0 for LCD codes.
 */
typedef struct {
  size_t n;
  size_t k;
  size_t d;
  size_t hull;
} LcdParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty after a success. Valid
 * until the next call into this library from the same thread.
 */
const char *lcd_last_error(void);

/**
 * Parses ".g2m" text (`k n` header, then k rows of 0/1).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
LcdStatus lcd_code_from_g2m(const char *text, LcdCode **out);

/**
 * Parses a defining-vector line `k: l_1 ... l_N`.
 *
 * # Safety
 * As for `lcd_code_from_g2m`.
 */
LcdStatus lcd_code_from_defvec(const char *line, LcdCode **out);

/**
 * # Safety
 * `code` must come from this library and not be freed twice; null is ignored.
 */
void lcd_code_free(LcdCode *code);

/**
 * Computes `[n, k, d]` and the hull dimension.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
LcdStatus lcd_code_params(const LcdCode *code, LcdParams *out);

/**
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
LcdStatus lcd_code_is_lcd(const LcdCode *code, bool *out);

/**
 * Serializes to ".g2m"; release the string with `lcd_string_free`.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
LcdStatus lcd_code_to_g2m(const LcdCode *code, char **out);

/**
 * # Safety
 * `s` must come from this library; null is ignored.
 */
void lcd_string_free(char *s);

/**
 * Opens an existing database directory.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
LcdStatus lcd_database_open(const char *path, LcdDatabase **out);

/**
 * # Safety
 * `db` must come from this library and not be freed twice; null is ignored.
 */
void lcd_database_free(LcdDatabase *db);

/**
 * Builds the `[n, 6]` LCD code for `n >= 51`. `status` may be null.
 *
 * # Safety
 * `db` must be a live handle; `out` must be writable.
 */
LcdStatus lcd_construct(const LcdDatabase *db, size_t n, LcdCode **out, LcdBuildStatus *status);

/**
 * Local search for an `[n, k, >= target_d]` code (LCD when `require_lcd`).
 * Returns `NotFound` when the budget runs out; deterministic in `seed`.
 *
 * # Safety
 * `out` must be writable.
 */
LcdStatus lcd_hill_climb(size_t n,
                         size_t k,
                         size_t target_d,
                         bool require_lcd,
                         uint64_t iterations,
                         uint32_t restarts,
                         uint64_t seed,
                         LcdCode **out);

/**
 * JSON report of one registered theorem; release with `lcd_string_free`.
 *
 * # Safety
 * `id` must be a NUL-terminated string; `out` must be writable.
 */
LcdStatus lcd_check_theorem(const char *id, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LCDCODE_H */
