#ifndef WANGLAB_H
#define WANGLAB_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WlStatus {
  WL_STATUS_OK = 0,
  WL_STATUS_NULL_POINTER = 1,
  WL_STATUS_INVALID_ARGUMENT = 2,
  WL_STATUS_PARSE = 3,
  WL_STATUS_UNKNOWN_CLASS = 4,
  WL_STATUS_EMPTY_CLASS = 5,
  WL_STATUS_NOT_EVEN = 6,
  WL_STATUS_UNDECIDED = 7,
  WL_STATUS_OUT_OF_BOUNDS = 8,
  WL_STATUS_INTERNAL = 9,
} WlStatus;

/**
 * A finite tile pattern on a rectangle.
 */
typedef struct WlPattern WlPattern;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *wl_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void wl_string_free(char *s);

/**
 * Parses a tileset literal such as `"0000,0011,1100"` into a mask.
 *
 * # Safety
 * `literal` must be a NUL-terminated string and `out_mask` writable.
 */
enum WlStatus wl_tileset_parse(const char *literal, uint16_t *out_mask);

/**
 * The canonical representative of the symmetry orbit of `mask`.
 */
uint16_t wl_tileset_canonical(uint16_t mask);

/**
 * Orbits of non-empty tilesets: of even tiles when `all` is false, of all
 * sixteen tiles otherwise.
 */
size_t wl_orbit_count(bool all);

/**
 * Writes the class id (e.g. `"6.5.3"`) and verdict of an even tileset as
 * new strings; free both with [`wl_string_free`]. `out_verdict` may be NULL.
 *
 * # Safety
 * `out_id` must be writable; `out_verdict` NULL or writable.
 */
enum WlStatus wl_classify(uint16_t mask, char **out_id, char **out_verdict);

/**
 * Decides emptiness with the default search bounds; `*out_empty` is 1 when
 * no configuration exists.
 *
 * # Safety
 * `out_empty` must be writable.
 */
enum WlStatus wl_is_empty(uint16_t mask, bool *out_empty);

/**
 * Samples a `width x height` window of a class; the pattern spans
 * `[0,width-1] x [0,height-1]`.
 *
 * # Safety
 * `class_id` must be a NUL-terminated string and `out` writable.
 */
enum WlStatus wl_generate(const char *class_id,
                          size_t width,
                          size_t height,
                          uint64_t seed,
                          struct WlPattern **out);

/**
 * # Safety
 * `p` must be NULL or a handle from this library, not yet freed.
 */
void wl_pattern_free(struct WlPattern *p);

/**
 * Width and height of the bounding rectangle.
 *
 * # Safety
 * `p` must be a live handle; the outputs must be writable.
 */
enum WlStatus wl_pattern_size(const struct WlPattern *p, size_t *out_width, size_t *out_height);

/**
 * The code of the tile at `(x, y)`, counted from the lower-left corner of
 * the bounding rectangle.
 *
 * # Safety
 * `p` must be a live handle and `out_code` writable.
 */
enum WlStatus wl_pattern_tile_at(const struct WlPattern *p, size_t x, size_t y, uint8_t *out_code);

/**
 * Whether all adjacent tiles agree on shared edges.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
bool wl_pattern_is_valid(const struct WlPattern *p);

/**
 * The pattern as JSON; free with [`wl_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum WlStatus wl_pattern_to_json(const struct WlPattern *p, char **out);

/**
 * Renders the pattern as an SVG document; free with [`wl_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum WlStatus wl_pattern_to_svg(const struct WlPattern *p,
                                uint32_t cell_size,
                                bool draw_grid,
                                char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* WANGLAB_H */
