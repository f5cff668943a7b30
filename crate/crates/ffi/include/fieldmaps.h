#ifndef FIELDMAPS_H
#define FIELDMAPS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdint.h>
#include <stddef.h>

// Result codes.
typedef enum FmStatus {
  FM_STATUS_OK = 0,
  FM_STATUS_NULL_POINTER = 1,
  FM_STATUS_INVALID_ARGUMENT = 2,
  FM_STATUS_PARSE = 3,
  FM_STATUS_HYPOTHESIS = 4,
  FM_STATUS_UNKNOWN_FAMILY = 5,
  FM_STATUS_CAP_EXCEEDED = 6,
  FM_STATUS_NOT_APPLICABLE = 7,
  FM_STATUS_CONCLUSION_FAILED = 8,
  FM_STATUS_IO = 9,
  FM_STATUS_PANIC = 10,
} FmStatus;

// A finite field.
typedef struct FmField FmField;

// A map on a finite field, stored as its value table.
typedef struct FmMap FmMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer is
// valid until the next failing call on the same thread.
const char *fm_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *fm_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void fm_string_free(char *s);

// F_{p^n} with the default modulus.
//
// # Safety
// `out` must be valid for writes.
enum FmStatus fm_field_new(uint32_t p, uint32_t n, struct FmField **out);

// F_{p^n} with an explicit monic modulus, coefficients from the constant term up.
//
// # Safety
// `coeffs` must point to `len` readable values and `out` must be valid for writes.
enum FmStatus fm_field_new_with_modulus(uint32_t p,
                                        uint32_t n,
                                        const uint32_t *coeffs,
                                        size_t len,
                                        struct FmField **out);

// # Safety
// `field` must come from `fm_field_new*` and not have been freed. Null is ignored.
void fm_field_free(struct FmField *field);

// Field order q, or 0 for a null handle.
//
// # Safety
// `field` must be null or a live handle.
size_t fm_field_order(const struct FmField *field);

// # Safety
// `field` must be a live handle and `out` valid for writes.
enum FmStatus fm_field_add(const struct FmField *field, uint32_t a, uint32_t b, uint32_t *out);

// # Safety
// `field` must be a live handle and `out` valid for writes.
enum FmStatus fm_field_mul(const struct FmField *field, uint32_t a, uint32_t b, uint32_t *out);

// # Safety
// `field` must be a live handle and `out` valid for writes.
enum FmStatus fm_field_inv(const struct FmField *field, uint32_t a, uint32_t *out);

// A map from its value table; `len` must equal the field order.
//
// # Safety
// `values` must point to `len` readable values and `out` must be valid for writes.
enum FmStatus fm_map_from_table(const struct FmField *field,
                                const uint32_t *values,
                                size_t len,
                                struct FmMap **out);

// A map from an expression such as `x^3 + 2*x`.
//
// # Safety
// `expr` must be a NUL-terminated string and `out` valid for writes.
enum FmStatus fm_map_from_expression(const struct FmField *field,
                                     const char *expr,
                                     struct FmMap **out);

// A catalog map by id. `params_json` is null or a JSON object with any of
// the keys n, m, i, k, a, alpha, beta, gamma.
//
// # Safety
// `id` must be a NUL-terminated string, `params_json` null or one, and `out` valid for writes.
enum FmStatus fm_map_from_family(const char *id, const char *params_json, struct FmMap **out);

// A map from the text of a LUT file.
//
// # Safety
// `text` must be a NUL-terminated string and `out` valid for writes.
enum FmStatus fm_map_from_lut(const char *text, struct FmMap **out);

// # Safety
// `map` must come from `fm_map_from_*` and not have been freed. Null is ignored.
void fm_map_free(struct FmMap *map);

// Order of the field the map lives on, or 0 for a null handle.
//
// # Safety
// `map` must be null or a live handle.
size_t fm_map_order(const struct FmMap *map);

// # Safety
// `map` must be a live handle and `out` valid for writes.
enum FmStatus fm_map_eval(const struct FmMap *map, uint32_t x, uint32_t *out);

// |f(F_q)|.
//
// # Safety
// `map` must be a live handle and `out` valid for writes.
enum FmStatus fm_map_image_size(const struct FmMap *map, uint64_t *out);

// Number of elements with exactly r preimages.
//
// # Safety
// `map` must be a live handle and `out` valid for writes.
enum FmStatus fm_map_m_count(const struct FmMap *map, uint32_t r, uint64_t *out);

// Differential uniformity.
//
// # Safety
// `map` must be a live handle and `out` valid for writes.
enum FmStatus fm_map_uniformity(const struct FmMap *map, uint32_t *out);

// W(b, a) for every a, written to `out[0..q]`. Characteristic 2 only.
//
// # Safety
// `map` must be a live handle and `out` valid for `len` writes.
enum FmStatus fm_map_walsh_component(const struct FmMap *map, uint32_t b, int64_t *out, size_t len);

// Full analysis report as JSON. `suite` is null for all theorems, or a
// selector such as `ub.*`. Free the result with `fm_string_free`.
//
// # Safety
// `map` must be a live handle, `suite` null or a NUL-terminated string, `out` valid for writes.
enum FmStatus fm_map_analyze_json(const struct FmMap *map, const char *suite, char **out);

// Runs the theorem suite and writes the number of conclusion failures.
// Returns `ConclusionFailed` when that number is nonzero.
//
// # Safety
// `map` must be a live handle, `suite` null or a NUL-terminated string, `failures` null or valid for writes.
enum FmStatus fm_map_verify(const struct FmMap *map,
                            const char *suite,
                            uint32_t *failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FIELDMAPS_H */
