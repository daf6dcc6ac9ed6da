#ifndef SPINHOL_H
#define SPINHOL_H

#pragma once

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SpinholStatus {
  SPINHOL_STATUS_OK = 0,
  SPINHOL_STATUS_NULL_POINTER = 1,
  SPINHOL_STATUS_INVALID_UTF8 = 2,
  SPINHOL_STATUS_PARSE = 3,
  SPINHOL_STATUS_CLIFFORD = 4,
  SPINHOL_STATUS_SPIN = 5,
  SPINHOL_STATUS_TORSION = 6,
  SPINHOL_STATUS_LIE = 7,
  SPINHOL_STATUS_PANIC = 8,
} SpinholStatus;

/**
 * Opaque multivector handle.
 */
typedef struct SpinholMultivector SpinholMultivector;

/**
 * Copy of the last error message on this thread, or null if none.
 * Release with `spinhol_string_free`.
 */
char *spinhol_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, released once.
 */
void spinhol_string_free(char *s);

/**
 * # Safety
 * `mv` must be null or a handle returned by this library, released once.
 */
void spinhol_multivector_free(struct SpinholMultivector *mv);

/**
 * Parses a multivector record such as
 * `{"n":8,"terms":[{"blade":[1,2,3,4],"num":1,"den":1}]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum SpinholStatus spinhol_multivector_from_json(const char *json, struct SpinholMultivector **out);

/**
 * # Safety
 * `mv` must be a live handle; `out` must be writable.
 */
enum SpinholStatus spinhol_multivector_to_json(const struct SpinholMultivector *mv, char **out);

/**
 * Volume element `e_1 ... e_n` of `Cl_n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpinholStatus spinhol_volume(size_t n, struct SpinholMultivector **out);

/**
 * Clifford product `a b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum SpinholStatus spinhol_multivector_product(const struct SpinholMultivector *a,
                                               const struct SpinholMultivector *b,
                                               struct SpinholMultivector **out);

/**
 * Dimension `n` of the ambient Clifford algebra.
 *
 * # Safety
 * `mv` must be a live handle; `out` must be writable.
 */
enum SpinholStatus spinhol_multivector_dim(const struct SpinholMultivector *mv, size_t *out);

/**
 * Descriptor of the Lie algebra generated by `X _| T`, `X` a vector, as JSON.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum SpinholStatus spinhol_classify(const struct SpinholMultivector *t, char **out);

/**
 * Dimension of the space of spinors fixed by `T` (n = 6, 7, 8).
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum SpinholStatus spinhol_fixed_spinor_dim(const struct SpinholMultivector *t, size_t *out);

#endif  /* SPINHOL_H */
