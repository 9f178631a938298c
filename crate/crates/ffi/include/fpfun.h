#ifndef FPFUN_H
#define FPFUN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible call.
 */
enum FpfStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  FPF_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  FPF_STATUS_NULL_ARGUMENT = 1,
  /**
   * Malformed text: not UTF-8, bad JSON, or a bad expression.
   */
  FPF_STATUS_PARSE = 2,
  /**
   * Well-formed input that fails validation.
   */
  FPF_STATUS_INVALID = 3,
  /**
   * A name did not resolve.
   */
  FPF_STATUS_UNRESOLVED = 4,
  /**
   * The operation is not defined for these arguments.
   */
  FPF_STATUS_UNDEFINED = 5,
  /**
   * A panic was caught at the boundary.
   */
  FPF_STATUS_INTERNAL = 6,
};
#ifndef __cplusplus
typedef int32_t FpfStatus;
#endif // __cplusplus

/**
 * An algebra together with the names resolvable over it.
 */
typedef struct FpfAlgebra FpfAlgebra;

typedef struct FpfFunctor FpfFunctor;

typedef struct FpfModule FpfModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null.
 *
 * The pointer stays valid until the next failing call on this thread.
 */
const char *fpf_last_error(void);

/**
 * A builtin algebra: `k<p>x<n>` or `A<n>` over `F_p`.
 *
 * # Safety
 * `name` is a NUL-terminated string and `out` is valid for a write.
 */
FpfStatus fpf_algebra_builtin(const char *name, uint64_t p, struct FpfAlgebra **out);

/**
 * An algebra from the JSON algebra file format.
 *
 * # Safety
 * `json` is a NUL-terminated string and `out` is valid for a write.
 */
FpfStatus fpf_algebra_from_json(const char *json, struct FpfAlgebra **out);

/**
 * # Safety
 * `alg` is null or a handle from this library, not yet freed.
 */
void fpf_algebra_free(struct FpfAlgebra *alg);

/**
 * # Safety
 * `alg` is a live handle and `out` is valid for a write.
 */
FpfStatus fpf_algebra_dim(const struct FpfAlgebra *alg, uintptr_t *out);

/**
 * A module expression such as `S`, `Tr(S)` or `op(L)`.
 *
 * # Safety
 * `alg` is a live handle, `expr` a NUL-terminated string, `out` valid for a write.
 */
FpfStatus fpf_module_parse(const struct FpfAlgebra *alg, const char *expr, struct FpfModule **out);

/**
 * A module from the JSON module file format; its `algebra` field is ignored.
 *
 * # Safety
 * `alg` is a live handle, `json` a NUL-terminated string, `out` valid for a write.
 */
FpfStatus fpf_module_from_json(const struct FpfAlgebra *alg,
                               const char *json,
                               struct FpfModule **out);

/**
 * # Safety
 * `m` is null or a handle from this library, not yet freed.
 */
void fpf_module_free(struct FpfModule *m);

/**
 * # Safety
 * `m` is a live handle and `out` is valid for a write.
 */
FpfStatus fpf_module_dim(const struct FpfModule *m, uintptr_t *out);

/**
 * # Safety
 * `x` and `y` are live handles and `out` is valid for a write.
 */
FpfStatus fpf_hom_dim(const struct FpfModule *x, const struct FpfModule *y, uintptr_t *out);

/**
 * # Safety
 * `x` and `y` are live handles and `out` is valid for a write.
 */
FpfStatus fpf_ext1_dim(const struct FpfModule *x, const struct FpfModule *y, uintptr_t *out);

/**
 * A functor expression such as `rep(S)`, `ext(S)` or `w2(ext(S))`.
 *
 * # Safety
 * `alg` is a live handle, `expr` a NUL-terminated string, `out` valid for a write.
 */
FpfStatus fpf_functor_parse(const struct FpfAlgebra *alg,
                            const char *expr,
                            struct FpfFunctor **out);

/**
 * # Safety
 * `f` is null or a handle from this library, not yet freed.
 */
void fpf_functor_free(struct FpfFunctor *f);

/**
 * 0 for covariant functors, 1 for contravariant ones.
 *
 * # Safety
 * `f` is a live handle and `out` is valid for a write.
 */
FpfStatus fpf_functor_variance(const struct FpfFunctor *f, int32_t *out);

/**
 * `dim F(X)`.
 *
 * # Safety
 * `f` and `x` are live handles and `out` is valid for a write.
 */
FpfStatus fpf_evaluate_dim(const struct FpfFunctor *f, const struct FpfModule *x, uintptr_t *out);

/**
 * The defect `w(F)` as a new module.
 *
 * # Safety
 * `f` is a live handle and `out` is valid for a write.
 */
FpfStatus fpf_defect(const struct FpfFunctor *f, struct FpfModule **out);

/**
 * `W2(F)` as a new functor.
 *
 * # Safety
 * `f` is a live handle and `out` is valid for a write.
 */
FpfStatus fpf_w2(const struct FpfFunctor *f, struct FpfFunctor **out);

/**
 * Runs one suite over `alg` with default settings.
 *
 * Writes the JSON report to `*report` (release with `fpf_string_free`)
 * and the number of failed checks to `*failed`.
 *
 * # Safety
 * `suite` is a NUL-terminated string, `alg` a live handle, and `report`
 * and `failed` are valid for writes.
 */
FpfStatus fpf_verify(const char *suite,
                     const struct FpfAlgebra *alg,
                     char **report,
                     uintptr_t *failed);

/**
 * # Safety
 * `s` is null or a string returned by this library, not yet freed.
 */
void fpf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FPFUN_H */
