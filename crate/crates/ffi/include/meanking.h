/* C interface for the meanking library. Generated by cbindgen; do not edit. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum MkStatus {
  MK_STATUS_OK = 0,
  // A parameter is out of range or malformed.
  MK_STATUS_INVALID_ARGUMENT = 1,
  // The construction is documented as unsupported for this input.
  MK_STATUS_UNSUPPORTED = 2,
  // The object was built but failed its mathematical checks.
  MK_STATUS_VERIFICATION_FAILED = 3,
  // A required pointer was null.
  MK_STATUS_NULL_POINTER = 4,
} MkStatus;

// A reconstruction basis, kept with the realization it belongs to.
typedef struct MkBasis MkBasis;

// A verified design together with its resolution.
typedef struct MkDesign MkDesign;

// A realization: one unit vector per block.
typedef struct MkRealization MkRealization;

// The five design parameters plus the class count of its resolution.
typedef struct MkDesignParams {
  uint64_t v;
  uint64_t b;
  uint64_t r;
  uint64_t k;
  uint64_t lambda;
  uint64_t classes;
} MkDesignParams;

// Aggregate result of an exhaustive protocol sweep.
typedef struct MkVerifyReport {
  uint64_t branches;
  uint64_t failures;
} MkVerifyReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message on this thread, or null if none was recorded.
// The pointer stays valid until the next failing call on the same thread.
const char *mk_last_error(void);

// Releases a string returned by any `*_to_json` or simulate call.
//
// # Safety
// `s` must be a pointer previously returned by this library and not yet
// freed; null is accepted and ignored.
void mk_string_free(char *s);

// Builds the affine plane AG(2,q) with its resolution.
//
// # Safety
// `out` must be a valid pointer to an `MkDesign*`.
enum MkStatus mk_affine_plane(uint64_t order, struct MkDesign **out);

// Builds the affine design of the Sylvester Hadamard matrix of size 2^k.
//
// # Safety
// `out` must be a valid pointer to an `MkDesign*`.
enum MkStatus mk_hadamard_design(uint32_t k, struct MkDesign **out);

// Copies the verified parameters of a design.
//
// # Safety
// `design` must be a live handle from this library; `out` must be valid.
enum MkStatus mk_design_params(const struct MkDesign *design, struct MkDesignParams *out);

// Serializes a design (with resolution) as pretty JSON.
//
// # Safety
// `design` must be a live handle; `out` must be valid. The returned string
// must be freed with `mk_string_free`.
enum MkStatus mk_design_to_json(const struct MkDesign *design, char **out);

// Destroys a design handle; null is ignored.
//
// # Safety
// `design` must be a handle from this library, not yet freed.
void mk_design_free(struct MkDesign *design);

// Realizes a design by normalized incidence vectors. The design handle
// stays owned by the caller.
//
// # Safety
// `design` must be a live handle; `out` must be valid.
enum MkStatus mk_realization_incidence(const struct MkDesign *design, struct MkRealization **out);

// Builds the MUB tensor realization of the affine plane of the given order.
//
// # Safety
// `out` must be a valid pointer.
enum MkStatus mk_realization_mub_plane(uint64_t order, struct MkRealization **out);

// Builds the explicit three-qubit realization of the order-8 Hadamard
// design.
//
// # Safety
// `out` must be a valid pointer.
enum MkStatus mk_realization_hadamard8(struct MkRealization **out);

// Re-checks the angle constraints of a realization and reports the worst
// deviation. Returns `VerificationFailed` if it exceeds the tolerance.
//
// # Safety
// `realization` must be a live handle; `max_deviation` may be null.
enum MkStatus mk_realization_verify(const struct MkRealization *realization, double *max_deviation);

// Serializes a realization as pretty JSON.
//
// # Safety
// `realization` must be a live handle; `out` must be valid. Free the
// string with `mk_string_free`.
enum MkStatus mk_realization_to_json(const struct MkRealization *realization, char **out);

// Destroys a realization handle; null is ignored.
//
// # Safety
// `realization` must be a handle from this library, not yet freed.
void mk_realization_free(struct MkRealization *realization);

// Builds the point-indexed reconstruction basis of a realization.
//
// # Safety
// `realization` must be a live handle; `out` must be valid.
enum MkStatus mk_point_basis(const struct MkRealization *realization,
                             uint64_t class_index,
                             struct MkBasis **out);

// Builds the function-indexed basis of the affine plane of the given
// order over its canonical MUB family.
//
// # Safety
// `out` must be a valid pointer.
enum MkStatus mk_function_basis(uint64_t order, struct MkBasis **out);

// Number of outcomes of a basis (equals the ambient dimension).
//
// # Safety
// `basis` must be a live handle.
uint64_t mk_basis_len(const struct MkBasis *basis);

// Serializes a basis as pretty JSON.
//
// # Safety
// `basis` must be a live handle; `out` must be valid. Free the string with
// `mk_string_free`.
enum MkStatus mk_basis_to_json(const struct MkBasis *basis, char **out);

// Destroys a basis handle; null is ignored.
//
// # Safety
// `basis` must be a handle from this library, not yet freed.
void mk_basis_free(struct MkBasis *basis);

// Exhaustively verifies a scenario ("affine", "hadamard8", or "function");
// `order` is the plane order where applicable. Returns
// `VerificationFailed` if any branch predicts the wrong block.
//
// # Safety
// `scenario` must be a NUL-terminated string; `report` must be valid.
enum MkStatus mk_verify_scenario(const char *scenario,
                                 uint64_t order,
                                 struct MkVerifyReport *report);

// Plays `trials` seeded games (trial t uses seed + t) and returns the
// transcripts as JSON lines. Deterministic in the seed.
//
// # Safety
// `scenario` must be a NUL-terminated string; `out` must be valid. Free
// the string with `mk_string_free`.
enum MkStatus mk_simulate(const char *scenario,
                          uint64_t order,
                          uint64_t seed,
                          uint64_t trials,
                          char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
