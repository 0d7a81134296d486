#ifndef STIELTJES_H
#define STIELTJES_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum {
  STJ_ACCELERATION_NONE = 0,
  // Subtract the leading n⁻⁴ term of each summand and add back its ζ(4) sum.
  STJ_ACCELERATION_SUBTRACT_LEADING = 1,
  STJ_ACCELERATION_ASYMPTOTIC_TAIL = 2,
} StjAcceleration;

// Result codes. Zero is success.
typedef enum {
  STJ_STATUS_OK = 0,
  STJ_STATUS_NULL_POINTER = 1,
  STJ_STATUS_INVALID_ARGUMENT = 2,
  STJ_STATUS_DEPTH_EXCEEDED = 3,
  STJ_STATUS_TOLERANCE_NOT_MET = 4,
  STJ_STATUS_DOMAIN_ERROR = 5,
  STJ_STATUS_NON_CONVERGENCE = 6,
  STJ_STATUS_VERIFICATION_FAILED = 7,
  STJ_STATUS_INTERNAL = 8,
} StjStatus;

// Opaque computation request.
typedef struct StjRequest StjRequest;

// Opaque computation result.
typedef struct StjResult StjResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// New request for γ_k(1) with the library defaults (10⁴ terms, asymptotic
// tail, 256 bits). Never returns null.
StjRequest *stj_request_new(uint32_t k);

// Release a request. Null is ignored.
//
// # Safety
// `req` must come from [`stj_request_new`] and not be used afterwards.
void stj_request_free(StjRequest *req);

// Select a = ½ (`half` true) or a = 1.
//
// # Safety
// `req` must be a live request or null.
StjStatus stj_request_set_half(StjRequest *req, bool half);

// # Safety
// `req` must be a live request or null.
StjStatus stj_request_set_terms(StjRequest *req, uint64_t terms);

// # Safety
// `req` must be a live request or null.
StjStatus stj_request_set_acceleration(StjRequest *req, StjAcceleration acc);

// Working precision in bits, at least 64.
//
// # Safety
// `req` must be a live request or null.
StjStatus stj_request_set_bits(StjRequest *req, uint32_t bits);

// Compute the requested constant. On success `*out` receives a result
// handle to be released with [`stj_result_free`]; on failure it is set to
// null.
//
// # Safety
// `req` must be a live request, `out` a valid pointer.
StjStatus stj_compute(const StjRequest *req, StjResult **out);

// Release a result. Null is ignored.
//
// # Safety
// `res` must come from [`stj_compute`] and not be used afterwards.
void stj_result_free(StjResult *res);

// Full-precision decimal value; returns its length.
//
// # Safety
// `res` must be a live result; `buf` null or `len` bytes long.
size_t stj_result_value(const StjResult *res, char *buf, size_t len);

// Decimal error estimate; returns its length.
//
// # Safety
// `res` must be a live result; `buf` null or `len` bytes long.
size_t stj_result_error_estimate(const StjResult *res, char *buf, size_t len);

// # Safety
// `res` must be a live result or null (giving NaN).
double stj_result_value_f64(const StjResult *res);

// # Safety
// `res` must be a live result or null (giving NaN).
double stj_result_error_f64(const StjResult *res);

// # Safety
// `res` must be a live result or null (giving 0).
uint64_t stj_result_terms(const StjResult *res);

// # Safety
// `res` must be a live result or null (giving 0).
uint32_t stj_result_bits(const StjResult *res);

// Run a verification suite ("lemma1" … "fourier" or "all"). `failed` and
// `total` (either may be null) receive the check counts. Returns
// `VerificationFailed` when any check fails.
//
// # Safety
// `suite` must be a NUL-terminated string; `failed`/`total` null or valid.
StjStatus stj_verify(const char *suite,
                     double tol,
                     uint32_t bits,
                     uint32_t *failed,
                     uint32_t *total);

// Message of the last failure on this thread; returns its length.
//
// # Safety
// `buf` must be null or `len` bytes long.
size_t stj_last_error(char *buf, size_t len);

// Largest supported k.
uint32_t stj_j_max(void);

// Library version as a static NUL-terminated string.
const char *stj_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STIELTJES_H */
