#ifndef QLICH_H
#define QLICH_H

/* Generated by cbindgen from the qlich-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum QlichStatus {
  // Success.
  QLICH_STATUS_OK = 0,
  // A required pointer argument was null.
  QLICH_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  QLICH_STATUS_INVALID_UTF8 = 2,
  // Input text failed to parse; see the message output when available.
  QLICH_STATUS_PARSE_ERROR = 3,
  // Arguments were structurally invalid (dimension, order, indices).
  QLICH_STATUS_INVALID_ARGUMENT = 4,
  // The engine panicked; this indicates a bug.
  QLICH_STATUS_INTERNAL = 5,
} QlichStatus;

// Opaque handle to an antisymmetric polynomial tensor (order 2 = Poisson).
typedef struct QlichTensor QlichTensor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Allocate a tensor handle of the given dimension and order (arity).
// Returns null when the parameters are out of range.
struct QlichTensor *qlich_tensor_new(uint8_t dimension, uint8_t order);

// Set one component from an entry string `P[i,j,...] = <polynomial>`.
enum QlichStatus qlich_tensor_set_entry(struct QlichTensor *tensor, const char *entry);

// Release a tensor handle. Null is ignored.
void qlich_tensor_free(struct QlichTensor *tensor);

uint8_t qlich_tensor_dimension(const struct QlichTensor *tensor);

uint8_t qlich_tensor_order(const struct QlichTensor *tensor);

// Evaluate the Jacobi identity of an order-2 tensor; `out_pass` receives the
// verdict.
enum QlichStatus qlich_check_jacobi(const struct QlichTensor *tensor, bool *out_pass);

// Render the integrated quantum Lichnerowicz density of an order-2 tensor
// under the named convention ("section2" or "section4").
enum QlichStatus qlich_operator_density(const struct QlichTensor *tensor,
                                        const char *convention,
                                        char **out_density);

// Apply the ħ¹ page of the operator of an order-2 tensor to a state written
// in the canonical term syntax; the rendered image is returned.
enum QlichStatus qlich_apply_hbar1(const struct QlichTensor *tensor,
                                   const char *convention,
                                   const char *state,
                                   char **out_image);

// Run a full CLI-style invocation. `argv` holds `argc` UTF-8 arguments
// (without the program name). The rendered report (text or JSON per the
// `--format` flag) is returned through `out_report` and the process-style
// exit code (0 pass, 1 check failure, 2 usage) through `out_exit`. Usage
// failures return `QLICH_STATUS_PARSE_ERROR` with the message in
// `out_report`.
enum QlichStatus qlich_run(int argc, const char *const *argv, char **out_report, int *out_exit);

// Release a string allocated by this library. Null is ignored.
void qlich_string_free(char *text);

// Static library version string; do not free.
const char *qlich_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QLICH_H */
