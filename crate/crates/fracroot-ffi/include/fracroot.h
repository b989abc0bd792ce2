/* C interface for the fracroot solver library. */

#pragma once

/* Generated with cbindgen:0.29.4 */

/* Generated by cbindgen from crates/fracroot-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every API call.
typedef enum FracrootStatus {
  FRACROOT_STATUS_OK = 0,
  // A required pointer argument was null.
  FRACROOT_STATUS_NULL_POINTER,
  // A value argument was out of range (order, epsilon, dimension, index).
  FRACROOT_STATUS_INVALID_ARGUMENT,
  // The problem name is not a built-in.
  FRACROOT_STATUS_UNKNOWN_PROBLEM,
  // Parameter JSON failed to parse.
  FRACROOT_STATUS_INVALID_JSON,
  // Gamma pole or zero base: the operation has no value there.
  FRACROOT_STATUS_MATH_DOMAIN,
  // The library panicked; state is unchanged.
  FRACROOT_STATUS_INTERNAL,
} FracrootStatus;

// Solver termination reason, mirrored into [`FracrootSolveResult`].
typedef enum FracrootSolveStatus {
  FRACROOT_SOLVE_STATUS_CONVERGED = 0,
  FRACROOT_SOLVE_STATUS_MAX_ITER_EXCEEDED,
  FRACROOT_SOLVE_STATUS_DIVERGED,
  FRACROOT_SOLVE_STATUS_NUMERIC_ERROR,
} FracrootSolveStatus;

// Opaque problem handle.
typedef struct FracrootProblem FracrootProblem;

// Opaque sweep result handle.
typedef struct FracrootRegistry FracrootRegistry;

// A complex scalar.
typedef struct FracrootComplex {
  double re;
  double im;
} FracrootComplex;

// Residual callback for custom problems: read `dim` complex values from
// `x`, write `dim` complex values to `fx`. Must be thread-safe; sweeps
// invoke it from parallel workers.
typedef void (*FracrootResidualFn)(void *user_data,
                                   const struct FracrootComplex *x,
                                   struct FracrootComplex *fx,
                                   size_t dim);

// Solver settings. Pass null to [`fracroot_solve`] for the problem's
// defaults with `alpha = 0.5`.
typedef struct FracrootSolveConfig {
  // Fractional order in [0, 2], at least 1e-4 away from 0, 1, 2.
  double alpha;
  double epsilon;
  double tol_residual;
  double tol_step;
  size_t max_iter;
  double divergence_bound;
} FracrootSolveConfig;

// Scalar outcome of a solve; the root itself is written to the caller's
// buffer when the status is converged.
typedef struct FracrootSolveResult {
  enum FracrootSolveStatus status;
  size_t iterations;
  // NaN when no residual was evaluated.
  double residual_norm;
  // NaN when no step completed.
  double last_step_norm;
} FracrootSolveResult;

// Sweep settings for [`fracroot_sweep`].
typedef struct FracrootSweepConfig {
  size_t samples;
  uint64_t seed;
  // Order window inside [0, 2]; use 0 and 2 for the full domain.
  double alpha_min;
  double alpha_max;
  double epsilon;
  double tol_residual;
  size_t max_iter;
  double dedup_tol;
  double real_threshold;
} FracrootSweepConfig;

// Scalar fields of one registry record; root components are written
// separately.
typedef struct FracrootRootRecord {
  double alpha;
  double step_norm;
  double residual_norm;
  size_t iterations;
  bool is_real;
} FracrootRootRecord;

// Library version as a static NUL-terminated string.
const char *fracroot_version(void);

// Short description of a status code.
const char *fracroot_status_name(enum FracrootStatus status);

// Create a built-in problem by name: `example1`, `example2`, `example3`,
// or `receiver` (default parameters).
//
// # Safety
// `name` must point to a NUL-terminated string and `out` must be a valid
// pointer. On success `*out` owns the problem; release it with
// [`fracroot_problem_free`].
enum FracrootStatus fracroot_problem_builtin(const char *name, struct FracrootProblem **out);

// Create the receiver problem from a parameter JSON document; pass null
// for the default parameters. Missing keys take their defaults.
//
// # Safety
// `json`, when non-null, must be NUL-terminated; `out` must be valid.
enum FracrootStatus fracroot_problem_receiver_json(const char *json, struct FracrootProblem **out);

// Register a custom problem from a residual callback.
//
// # Safety
// `f` must be a thread-safe function reading and writing `dim` complex
// values; `user_data` must stay valid for the problem's lifetime.
enum FracrootStatus fracroot_problem_custom(size_t dim,
                                            FracrootResidualFn f,
                                            void *user_data,
                                            struct FracrootProblem **out);

// Release a problem handle. Null is ignored.
//
// # Safety
// `problem` must have come from a `fracroot_problem_*` constructor and
// must not be used afterwards.
void fracroot_problem_free(struct FracrootProblem *problem);

// Dimension of a problem, or 0 for null.
//
// # Safety
// `problem` must be a live handle or null.
size_t fracroot_problem_dim(const struct FracrootProblem *problem);

// Evaluate the residual at `x` (length `dim`) into `out` (length `dim`).
//
// # Safety
// Both buffers must hold at least `dim` elements.
enum FracrootStatus fracroot_problem_residual(const struct FracrootProblem *problem,
                                              const struct FracrootComplex *x,
                                              struct FracrootComplex *out);

// Run the fractional pseudo-Newton solver.
//
// `x0` holds `dim` start values; on a converged status the root is written
// to `root_out` (`dim` elements). `config` may be null for defaults.
//
// # Safety
// `x0` and `root_out` must hold at least `dim` elements; `result` must be
// a valid pointer.
enum FracrootStatus fracroot_solve(const struct FracrootProblem *problem,
                                   const struct FracrootComplex *x0,
                                   const struct FracrootSolveConfig *config,
                                   struct FracrootSolveResult *result,
                                   struct FracrootComplex *root_out);

// Sweep the derivative order and collect distinct roots into a registry
// handle; release it with [`fracroot_registry_free`].
//
// # Safety
// `x0` must hold `dim` elements; `config` and `out` must be valid.
enum FracrootStatus fracroot_sweep(const struct FracrootProblem *problem,
                                   const struct FracrootComplex *x0,
                                   const struct FracrootSweepConfig *config,
                                   struct FracrootRegistry **out);

// Release a registry handle. Null is ignored.
//
// # Safety
// `registry` must have come from [`fracroot_sweep`].
void fracroot_registry_free(struct FracrootRegistry *registry);

// Number of distinct roots in a registry, or 0 for null.
//
// # Safety
// `registry` must be a live handle or null.
size_t fracroot_registry_len(const struct FracrootRegistry *registry);

// Copy record `index` out of the registry: scalar fields into `record`,
// root components into `root_out` (`dim` elements).
//
// # Safety
// `record` must be valid and `root_out` must hold `dim` elements.
enum FracrootStatus fracroot_registry_get(const struct FracrootRegistry *registry,
                                          size_t index,
                                          struct FracrootRootRecord *record,
                                          struct FracrootComplex *root_out);

// Real gamma function; poles report a math domain error.
//
// # Safety
// `out` must be a valid pointer.
enum FracrootStatus fracroot_gamma(double x, double *out);

// Compute the receiver coefficients `a1..a9` into `out[9]`, optionally
// from a parameter JSON document (null for defaults).
//
// # Safety
// `out` must hold nine doubles; `json`, when non-null, must be
// NUL-terminated.
enum FracrootStatus fracroot_receiver_coefficients(const char *json, double *out);

// Residual norms at `base + offset * e_component` for each offset, plus an
// instability flag (1 when some sub-unit offset moves the norm by one or
// more).
//
// # Safety
// `base` must hold `dim` doubles, `offsets` must hold `n_offsets` doubles,
// `norms_out` must hold `n_offsets` doubles, and `unstable_out` must be
// valid. `component` is 0-based.
enum FracrootStatus fracroot_stability_probe(const struct FracrootProblem *problem,
                                             const double *base,
                                             size_t component,
                                             const double *offsets,
                                             size_t n_offsets,
                                             double *norms_out,
                                             int32_t *unstable_out);
