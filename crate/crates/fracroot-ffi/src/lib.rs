//! C ABI for the fracroot solver library.
//!
//! Problems and sweep registries travel across the boundary as opaque
//! handles; every entry point returns a [`FracrootStatus`] code and writes
//! results through caller-provided buffers. Complex values cross as
//! [`FracrootComplex`] pairs. The header is generated into
//! `include/fracroot.h` at build time.

use std::ffi::{c_char, c_void, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use fracroot::complex::ComplexVector;
use fracroot::fracderiv::FracOrder;
use fracroot::gamma::gamma_real;
use fracroot::probing::{stability_probe, Stability};
use fracroot::problems::{self, ProblemDef, ReceiverParams};
use fracroot::solver::{solve, SolveStatus, SolverConfig};
use fracroot::sweep::{alpha_sweep, RootRecord, SweepPlan};

/// Result code of every API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FracrootStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer,
    /// A value argument was out of range (order, epsilon, dimension, index).
    InvalidArgument,
    /// The problem name is not a built-in.
    UnknownProblem,
    /// Parameter JSON failed to parse.
    InvalidJson,
    /// Gamma pole or zero base: the operation has no value there.
    MathDomain,
    /// The library panicked; state is unchanged.
    Internal,
}

/// Solver termination reason, mirrored into [`FracrootSolveResult`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FracrootSolveStatus {
    Converged = 0,
    MaxIterExceeded,
    Diverged,
    NumericError,
}

impl From<SolveStatus> for FracrootSolveStatus {
    fn from(s: SolveStatus) -> Self {
        match s {
            SolveStatus::Converged => Self::Converged,
            SolveStatus::MaxIterExceeded => Self::MaxIterExceeded,
            SolveStatus::Diverged => Self::Diverged,
            SolveStatus::NumericError => Self::NumericError,
        }
    }
}

/// A complex scalar.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FracrootComplex {
    pub re: f64,
    pub im: f64,
}

/// Solver settings. Pass null to [`fracroot_solve`] for the problem's
/// defaults with `alpha = 0.5`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FracrootSolveConfig {
    /// Fractional order in [0, 2], at least 1e-4 away from 0, 1, 2.
    pub alpha: f64,
    pub epsilon: f64,
    pub tol_residual: f64,
    pub tol_step: f64,
    pub max_iter: usize,
    pub divergence_bound: f64,
}

/// Scalar outcome of a solve; the root itself is written to the caller's
/// buffer when the status is converged.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FracrootSolveResult {
    pub status: FracrootSolveStatus,
    pub iterations: usize,
    /// NaN when no residual was evaluated.
    pub residual_norm: f64,
    /// NaN when no step completed.
    pub last_step_norm: f64,
}

/// Sweep settings for [`fracroot_sweep`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FracrootSweepConfig {
    pub samples: usize,
    pub seed: u64,
    /// Order window inside [0, 2]; use 0 and 2 for the full domain.
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub epsilon: f64,
    pub tol_residual: f64,
    pub max_iter: usize,
    pub dedup_tol: f64,
    pub real_threshold: f64,
}

/// Scalar fields of one registry record; root components are written
/// separately.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FracrootRootRecord {
    pub alpha: f64,
    pub step_norm: f64,
    pub residual_norm: f64,
    pub iterations: usize,
    pub is_real: bool,
}

/// Residual callback for custom problems: read `dim` complex values from
/// `x`, write `dim` complex values to `fx`. Must be thread-safe; sweeps
/// invoke it from parallel workers.
pub type FracrootResidualFn = Option<
    unsafe extern "C" fn(
        user_data: *mut c_void,
        x: *const FracrootComplex,
        fx: *mut FracrootComplex,
        dim: usize,
    ),
>;

/// Opaque problem handle.
pub struct FracrootProblem {
    inner: ProblemDef,
}

/// Opaque sweep result handle.
pub struct FracrootRegistry {
    dim: usize,
    records: Vec<RootRecord>,
}

struct CallbackData {
    f: unsafe extern "C" fn(*mut c_void, *const FracrootComplex, *mut FracrootComplex, usize),
    user_data: *mut c_void,
}

// callers promise thread-safe callbacks; see FracrootResidualFn
unsafe impl Send for CallbackData {}
unsafe impl Sync for CallbackData {}

impl CallbackData {
    fn eval(&self, x: &[num_complex::Complex64], fx: &mut [num_complex::Complex64]) {
        // Complex64 and FracrootComplex share the two-f64 layout
        unsafe {
            (self.f)(
                self.user_data,
                x.as_ptr() as *const FracrootComplex,
                fx.as_mut_ptr() as *mut FracrootComplex,
                x.len(),
            );
        }
    }
}

fn guard(f: impl FnOnce() -> FracrootStatus) -> FracrootStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => FracrootStatus::Internal,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fracroot_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Short description of a status code.
#[no_mangle]
pub extern "C" fn fracroot_status_name(status: FracrootStatus) -> *const c_char {
    let s: &'static str = match status {
        FracrootStatus::Ok => "ok\0",
        FracrootStatus::NullPointer => "null pointer\0",
        FracrootStatus::InvalidArgument => "invalid argument\0",
        FracrootStatus::UnknownProblem => "unknown problem\0",
        FracrootStatus::InvalidJson => "invalid json\0",
        FracrootStatus::MathDomain => "math domain error\0",
        FracrootStatus::Internal => "internal error\0",
    };
    s.as_ptr() as *const c_char
}

/// Create a built-in problem by name: `example1`, `example2`, `example3`,
/// or `receiver` (default parameters).
///
/// # Safety
/// `name` must point to a NUL-terminated string and `out` must be a valid
/// pointer. On success `*out` owns the problem; release it with
/// [`fracroot_problem_free`].
#[no_mangle]
pub unsafe extern "C" fn fracroot_problem_builtin(
    name: *const c_char,
    out: *mut *mut FracrootProblem,
) -> FracrootStatus {
    if name.is_null() || out.is_null() {
        return FracrootStatus::NullPointer;
    }
    let Ok(name) = CStr::from_ptr(name).to_str() else {
        return FracrootStatus::InvalidArgument;
    };
    guard(|| match problems::builtin(name) {
        Some(problem) => {
            *out = Box::into_raw(Box::new(FracrootProblem { inner: problem }));
            FracrootStatus::Ok
        }
        None => FracrootStatus::UnknownProblem,
    })
}

/// Create the receiver problem from a parameter JSON document; pass null
/// for the default parameters. Missing keys take their defaults.
///
/// # Safety
/// `json`, when non-null, must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fracroot_problem_receiver_json(
    json: *const c_char,
    out: *mut *mut FracrootProblem,
) -> FracrootStatus {
    if out.is_null() {
        return FracrootStatus::NullPointer;
    }
    let params = if json.is_null() {
        ReceiverParams::default()
    } else {
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return FracrootStatus::InvalidArgument;
        };
        match ReceiverParams::from_json(text) {
            Ok(p) => p,
            Err(_) => return FracrootStatus::InvalidJson,
        }
    };
    guard(|| {
        *out = Box::into_raw(Box::new(FracrootProblem {
            inner: problems::receiver_problem(&params),
        }));
        FracrootStatus::Ok
    })
}

/// Register a custom problem from a residual callback.
///
/// # Safety
/// `f` must be a thread-safe function reading and writing `dim` complex
/// values; `user_data` must stay valid for the problem's lifetime.
#[no_mangle]
pub unsafe extern "C" fn fracroot_problem_custom(
    dim: usize,
    f: FracrootResidualFn,
    user_data: *mut c_void,
    out: *mut *mut FracrootProblem,
) -> FracrootStatus {
    if out.is_null() {
        return FracrootStatus::NullPointer;
    }
    let Some(f) = f else {
        return FracrootStatus::NullPointer;
    };
    if dim == 0 {
        return FracrootStatus::InvalidArgument;
    }
    let data = CallbackData { f, user_data };
    let evaluator =
        move |x: &[num_complex::Complex64], fx: &mut [num_complex::Complex64]| data.eval(x, fx);
    guard(move || {
        *out = Box::into_raw(Box::new(FracrootProblem {
            inner: ProblemDef::new("custom", dim, evaluator),
        }));
        FracrootStatus::Ok
    })
}

/// Release a problem handle. Null is ignored.
///
/// # Safety
/// `problem` must have come from a `fracroot_problem_*` constructor and
/// must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fracroot_problem_free(problem: *mut FracrootProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Dimension of a problem, or 0 for null.
///
/// # Safety
/// `problem` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn fracroot_problem_dim(problem: *const FracrootProblem) -> usize {
    problem.as_ref().map_or(0, |p| p.inner.dim())
}

/// Evaluate the residual at `x` (length `dim`) into `out` (length `dim`).
///
/// # Safety
/// Both buffers must hold at least `dim` elements.
#[no_mangle]
pub unsafe extern "C" fn fracroot_problem_residual(
    problem: *const FracrootProblem,
    x: *const FracrootComplex,
    out: *mut FracrootComplex,
) -> FracrootStatus {
    let Some(problem) = problem.as_ref() else {
        return FracrootStatus::NullPointer;
    };
    if x.is_null() || out.is_null() {
        return FracrootStatus::NullPointer;
    }
    let dim = problem.inner.dim();
    guard(|| {
        let xs = std::slice::from_raw_parts(x as *const num_complex::Complex64, dim);
        let outs = std::slice::from_raw_parts_mut(out as *mut num_complex::Complex64, dim);
        problem.inner.residual_into(xs, outs);
        FracrootStatus::Ok
    })
}

fn solver_config_from(
    problem: &ProblemDef,
    cfg: Option<&FracrootSolveConfig>,
) -> Option<SolverConfig> {
    match cfg {
        Some(cfg) => {
            let alpha = FracOrder::new(cfg.alpha).ok()?;
            let mut config = SolverConfig::new(alpha);
            config.epsilon = cfg.epsilon;
            config.tol_residual = cfg.tol_residual;
            config.tol_step = cfg.tol_step;
            config.max_iter = cfg.max_iter;
            config.divergence_bound = cfg.divergence_bound;
            config.validate().ok()?;
            Some(config)
        }
        None => {
            let mut config = SolverConfig::new(FracOrder::new(0.5).expect("valid order"));
            config.epsilon = problem.default_epsilon();
            config.tol_residual = problem.default_tol_residual();
            Some(config)
        }
    }
}

/// Run the fractional pseudo-Newton solver.
///
/// `x0` holds `dim` start values; on a converged status the root is written
/// to `root_out` (`dim` elements). `config` may be null for defaults.
///
/// # Safety
/// `x0` and `root_out` must hold at least `dim` elements; `result` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fracroot_solve(
    problem: *const FracrootProblem,
    x0: *const FracrootComplex,
    config: *const FracrootSolveConfig,
    result: *mut FracrootSolveResult,
    root_out: *mut FracrootComplex,
) -> FracrootStatus {
    let Some(problem) = problem.as_ref() else {
        return FracrootStatus::NullPointer;
    };
    if x0.is_null() || result.is_null() || root_out.is_null() {
        return FracrootStatus::NullPointer;
    }
    let Some(config) = solver_config_from(&problem.inner, config.as_ref()) else {
        return FracrootStatus::InvalidArgument;
    };
    let dim = problem.inner.dim();
    guard(|| {
        let xs = std::slice::from_raw_parts(x0 as *const num_complex::Complex64, dim);
        let start = ComplexVector::new(xs.to_vec());
        match solve(&problem.inner, &start, &config, false) {
            Ok(outcome) => {
                (*result).status = outcome.status.into();
                (*result).iterations = outcome.iterations;
                (*result).residual_norm = outcome.residual_norm.unwrap_or(f64::NAN);
                (*result).last_step_norm = outcome.last_step_norm.unwrap_or(f64::NAN);
                if let Some(root) = outcome.root {
                    let out = std::slice::from_raw_parts_mut(
                        root_out as *mut num_complex::Complex64,
                        dim,
                    );
                    out.copy_from_slice(root.as_slice());
                }
                FracrootStatus::Ok
            }
            Err(_) => FracrootStatus::InvalidArgument,
        }
    })
}

/// Sweep the derivative order and collect distinct roots into a registry
/// handle; release it with [`fracroot_registry_free`].
///
/// # Safety
/// `x0` must hold `dim` elements; `config` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fracroot_sweep(
    problem: *const FracrootProblem,
    x0: *const FracrootComplex,
    config: *const FracrootSweepConfig,
    out: *mut *mut FracrootRegistry,
) -> FracrootStatus {
    let Some(problem) = problem.as_ref() else {
        return FracrootStatus::NullPointer;
    };
    let Some(cfg) = config.as_ref() else {
        return FracrootStatus::NullPointer;
    };
    if x0.is_null() || out.is_null() {
        return FracrootStatus::NullPointer;
    }
    let dim = problem.inner.dim();
    guard(|| {
        let xs = std::slice::from_raw_parts(x0 as *const num_complex::Complex64, dim);
        let mut base = SolverConfig::new(FracOrder::new(0.5).expect("valid order"));
        base.epsilon = cfg.epsilon;
        base.tol_residual = cfg.tol_residual;
        base.max_iter = cfg.max_iter;
        let mut plan = SweepPlan::new(base, ComplexVector::new(xs.to_vec()), cfg.samples, cfg.seed);
        plan.alpha_lo = cfg.alpha_min;
        plan.alpha_hi = cfg.alpha_max;
        plan.dedup_tol = cfg.dedup_tol;
        plan.real_threshold = cfg.real_threshold;
        match alpha_sweep(&problem.inner, &plan) {
            Ok(report) => {
                *out = Box::into_raw(Box::new(FracrootRegistry {
                    dim,
                    records: report.registry.records().to_vec(),
                }));
                FracrootStatus::Ok
            }
            Err(_) => FracrootStatus::InvalidArgument,
        }
    })
}

/// Release a registry handle. Null is ignored.
///
/// # Safety
/// `registry` must have come from [`fracroot_sweep`].
#[no_mangle]
pub unsafe extern "C" fn fracroot_registry_free(registry: *mut FracrootRegistry) {
    if !registry.is_null() {
        drop(Box::from_raw(registry));
    }
}

/// Number of distinct roots in a registry, or 0 for null.
///
/// # Safety
/// `registry` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn fracroot_registry_len(registry: *const FracrootRegistry) -> usize {
    registry.as_ref().map_or(0, |r| r.records.len())
}

/// Copy record `index` out of the registry: scalar fields into `record`,
/// root components into `root_out` (`dim` elements).
///
/// # Safety
/// `record` must be valid and `root_out` must hold `dim` elements.
#[no_mangle]
pub unsafe extern "C" fn fracroot_registry_get(
    registry: *const FracrootRegistry,
    index: usize,
    record: *mut FracrootRootRecord,
    root_out: *mut FracrootComplex,
) -> FracrootStatus {
    let Some(registry) = registry.as_ref() else {
        return FracrootStatus::NullPointer;
    };
    if record.is_null() || root_out.is_null() {
        return FracrootStatus::NullPointer;
    }
    let Some(rec) = registry.records.get(index) else {
        return FracrootStatus::InvalidArgument;
    };
    (*record).alpha = rec.alpha_used;
    (*record).step_norm = rec.last_step_norm;
    (*record).residual_norm = rec.residual_norm;
    (*record).iterations = rec.iterations;
    (*record).is_real = rec.is_real;
    let out = std::slice::from_raw_parts_mut(root_out as *mut num_complex::Complex64, registry.dim);
    out.copy_from_slice(rec.root.as_slice());
    FracrootStatus::Ok
}

/// Real gamma function; poles report a math domain error.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fracroot_gamma(x: f64, out: *mut f64) -> FracrootStatus {
    if out.is_null() {
        return FracrootStatus::NullPointer;
    }
    match gamma_real(x) {
        Ok(v) => {
            *out = v;
            FracrootStatus::Ok
        }
        Err(_) => FracrootStatus::MathDomain,
    }
}

/// Compute the receiver coefficients `a1..a9` into `out[9]`, optionally
/// from a parameter JSON document (null for defaults).
///
/// # Safety
/// `out` must hold nine doubles; `json`, when non-null, must be
/// NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn fracroot_receiver_coefficients(
    json: *const c_char,
    out: *mut f64,
) -> FracrootStatus {
    if out.is_null() {
        return FracrootStatus::NullPointer;
    }
    let params = if json.is_null() {
        ReceiverParams::default()
    } else {
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return FracrootStatus::InvalidArgument;
        };
        match ReceiverParams::from_json(text) {
            Ok(p) => p,
            Err(_) => return FracrootStatus::InvalidJson,
        }
    };
    let a = problems::receiver_coefficients(&params).as_array();
    std::slice::from_raw_parts_mut(out, 9).copy_from_slice(&a);
    FracrootStatus::Ok
}

/// Residual norms at `base + offset * e_component` for each offset, plus an
/// instability flag (1 when some sub-unit offset moves the norm by one or
/// more).
///
/// # Safety
/// `base` must hold `dim` doubles, `offsets` must hold `n_offsets` doubles,
/// `norms_out` must hold `n_offsets` doubles, and `unstable_out` must be
/// valid. `component` is 0-based.
#[no_mangle]
pub unsafe extern "C" fn fracroot_stability_probe(
    problem: *const FracrootProblem,
    base: *const f64,
    component: usize,
    offsets: *const f64,
    n_offsets: usize,
    norms_out: *mut f64,
    unstable_out: *mut i32,
) -> FracrootStatus {
    let Some(problem) = problem.as_ref() else {
        return FracrootStatus::NullPointer;
    };
    if base.is_null()
        || (offsets.is_null() && n_offsets > 0)
        || norms_out.is_null()
        || unstable_out.is_null()
    {
        return FracrootStatus::NullPointer;
    }
    let dim = problem.inner.dim();
    guard(|| {
        let base = std::slice::from_raw_parts(base, dim);
        let offsets = if n_offsets == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(offsets, n_offsets)
        };
        match stability_probe(&problem.inner, base, component, offsets) {
            Ok(report) => {
                std::slice::from_raw_parts_mut(norms_out, n_offsets)
                    .copy_from_slice(&report.residual_norms);
                *unstable_out = (report.classification == Stability::Unstable) as i32;
                FracrootStatus::Ok
            }
            Err(_) => FracrootStatus::InvalidArgument,
        }
    })
}
