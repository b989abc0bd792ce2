//! Exercise the C ABI the way a foreign caller would: raw pointers,
//! caller-owned buffers, status codes.

use std::ffi::{c_void, CStr, CString};
use std::ptr;

use fracroot_ffi::*;

fn builtin(name: &str) -> *mut FracrootProblem {
    let name = CString::new(name).unwrap();
    let mut problem: *mut FracrootProblem = ptr::null_mut();
    let status = unsafe { fracroot_problem_builtin(name.as_ptr(), &mut problem) };
    assert_eq!(status, FracrootStatus::Ok);
    assert!(!problem.is_null());
    problem
}

fn cx(re: f64, im: f64) -> FracrootComplex {
    FracrootComplex { re, im }
}

#[test]
fn version_and_status_names() {
    let version = unsafe { CStr::from_ptr(fracroot_version()) };
    assert!(!version.to_str().unwrap().is_empty());
    let name = unsafe { CStr::from_ptr(fracroot_status_name(FracrootStatus::UnknownProblem)) };
    assert_eq!(name.to_str().unwrap(), "unknown problem");
}

#[test]
fn builtin_lifecycle_and_residual() {
    let problem = builtin("example3");
    unsafe {
        assert_eq!(fracroot_problem_dim(problem), 3);
        let x = [cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)];
        let mut out = [cx(f64::NAN, f64::NAN); 3];
        let status = fracroot_problem_residual(problem, x.as_ptr(), out.as_mut_ptr());
        assert_eq!(status, FracrootStatus::Ok);
        assert_eq!(out[0].re, -18.0);
        assert_eq!(out[1].re, -24.0);
        assert_eq!(out[2].re, -30.0);
        fracroot_problem_free(problem);
    }
}

#[test]
fn unknown_name_and_null_arguments() {
    let name = CString::new("nope").unwrap();
    let mut problem: *mut FracrootProblem = ptr::null_mut();
    let status = unsafe { fracroot_problem_builtin(name.as_ptr(), &mut problem) };
    assert_eq!(status, FracrootStatus::UnknownProblem);
    assert!(problem.is_null());

    let status = unsafe { fracroot_problem_builtin(ptr::null(), &mut problem) };
    assert_eq!(status, FracrootStatus::NullPointer);
    unsafe {
        assert_eq!(fracroot_problem_dim(ptr::null()), 0);
        fracroot_problem_free(ptr::null_mut()); // no-op
    }
}

#[test]
fn solve_linear_benchmark() {
    let problem = builtin("example3");
    let config = FracrootSolveConfig {
        alpha: 0.90162,
        epsilon: 1e-3,
        tol_residual: 1e-4,
        tol_step: 1e-4,
        max_iter: 2000,
        divergence_bound: 1e10,
    };
    let x0 = [cx(0.64, 0.0), cx(0.64, 0.0), cx(0.64, 0.0)];
    let mut result = FracrootSolveResult {
        status: FracrootSolveStatus::NumericError,
        iterations: 0,
        residual_norm: f64::NAN,
        last_step_norm: f64::NAN,
    };
    let mut root = [cx(f64::NAN, f64::NAN); 3];
    let status = unsafe {
        fracroot_solve(
            problem,
            x0.as_ptr(),
            &config,
            &mut result,
            root.as_mut_ptr(),
        )
    };
    assert_eq!(status, FracrootStatus::Ok);
    assert_eq!(result.status, FracrootSolveStatus::Converged);
    assert!(result.residual_norm <= 1e-4);
    assert!(result.iterations > 0);
    let exact = [3762.0 / 630.0, 2448.0 / 630.0, 774.0 / 630.0];
    for (got, want) in root.iter().zip(exact) {
        assert!((got.re - want).abs() < 1e-3 && got.im.abs() < 1e-3);
    }
    unsafe { fracroot_problem_free(problem) };
}

#[test]
fn solve_with_default_config_and_bad_alpha() {
    let problem = builtin("example3");
    let x0 = [cx(0.64, 0.0), cx(0.64, 0.0), cx(0.64, 0.0)];
    let mut result = FracrootSolveResult {
        status: FracrootSolveStatus::NumericError,
        iterations: 0,
        residual_norm: f64::NAN,
        last_step_norm: f64::NAN,
    };
    let mut root = [cx(0.0, 0.0); 3];
    // null config: per-problem defaults with alpha = 0.5
    let status = unsafe {
        fracroot_solve(
            problem,
            x0.as_ptr(),
            ptr::null(),
            &mut result,
            root.as_mut_ptr(),
        )
    };
    assert_eq!(status, FracrootStatus::Ok);

    let bad = FracrootSolveConfig {
        alpha: 1.0, // integer order is not admissible
        epsilon: 1e-4,
        tol_residual: 1e-4,
        tol_step: 1e-4,
        max_iter: 100,
        divergence_bound: 1e10,
    };
    let status =
        unsafe { fracroot_solve(problem, x0.as_ptr(), &bad, &mut result, root.as_mut_ptr()) };
    assert_eq!(status, FracrootStatus::InvalidArgument);
    unsafe { fracroot_problem_free(problem) };
}

unsafe extern "C" fn quadratic_callback(
    _user: *mut c_void,
    x: *const FracrootComplex,
    fx: *mut FracrootComplex,
    dim: usize,
) {
    assert_eq!(dim, 1);
    let z = *x;
    // x^2 + 1
    (*fx).re = z.re * z.re - z.im * z.im + 1.0;
    (*fx).im = 2.0 * z.re * z.im;
}

#[test]
fn custom_problem_sweep_finds_both_imaginary_roots() {
    let mut problem: *mut FracrootProblem = ptr::null_mut();
    let status = unsafe {
        fracroot_problem_custom(1, Some(quadratic_callback), ptr::null_mut(), &mut problem)
    };
    assert_eq!(status, FracrootStatus::Ok);

    let config = FracrootSweepConfig {
        samples: 300,
        seed: 7,
        alpha_min: 0.0,
        alpha_max: 2.0,
        epsilon: 1e-3,
        tol_residual: 1e-4,
        max_iter: 2000,
        dedup_tol: 1e-3,
        real_threshold: 1e-6,
    };
    let x0 = [cx(1.0, 0.0)];
    let mut registry: *mut FracrootRegistry = ptr::null_mut();
    let status = unsafe { fracroot_sweep(problem, x0.as_ptr(), &config, &mut registry) };
    assert_eq!(status, FracrootStatus::Ok);

    let len = unsafe { fracroot_registry_len(registry) };
    assert!(len >= 2, "found {len} roots");
    let mut found_plus = false;
    let mut found_minus = false;
    for index in 0..len {
        let mut record = FracrootRootRecord {
            alpha: 0.0,
            step_norm: 0.0,
            residual_norm: 0.0,
            iterations: 0,
            is_real: false,
        };
        let mut root = [cx(0.0, 0.0)];
        let status =
            unsafe { fracroot_registry_get(registry, index, &mut record, root.as_mut_ptr()) };
        assert_eq!(status, FracrootStatus::Ok);
        assert!(record.residual_norm <= 1e-4);
        assert!(!record.is_real);
        if (root[0].re).abs() < 1e-4 && (root[0].im - 1.0).abs() < 1e-4 {
            found_plus = true;
        }
        if (root[0].re).abs() < 1e-4 && (root[0].im + 1.0).abs() < 1e-4 {
            found_minus = true;
        }
    }
    assert!(found_plus && found_minus);

    // out-of-range index
    let mut record = FracrootRootRecord {
        alpha: 0.0,
        step_norm: 0.0,
        residual_norm: 0.0,
        iterations: 0,
        is_real: false,
    };
    let mut root = [cx(0.0, 0.0)];
    let status = unsafe { fracroot_registry_get(registry, len, &mut record, root.as_mut_ptr()) };
    assert_eq!(status, FracrootStatus::InvalidArgument);

    unsafe {
        fracroot_registry_free(registry);
        fracroot_problem_free(problem);
    }
}

#[test]
fn gamma_values_and_pole() {
    let mut out = f64::NAN;
    assert_eq!(unsafe { fracroot_gamma(0.5, &mut out) }, FracrootStatus::Ok);
    assert!((out - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    assert_eq!(
        unsafe { fracroot_gamma(-1.0, &mut out) },
        FracrootStatus::MathDomain
    );
}

#[test]
fn receiver_coefficients_json_paths() {
    let mut a = [0.0f64; 9];
    let status = unsafe { fracroot_receiver_coefficients(ptr::null(), a.as_mut_ptr()) };
    assert_eq!(status, FracrootStatus::Ok);
    assert_eq!(a[0], 612000.0);
    assert_eq!(a[8], 273.15);

    let json = CString::new(r#"{"DNI": 1000.0}"#).unwrap();
    let status = unsafe { fracroot_receiver_coefficients(json.as_ptr(), a.as_mut_ptr()) };
    assert_eq!(status, FracrootStatus::Ok);
    assert_eq!(a[0], 680000.0);

    let bad = CString::new(r#"{"DNi": 1.0}"#).unwrap();
    let status = unsafe { fracroot_receiver_coefficients(bad.as_ptr(), a.as_mut_ptr()) };
    assert_eq!(status, FracrootStatus::InvalidJson);
}

#[test]
fn stability_probe_receiver() {
    let problem = builtin("receiver");
    let base = [53.8, 51.6, 22.1, 0.4, 0.1];
    let offsets = [-0.1, 0.0, 0.1];
    let mut norms = [f64::NAN; 3];
    let mut unstable = -1i32;
    let status = unsafe {
        fracroot_stability_probe(
            problem,
            base.as_ptr(),
            3,
            offsets.as_ptr(),
            offsets.len(),
            norms.as_mut_ptr(),
            &mut unstable,
        )
    };
    assert_eq!(status, FracrootStatus::Ok);
    for (got, want) in norms.iter().zip([3.332, 1.408, 6.105]) {
        assert!((got - want).abs() < 0.05);
    }
    assert_eq!(unstable, 1);

    // bad component index
    let status = unsafe {
        fracroot_stability_probe(
            problem,
            base.as_ptr(),
            9,
            offsets.as_ptr(),
            offsets.len(),
            norms.as_mut_ptr(),
            &mut unstable,
        )
    };
    assert_eq!(status, FracrootStatus::InvalidArgument);
    unsafe { fracroot_problem_free(problem) };
}

#[test]
fn receiver_json_problem_construction() {
    let json = CString::new(r#"{"T_air": 25.0}"#).unwrap();
    let mut problem: *mut FracrootProblem = ptr::null_mut();
    let status = unsafe { fracroot_problem_receiver_json(json.as_ptr(), &mut problem) };
    assert_eq!(status, FracrootStatus::Ok);
    unsafe {
        assert_eq!(fracroot_problem_dim(problem), 5);
        fracroot_problem_free(problem);
    }

    let bad = CString::new("not json").unwrap();
    let status = unsafe { fracroot_problem_receiver_json(bad.as_ptr(), &mut problem) };
    assert_eq!(status, FracrootStatus::InvalidJson);
}
