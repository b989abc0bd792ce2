//! Iteration engines: the fractional pseudo-Newton method, the parallel
//! chord baseline, and an empirical convergence-order estimator.
//!
//! Both engines share one fixed-point driver with the same stopping rules:
//! converge when the residual norm drops to `tol_residual`, give up at
//! `max_iter`, and flag divergence when the iterate norm passes
//! `divergence_bound` (checked before any further arithmetic touches the
//! runaway iterate). Step norms are recorded for reporting; they do not stop
//! the iteration.

use num_complex::Complex64;

use crate::complex::{cpow, norm2_slice, ComplexVector};
use crate::error::{Error, Result};
use crate::fracderiv::{pseudo_jacobian_diag, FracOrder};
use crate::gamma::gamma_real;
use crate::problems::ProblemDef;

/// Solver settings. Fields are public; [`solve`] validates them.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Fractional derivative order of the pseudo-Jacobian.
    pub alpha: FracOrder,
    /// Diagonal regularizer, in `(0, 1)`.
    pub epsilon: f64,
    /// Residual norm at which the iteration counts as converged.
    pub tol_residual: f64,
    /// Step-size display threshold; recorded in traces, not a stopping rule.
    pub tol_step: f64,
    /// Iteration cap.
    pub max_iter: usize,
    /// Iterate norm beyond which the run is declared divergent.
    pub divergence_bound: f64,
}

impl SolverConfig {
    pub fn new(alpha: FracOrder) -> Self {
        Self {
            alpha,
            epsilon: 1e-4,
            tol_residual: 1e-4,
            tol_step: 1e-4,
            max_iter: 2000,
            divergence_bound: 1e10,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon = {} must lie in (0, 1)",
                self.epsilon
            )));
        }
        for (name, v) in [
            ("tol_residual", self.tol_residual),
            ("tol_step", self.tol_step),
            ("divergence_bound", self.divergence_bound),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "{name} = {v} must be positive"
                )));
            }
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be >= 1".into()));
        }
        Ok(())
    }
}

/// Why a solve stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    MaxIterExceeded,
    Diverged,
    NumericError,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Converged => "converged",
            SolveStatus::MaxIterExceeded => "max_iter_exceeded",
            SolveStatus::Diverged => "diverged",
            SolveStatus::NumericError => "numeric_error",
        }
    }
}

/// Per-iteration history of a solve.
///
/// `iterates[0]` is the start point; `step_norms[i]` and `residual_norms[i]`
/// belong to `iterates[i + 1]`, so both lists hold one entry per completed
/// iteration. A run that stops on divergence or a numeric error does not
/// record the offending iterate.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub iterates: Vec<ComplexVector>,
    pub step_norms: Vec<f64>,
    pub residual_norms: Vec<f64>,
}

impl IterationTrace {
    fn new(x0: ComplexVector) -> Self {
        Self {
            iterates: vec![x0],
            step_norms: Vec::new(),
            residual_norms: Vec::new(),
        }
    }

    fn push(&mut self, x: ComplexVector, step: f64, residual: f64) {
        self.iterates.push(x);
        self.step_norms.push(step);
        self.residual_norms.push(residual);
    }
}

/// Result of a solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Present exactly when `status == Converged`.
    pub root: Option<ComplexVector>,
    /// Steps taken.
    pub iterations: usize,
    /// Residual norm at the last iterate that was evaluated.
    pub residual_norm: Option<f64>,
    /// Norm of the last completed step.
    pub last_step_norm: Option<f64>,
    pub trace: Option<IterationTrace>,
}

/// One fractional pseudo-Newton update: `x - P(x) f(x)` with the diagonal
/// pseudo-Jacobian `P`.
pub fn pseudo_newton_step(
    problem: &ProblemDef,
    x: &ComplexVector,
    alpha: FracOrder,
    epsilon: f64,
) -> Result<ComplexVector> {
    let fx = problem.residual(x)?;
    let p = pseudo_jacobian_diag(x, alpha, epsilon)?;
    let next: Vec<Complex64> = x
        .iter()
        .zip(p.entries.iter())
        .zip(fx.iter())
        .map(|((&xk, &pk), &fk)| xk - pk * fk)
        .collect();
    Ok(ComplexVector::new(next))
}

/// One parallel chord update: `x - f(x)/m` componentwise (fixed slope `m`).
pub fn parallel_chord_step(
    problem: &ProblemDef,
    x: &ComplexVector,
    m: f64,
) -> Result<ComplexVector> {
    if m == 0.0 || !m.is_finite() {
        return Err(Error::ZeroSlope);
    }
    let fx = problem.residual(x)?;
    let next: Vec<Complex64> = x
        .iter()
        .zip(fx.iter())
        .map(|(&xk, &fk)| xk - fk / m)
        .collect();
    Ok(ComplexVector::new(next))
}

/// Run the fractional pseudo-Newton iteration from `x0`.
pub fn solve(
    problem: &ProblemDef,
    x0: &ComplexVector,
    config: &SolverConfig,
    keep_trace: bool,
) -> Result<SolveOutcome> {
    config.validate()?;
    let alpha = config.alpha.value();
    // gamma(1 - alpha) is constant across the run
    let inv_gamma = 1.0 / gamma_real(1.0 - alpha)?;
    let epsilon = config.epsilon;
    run_fixed_point(problem, x0, config, keep_trace, move |x, fx, out| {
        for ((&xk, &fk), o) in x.iter().zip(fx).zip(out.iter_mut()) {
            let entry = if xk.re == 0.0 && xk.im == 0.0 {
                Complex64::new(epsilon, 0.0)
            } else {
                // principal-branch x^(-alpha): never errors for nonzero base
                inv_gamma * cpow(xk, -alpha).expect("nonzero base") + epsilon
            };
            *o = xk - entry * fk;
        }
    })
}

/// Run the parallel chord iteration from `x0` with slope `m`, using the
/// stopping rules of `config` (its `alpha` and `epsilon` are ignored).
pub fn solve_chord(
    problem: &ProblemDef,
    x0: &ComplexVector,
    m: f64,
    config: &SolverConfig,
    keep_trace: bool,
) -> Result<SolveOutcome> {
    config.validate()?;
    if m == 0.0 || !m.is_finite() {
        return Err(Error::ZeroSlope);
    }
    run_fixed_point(problem, x0, config, keep_trace, move |x, fx, out| {
        for ((&xk, &fk), o) in x.iter().zip(fx).zip(out.iter_mut()) {
            *o = xk - fk / m;
        }
    })
}

fn run_fixed_point(
    problem: &ProblemDef,
    x0: &ComplexVector,
    config: &SolverConfig,
    keep_trace: bool,
    step: impl Fn(&[Complex64], &[Complex64], &mut [Complex64]),
) -> Result<SolveOutcome> {
    if x0.dim() != problem.dim() {
        return Err(Error::DimensionMismatch {
            expected: problem.dim(),
            got: x0.dim(),
        });
    }
    let dim = problem.dim();
    let mut x = x0.as_slice().to_vec();
    let mut fx = vec![Complex64::new(0.0, 0.0); dim];
    let mut next = vec![Complex64::new(0.0, 0.0); dim];
    let mut trace = keep_trace.then(|| IterationTrace::new(x0.clone()));
    let mut iterations = 0usize;
    let mut last_residual: Option<f64> = None;
    let mut last_step: Option<f64> = None;
    let mut pending_step: Option<f64> = None;

    let finish = |status, root, iterations, residual, step_norm, trace| {
        Ok(SolveOutcome {
            status,
            root,
            iterations,
            residual_norm: residual,
            last_step_norm: step_norm,
            trace,
        })
    };

    loop {
        // guard before any arithmetic touches a runaway iterate
        if norm2_slice(&x) > config.divergence_bound {
            return finish(
                SolveStatus::Diverged,
                None,
                iterations,
                last_residual,
                last_step,
                trace,
            );
        }
        problem.residual_into(&x, &mut fx);
        if !fx.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return finish(
                SolveStatus::NumericError,
                None,
                iterations,
                last_residual,
                last_step,
                trace,
            );
        }
        let residual = norm2_slice(&fx);
        if let (Some(step_norm), Some(t)) = (pending_step.take(), trace.as_mut()) {
            t.push(ComplexVector::new(x.clone()), step_norm, residual);
        }
        last_residual = Some(residual);
        if residual <= config.tol_residual {
            let root = ComplexVector::new(x);
            return finish(
                SolveStatus::Converged,
                Some(root),
                iterations,
                last_residual,
                last_step,
                trace,
            );
        }
        if iterations == config.max_iter {
            return finish(
                SolveStatus::MaxIterExceeded,
                None,
                iterations,
                last_residual,
                last_step,
                trace,
            );
        }

        step(&x, &fx, &mut next);
        if !next.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return finish(
                SolveStatus::NumericError,
                None,
                iterations,
                last_residual,
                last_step,
                trace,
            );
        }
        let step_norm = x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        std::mem::swap(&mut x, &mut next);
        iterations += 1;
        last_step = Some(step_norm);
        pending_step = Some(step_norm);
    }
}

/// Empirical order and factor fitted from a converged trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceOrder {
    pub order: f64,
    pub factor: f64,
}

/// Fit the convergence order of a trace whose final iterate is taken as the
/// limit proxy.
///
/// Errors `e_k = ||x_k - x_last||` feed a least-squares fit of
/// `ln e_(k+1)` against `ln e_k` over the last ten usable consecutive pairs
/// (zero errors are excluded). The slope estimates the order, the
/// exponentiated intercept the convergence factor.
pub fn estimate_convergence_order(trace: &IterationTrace) -> Result<ConvergenceOrder> {
    let n = trace.iterates.len();
    if n < 5 {
        return Err(Error::InsufficientTrace {
            needed: 5,
            got: n,
            what: "iterates",
        });
    }
    let limit = &trace.iterates[n - 1];
    let errs: Vec<f64> = trace.iterates[..n - 1]
        .iter()
        .map(|x| x.distance(limit))
        .collect();
    let mut pairs: Vec<(f64, f64)> = errs
        .windows(2)
        .filter(|w| w[0] > 0.0 && w[1] > 0.0)
        .map(|w| (w[0].ln(), w[1].ln()))
        .collect();
    if pairs.len() < 2 {
        return Err(Error::InsufficientTrace {
            needed: 2,
            got: pairs.len(),
            what: "usable error pairs",
        });
    }
    if pairs.len() > 10 {
        pairs.drain(..pairs.len() - 10);
    }
    let m = pairs.len() as f64;
    let sx: f64 = pairs.iter().map(|p| p.0).sum();
    let sy: f64 = pairs.iter().map(|p| p.1).sum();
    let sxx: f64 = pairs.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pairs.iter().map(|p| p.0 * p.1).sum();
    let denom = m * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return Err(Error::InsufficientTrace {
            needed: 2,
            got: 1,
            what: "distinct error magnitudes",
        });
    }
    let order = (m * sxy - sx * sy) / denom;
    let intercept = (sy - order * sx) / m;
    Ok(ConvergenceOrder {
        order,
        factor: intercept.exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{self, EXAMPLE3_EXACT};

    fn order_half() -> FracOrder {
        FracOrder::new(0.5).unwrap()
    }

    /// f(x) = x - c in one dimension.
    fn shift_problem(c: f64) -> ProblemDef {
        ProblemDef::new("shift", 1, move |x, out| out[0] = x[0] - c)
    }

    #[test]
    fn step_at_origin_is_exactly_epsilon() {
        // f(x) = x - 1 at x = 0: entry is exactly epsilon, so the step is
        // 0 - eps * (-1) = eps, bitwise.
        let p = shift_problem(1.0);
        let x = ComplexVector::from_real(&[0.0]);
        let next = pseudo_newton_step(&p, &x, order_half(), 1e-4).unwrap();
        assert_eq!(next[0], Complex64::new(1e-4, 0.0));
    }

    #[test]
    fn step_frozen_value() {
        // f(x) = x at x = 1, alpha = 1/2: 1 - (1/sqrt(pi) + eps)
        let p = shift_problem(0.0);
        let x = ComplexVector::from_real(&[1.0]);
        let next = pseudo_newton_step(&p, &x, order_half(), 1e-4).unwrap();
        assert!((next[0].re - 0.43571041645224373).abs() < 1e-15);
        assert_eq!(next[0].im, 0.0);
    }

    #[test]
    fn step_matches_solver_iteration() {
        let p = problems::example3();
        let x0 = p.reference_x0().unwrap();
        let config = SolverConfig::new(FracOrder::new(0.90162).unwrap());
        let step = pseudo_newton_step(&p, &x0, config.alpha, config.epsilon).unwrap();
        let outcome = solve(&p, &x0, &config, true).unwrap();
        let trace = outcome.trace.unwrap();
        assert_eq!(trace.iterates[1], step);
    }

    #[test]
    fn receiver_first_step_moves_toward_reported_root() {
        let p = problems::receiver_problem(&problems::ReceiverParams::default());
        let x0 = p.reference_x0().unwrap();
        let fx0 = p.residual(&x0).unwrap();
        let expected = [0.098, -1.398, -0.11, 0.024, -0.084];
        for (k, want) in expected.iter().enumerate() {
            assert!(
                (fx0[k].re - want).abs() < 1e-3,
                "f(x0)[{k}] = {}",
                fx0[k].re
            );
        }
        let root =
            ComplexVector::from_real(&[53.80159759, 51.59708283, 22.09436105, 0.4243031, 0.01524]);
        let alpha = FracOrder::new(1.02934).unwrap();
        let x1 = pseudo_newton_step(&p, &x0, alpha, 1e-4).unwrap();
        assert!(x1.distance(&root) < x0.distance(&root));
    }

    #[test]
    fn solve_example3_reaches_exact_solution() {
        let p = problems::example3();
        let mut config = SolverConfig::new(FracOrder::new(0.90162).unwrap());
        config.epsilon = 1e-3;
        let outcome = solve(&p, &p.reference_x0().unwrap(), &config, false).unwrap();
        assert_eq!(outcome.status, SolveStatus::Converged);
        let root = outcome.root.unwrap();
        for (k, want) in EXAMPLE3_EXACT.iter().enumerate() {
            assert!((root[k] - want).norm() < 1e-3, "component {k}: {}", root[k]);
        }
        // convergence is judged on the residual, re-checked independently
        assert!(p.residual(&root).unwrap().norm2() <= config.tol_residual);
        assert!(outcome.iterations > 0);
    }

    #[test]
    fn solve_starting_at_root_converges_immediately() {
        let p = shift_problem(2.5);
        let x0 = ComplexVector::from_real(&[2.5]);
        let outcome = solve(&p, &x0, &SolverConfig::new(order_half()), true).unwrap();
        assert_eq!(outcome.status, SolveStatus::Converged);
        assert_eq!(outcome.iterations, 0);
        assert_eq!(outcome.root.unwrap()[0], Complex64::new(2.5, 0.0));
        let trace = outcome.trace.unwrap();
        assert_eq!(trace.iterates.len(), 1);
        assert!(trace.step_norms.is_empty());
        assert!(trace.residual_norms.is_empty());
    }

    #[test]
    fn fixed_point_consistency() {
        // exact zero residual leaves the iterate unchanged, bitwise
        let p = shift_problem(0.75);
        let x = ComplexVector::from_real(&[0.75]);
        let next = pseudo_newton_step(&p, &x, order_half(), 1e-3).unwrap();
        assert_eq!(next, x);
    }

    #[test]
    fn starved_iteration_budget() {
        let p = problems::example3();
        let mut config = SolverConfig::new(order_half());
        config.max_iter = 1;
        let outcome = solve(&p, &p.reference_x0().unwrap(), &config, false).unwrap();
        assert_eq!(outcome.status, SolveStatus::MaxIterExceeded);
        assert_eq!(outcome.iterations, 1);
        assert!(outcome.root.is_none());
    }

    #[test]
    fn chord_single_steps() {
        // f(x) = 2x: exact slope solves linear f in one step
        let p = ProblemDef::new("double", 1, |x, out| out[0] = 2.0 * x[0]);
        let x = ComplexVector::from_real(&[1.0]);
        let next = parallel_chord_step(&p, &x, 2.0).unwrap();
        assert_eq!(next[0], Complex64::new(0.0, 0.0));
        let half = parallel_chord_step(&p, &x, 4.0).unwrap();
        assert_eq!(half[0], Complex64::new(0.5, 0.0));
        assert!(matches!(
            parallel_chord_step(&p, &x, 0.0),
            Err(Error::ZeroSlope)
        ));
    }

    #[test]
    fn chord_solves_example3() {
        let p = problems::example3();
        let config = SolverConfig::new(order_half());
        let outcome = solve_chord(&p, &p.reference_x0().unwrap(), 20.0, &config, false).unwrap();
        assert_eq!(outcome.status, SolveStatus::Converged);
        let root = outcome.root.unwrap();
        for (k, want) in EXAMPLE3_EXACT.iter().enumerate() {
            assert!((root[k] - want).norm() < 1e-3);
        }
    }

    #[test]
    fn divergence_guard_fires() {
        // chord with slope -1 doubles the iterate each step
        let p = ProblemDef::new("identity", 1, |x, out| out[0] = x[0]);
        let x0 = ComplexVector::from_real(&[1.0]);
        let config = SolverConfig::new(order_half());
        let outcome = solve_chord(&p, &x0, -1.0, &config, true).unwrap();
        assert_eq!(outcome.status, SolveStatus::Diverged);
        assert!(outcome.root.is_none());
        let trace = outcome.trace.unwrap();
        // every recorded iterate is finite and in bounds
        assert!(trace.iterates.iter().all(|x| x.is_finite()));
        assert_eq!(trace.step_norms.len(), trace.residual_norms.len());
        assert_eq!(trace.iterates.len(), trace.step_norms.len() + 1);
    }

    #[test]
    fn numeric_error_status() {
        // residual overflows immediately at the start point
        let p = ProblemDef::new("overflow", 1, |x, out| {
            out[0] = (2.0 * x[0]).exp() - std::f64::consts::E
        });
        let x0 = ComplexVector::from_real(&[400.0]);
        let outcome = solve(&p, &x0, &SolverConfig::new(order_half()), false).unwrap();
        assert_eq!(outcome.status, SolveStatus::NumericError);
        assert_eq!(outcome.iterations, 0);
    }

    #[test]
    fn all_positive_real_trajectory_stays_exactly_real() {
        // f(x) = x - 2 from x0 = 1: iterates increase toward 2, staying positive
        let p = shift_problem(2.0);
        let x0 = ComplexVector::from_real(&[1.0]);
        let outcome = solve(&p, &x0, &SolverConfig::new(order_half()), true).unwrap();
        assert_eq!(outcome.status, SolveStatus::Converged);
        for x in &outcome.trace.unwrap().iterates {
            assert_eq!(x[0].im, 0.0);
            assert!(x[0].re > 0.0);
        }
    }

    #[test]
    fn deterministic_traces() {
        let p = problems::example1();
        let mut config = SolverConfig::new(FracOrder::new(0.78562).unwrap());
        config.epsilon = 1e-3;
        let x0 = p.reference_x0().unwrap();
        let a = solve(&p, &x0, &config, true).unwrap();
        let b = solve(&p, &x0, &config, true).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn trace_norms_align_with_iterates() {
        let p = problems::example3();
        let mut config = SolverConfig::new(FracOrder::new(0.90162).unwrap());
        config.epsilon = 1e-3;
        let outcome = solve(&p, &p.reference_x0().unwrap(), &config, true).unwrap();
        let trace = outcome.trace.unwrap();
        assert_eq!(trace.iterates.len(), trace.step_norms.len() + 1);
        for (i, (step, residual)) in trace
            .step_norms
            .iter()
            .zip(&trace.residual_norms)
            .enumerate()
        {
            let x_prev = &trace.iterates[i];
            let x = &trace.iterates[i + 1];
            assert_eq!(*step, x.distance(x_prev));
            assert_eq!(*residual, p.residual(x).unwrap().norm2());
        }
    }

    #[test]
    fn order_estimator_geometric_sequence() {
        // iterates 2^-k with exact limit 0 appended: order 1, factor 1/2
        let mut iterates: Vec<ComplexVector> = (0..20)
            .map(|k| ComplexVector::from_real(&[(2.0f64).powi(-k)]))
            .collect();
        iterates.push(ComplexVector::from_real(&[0.0]));
        let n = iterates.len();
        let trace = IterationTrace {
            iterates,
            step_norms: vec![0.0; n - 1],
            residual_norms: vec![0.0; n - 1],
        };
        let fit = estimate_convergence_order(&trace).unwrap();
        assert!((fit.order - 1.0).abs() < 1e-9, "order = {}", fit.order);
        assert!((fit.factor - 0.5).abs() < 1e-9, "factor = {}", fit.factor);
    }

    #[test]
    fn order_estimator_insufficient_data() {
        let iterates: Vec<ComplexVector> = (0..3)
            .map(|k| ComplexVector::from_real(&[k as f64]))
            .collect();
        let trace = IterationTrace {
            iterates,
            step_norms: vec![0.0; 2],
            residual_norms: vec![0.0; 2],
        };
        assert!(matches!(
            estimate_convergence_order(&trace),
            Err(Error::InsufficientTrace { .. })
        ));
    }

    #[test]
    fn config_validation() {
        let mut config = SolverConfig::new(order_half());
        assert!(config.validate().is_ok());
        config.epsilon = 0.0;
        assert!(config.validate().is_err());
        config.epsilon = 1e-4;
        config.max_iter = 0;
        assert!(config.validate().is_err());
        config.max_iter = 10;
        config.tol_residual = -1.0;
        assert!(config.validate().is_err());
    }
}
