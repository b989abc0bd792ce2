//! Multi-root search by sweeping the fractional order.
//!
//! One initial condition, many derivative orders: each sampled `alpha` runs
//! the pseudo-Newton solver, and converged roots land in a deduplicating
//! registry. Different orders reach different basins, so a single real start
//! can collect real roots, complex roots, and conjugate pairs.
//!
//! Samples are independent and are solved on parallel workers; registry
//! insertion happens afterwards in sample order, so a sweep's result is
//! identical to a sequential run with the same plan.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complex::ComplexVector;
use crate::error::{Error, Result};
use crate::fracderiv::FracOrder;
use crate::problems::ProblemDef;
use crate::solver::{solve, SolveOutcome, SolveStatus, SolverConfig};

/// How sweep orders are drawn from the order domain.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaSampling {
    /// Multiples of `step` that fall inside the domain.
    Grid { step: f64 },
    /// Seeded uniform draws.
    UniformRandom { count: usize, seed: u64 },
}

/// A sweep description: sampling scheme, order domain, solver settings, and
/// registry thresholds.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub sampling: AlphaSampling,
    /// Orders are drawn from `(alpha_lo, alpha_hi)` within `[0, 2]`.
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    /// Exclusion margin around the integers 0, 1, 2.
    pub integer_margin: f64,
    /// Solver settings; the `alpha` field is replaced by each sample.
    pub base_config: SolverConfig,
    pub x0: ComplexVector,
    /// Roots closer than this merge into one registry record.
    pub dedup_tol: f64,
    /// Largest `|Im|` for a root to be classified (and stored) as real.
    pub real_threshold: f64,
}

impl SweepPlan {
    /// A full-domain random sweep with the registry defaults.
    pub fn new(base_config: SolverConfig, x0: ComplexVector, samples: usize, seed: u64) -> Self {
        Self {
            sampling: AlphaSampling::UniformRandom {
                count: samples,
                seed,
            },
            alpha_lo: 0.0,
            alpha_hi: 2.0,
            integer_margin: 1e-3,
            base_config,
            x0,
            dedup_tol: 1e-3,
            real_threshold: 1e-6,
        }
    }

    fn validate(&self) -> Result<()> {
        self.base_config.validate()?;
        let margin_ok = self.integer_margin > 0.0 && self.integer_margin < 0.4;
        if !margin_ok {
            return Err(Error::InvalidConfig(format!(
                "integer margin {} out of range",
                self.integer_margin
            )));
        }
        let thresholds_ok = self.dedup_tol > 0.0 && self.real_threshold > 0.0;
        if !thresholds_ok {
            return Err(Error::InvalidConfig(
                "dedup_tol and real_threshold must be positive".into(),
            ));
        }
        if !(0.0..=2.0).contains(&self.alpha_lo)
            || !(0.0..=2.0).contains(&self.alpha_hi)
            || self.alpha_lo >= self.alpha_hi
        {
            return Err(Error::InvalidConfig(format!(
                "alpha range ({}, {}) must be an interval inside [0, 2]",
                self.alpha_lo, self.alpha_hi
            )));
        }
        Ok(())
    }

    /// The admissible sub-intervals of the order domain.
    fn intervals(&self) -> Vec<(f64, f64)> {
        let m = self.integer_margin;
        [(m, 1.0 - m), (1.0 + m, 2.0 - m)]
            .into_iter()
            .map(|(lo, hi)| (lo.max(self.alpha_lo), hi.min(self.alpha_hi)))
            .filter(|(lo, hi)| lo < hi)
            .collect()
    }

    /// Draw the sweep's derivative orders. Deterministic per plan.
    pub fn sample_alphas(&self) -> Result<Vec<FracOrder>> {
        self.validate()?;
        let intervals = self.intervals();
        let to_order = |alpha: f64| FracOrder::with_margin(alpha, self.integer_margin);
        match self.sampling {
            AlphaSampling::Grid { step } => {
                if !(step > 0.0 && step.is_finite()) {
                    return Err(Error::InvalidConfig(format!(
                        "grid step {step} must be positive"
                    )));
                }
                let mut out = Vec::new();
                let mut k = 1u64;
                loop {
                    let alpha = k as f64 * step;
                    if alpha >= 2.0 {
                        break;
                    }
                    if intervals.iter().any(|&(lo, hi)| alpha >= lo && alpha <= hi) {
                        out.push(to_order(alpha)?);
                    }
                    k += 1;
                }
                Ok(out)
            }
            AlphaSampling::UniformRandom { count, seed } => {
                if count == 0 {
                    return Ok(Vec::new());
                }
                if intervals.is_empty() {
                    return Err(Error::InvalidConfig(
                        "alpha range excludes every admissible order".into(),
                    ));
                }
                let total: f64 = intervals.iter().map(|(lo, hi)| hi - lo).sum();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut out = Vec::with_capacity(count);
                for _ in 0..count {
                    let mut t = rng.gen_range(0.0..total);
                    let mut alpha = intervals[0].0;
                    for &(lo, hi) in &intervals {
                        let len = hi - lo;
                        if t < len {
                            alpha = lo + t;
                            break;
                        }
                        t -= len;
                        alpha = hi; // falls through only on the last interval
                    }
                    out.push(to_order(alpha)?);
                }
                Ok(out)
            }
        }
    }
}

/// True when every component's `|Im|` is at most `threshold`.
pub fn classify_real(root: &ComplexVector, threshold: f64) -> bool {
    root.max_abs_imag() <= threshold
}

/// One distinct converged root: the order that found it, the final norms,
/// and the iteration count.
#[derive(Debug, Clone, PartialEq)]
pub struct RootRecord {
    pub alpha_used: f64,
    pub root: ComplexVector,
    pub last_step_norm: f64,
    pub residual_norm: f64,
    pub iterations: usize,
    pub is_real: bool,
}

/// What [`RootRegistry::insert`] did with a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertOutcome {
    Inserted,
    /// Matched an existing root within `dedup_tol`; the record with the
    /// smaller residual norm was kept.
    Merged,
}

/// Deduplicated collection of found roots, in discovery order.
#[derive(Debug, Clone, PartialEq)]
pub struct RootRegistry {
    records: Vec<RootRecord>,
    dedup_tol: f64,
}

impl RootRegistry {
    pub fn new(dedup_tol: f64) -> Self {
        assert!(dedup_tol > 0.0);
        Self {
            records: Vec::new(),
            dedup_tol,
        }
    }

    pub fn dedup_tol(&self) -> f64 {
        self.dedup_tol
    }

    pub fn records(&self) -> &[RootRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Offer a candidate: inserted if no existing root lies within
    /// `dedup_tol`, otherwise merged with the closest one.
    pub fn insert(&mut self, candidate: RootRecord) -> InsertOutcome {
        let closest = self
            .records
            .iter_mut()
            .map(|r| (r.root.distance(&candidate.root), r))
            .min_by(|a, b| a.0.total_cmp(&b.0));
        match closest {
            Some((dist, existing)) if dist <= self.dedup_tol => {
                if candidate.residual_norm < existing.residual_norm {
                    *existing = candidate;
                }
                InsertOutcome::Merged
            }
            _ => {
                self.records.push(candidate);
                InsertOutcome::Inserted
            }
        }
    }

    /// Closest record to a target root, with the distance.
    pub fn closest(&self, root: &ComplexVector) -> Option<(f64, &RootRecord)> {
        self.records
            .iter()
            .map(|r| (r.root.distance(root), r))
            .min_by(|a, b| a.0.total_cmp(&b.0))
    }
}

/// Sweep result: the registry plus per-status sample tallies.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub registry: RootRegistry,
    pub samples: usize,
    pub converged: usize,
    pub diverged: usize,
    pub max_iter_exceeded: usize,
    pub numeric_errors: usize,
}

/// Run the solver once per sampled order and collect distinct roots.
///
/// Individual solve failures are tallied, never fatal. Converged roots are
/// re-evaluated at their stored value (imaginary parts zeroed when
/// classified real) before insertion.
pub fn alpha_sweep(problem: &ProblemDef, plan: &SweepPlan) -> Result<SweepReport> {
    if plan.x0.dim() != problem.dim() {
        return Err(Error::DimensionMismatch {
            expected: problem.dim(),
            got: plan.x0.dim(),
        });
    }
    let alphas = plan.sample_alphas()?;
    let outcomes: Vec<(FracOrder, SolveOutcome)> = alphas
        .into_par_iter()
        .map(|alpha| {
            let mut config = plan.base_config.clone();
            config.alpha = alpha;
            let outcome =
                solve(problem, &plan.x0, &config, false).expect("plan validated before sweep");
            (alpha, outcome)
        })
        .collect();

    let mut report = SweepReport {
        registry: RootRegistry::new(plan.dedup_tol),
        samples: outcomes.len(),
        converged: 0,
        diverged: 0,
        max_iter_exceeded: 0,
        numeric_errors: 0,
    };
    for (alpha, outcome) in outcomes {
        match outcome.status {
            SolveStatus::Converged => report.converged += 1,
            SolveStatus::Diverged => {
                report.diverged += 1;
                continue;
            }
            SolveStatus::MaxIterExceeded => {
                report.max_iter_exceeded += 1;
                continue;
            }
            SolveStatus::NumericError => {
                report.numeric_errors += 1;
                continue;
            }
        }
        if let Some(record) = make_record(problem, plan, alpha, &outcome) {
            report.registry.insert(record);
        }
    }
    Ok(report)
}

fn make_record(
    problem: &ProblemDef,
    plan: &SweepPlan,
    alpha: FracOrder,
    outcome: &SolveOutcome,
) -> Option<RootRecord> {
    let root = outcome.root.as_ref()?;
    let is_real = classify_real(root, plan.real_threshold);
    let stored = if is_real {
        root.with_zero_imag()
    } else {
        root.clone()
    };
    // re-evaluate at the stored root so the registry invariant is
    // independent of the solver's bookkeeping
    let residual_norm = problem.residual(&stored).ok()?.norm2();
    if residual_norm > plan.base_config.tol_residual {
        return None;
    }
    Some(RootRecord {
        alpha_used: alpha.value(),
        root: stored,
        last_step_norm: outcome.last_step_norm.unwrap_or(0.0),
        residual_norm,
        iterations: outcome.iterations,
        is_real,
    })
}
