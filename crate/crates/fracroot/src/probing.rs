//! Initial-condition generation by sign-change bracketing, and a
//! perturbation probe that classifies how a residual reacts to small
//! displacements near a candidate solution.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::ComplexVector;
use crate::error::{Error, Result};
use crate::problems::ProblemDef;

/// A one-dimensional sign-change certificate: `f_lo * f_hi <= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket1D {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket1D {
    /// Default initial-condition pick inside the bracket.
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Componentwise sign-change certificate between two box corners.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxBracket {
    pub x_a: Vec<f64>,
    pub x_b: Vec<f64>,
    pub f_a: Vec<f64>,
    pub f_b: Vec<f64>,
    /// `f_a[k] * f_b[k]`, all nonpositive.
    pub component_products: Vec<f64>,
}

/// Verdict of a stability probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable,
}

impl Stability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
        }
    }
}

/// Residual norms along one coordinate direction around a base point.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub base_point: Vec<f64>,
    /// 0-based perturbed component.
    pub component: usize,
    pub offsets: Vec<f64>,
    pub residual_norms: Vec<f64>,
    pub base_norm: f64,
    pub classification: Stability,
}

/// One row of a stability curve: the substituted value, the real parts of
/// the residual components, and the residual norm.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub v: f64,
    pub components: Vec<f64>,
    pub norm: f64,
}

/// Brackets from an ascending list of sample points: every adjacent pair
/// whose values have a nonpositive product.
pub fn brackets_from_points(points: &[f64], f: impl Fn(f64) -> f64) -> Vec<Bracket1D> {
    let values: Vec<f64> = points.iter().map(|&x| f(x)).collect();
    points
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, fv)| fv[0] * fv[1] <= 0.0)
        .map(|(xs, fv)| Bracket1D {
            lo: xs[0],
            hi: xs[1],
            f_lo: fv[0],
            f_hi: fv[1],
        })
        .collect()
}

/// Draw `n_samples` seeded uniform points in `[lo, hi]`, sort them, and
/// collect the sign-change brackets among adjacent pairs. The list is empty
/// when no sign change is sampled.
pub fn bracket_scan_1d(
    f: impl Fn(f64) -> f64,
    domain: (f64, f64),
    n_samples: usize,
    seed: u64,
) -> Result<Vec<Bracket1D>> {
    let (lo, hi) = domain;
    let ordered = lo < hi; // also rejects NaN endpoints
    if !ordered {
        return Err(Error::InvalidConfig(format!(
            "bracket domain [{lo}, {hi}] must have lo < hi"
        )));
    }
    if n_samples < 2 {
        return Err(Error::InvalidConfig(
            "need at least 2 samples to bracket".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<f64> = (0..n_samples).map(|_| rng.gen_range(lo..hi)).collect();
    points.sort_by(f64::total_cmp);
    Ok(brackets_from_points(&points, f))
}

/// Check the componentwise certificate `f_k(x_a) * f_k(x_b) <= 0` between
/// two real points. Violating components are reported as an error.
pub fn box_bracket_check(problem: &ProblemDef, x_a: &[f64], x_b: &[f64]) -> Result<BoxBracket> {
    if x_a.len() != problem.dim() || x_b.len() != problem.dim() {
        return Err(Error::DimensionMismatch {
            expected: problem.dim(),
            got: x_a.len().max(x_b.len()),
        });
    }
    let f_a = problem
        .residual(&ComplexVector::from_real(x_a))?
        .real_parts();
    let f_b = problem
        .residual(&ComplexVector::from_real(x_b))?
        .real_parts();
    let products: Vec<f64> = f_a.iter().zip(&f_b).map(|(a, b)| a * b).collect();
    let violations: Vec<usize> = products
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0.0)
        .map(|(k, _)| k)
        .collect();
    if !violations.is_empty() {
        return Err(Error::BracketViolation {
            components: violations,
        });
    }
    Ok(BoxBracket {
        x_a: x_a.to_vec(),
        x_b: x_b.to_vec(),
        f_a,
        f_b,
        component_products: products,
    })
}

/// Evaluate residual norms at `base + offset * e_component` and classify:
/// unstable when some perturbation of size below one changes the residual
/// norm by one or more.
pub fn stability_probe(
    problem: &ProblemDef,
    base: &[f64],
    component: usize,
    offsets: &[f64],
) -> Result<StabilityReport> {
    if base.len() != problem.dim() {
        return Err(Error::DimensionMismatch {
            expected: problem.dim(),
            got: base.len(),
        });
    }
    if component >= problem.dim() {
        return Err(Error::InvalidConfig(format!(
            "component {component} out of range for dimension {}",
            problem.dim()
        )));
    }
    let base_norm = problem.residual_norm_at_real(base)?;
    let mut residual_norms = Vec::with_capacity(offsets.len());
    let mut classification = Stability::Stable;
    let mut point = base.to_vec();
    for &offset in offsets {
        point[component] = base[component] + offset;
        let norm = problem.residual_norm_at_real(&point)?;
        if offset.abs() < 1.0 && (norm - base_norm).abs() >= 1.0 {
            classification = Stability::Unstable;
        }
        residual_norms.push(norm);
    }
    Ok(StabilityReport {
        base_point: base.to_vec(),
        component,
        offsets: offsets.to_vec(),
        residual_norms,
        base_norm,
        classification,
    })
}

/// Substitute a uniform grid of values into one component of the base point
/// and tabulate the residual components and norm. The grid includes both
/// endpoints.
pub fn stability_curve(
    problem: &ProblemDef,
    base: &[f64],
    component: usize,
    range: (f64, f64),
    n_points: usize,
) -> Result<Vec<CurvePoint>> {
    if base.len() != problem.dim() {
        return Err(Error::DimensionMismatch {
            expected: problem.dim(),
            got: base.len(),
        });
    }
    if component >= problem.dim() {
        return Err(Error::InvalidConfig(format!(
            "component {component} out of range for dimension {}",
            problem.dim()
        )));
    }
    if n_points < 2 {
        return Err(Error::InvalidConfig("curve needs at least 2 points".into()));
    }
    let (lo, hi) = range;
    let step = (hi - lo) / (n_points - 1) as f64;
    let mut point = base.to_vec();
    let mut out = Vec::with_capacity(n_points);
    for j in 0..n_points {
        let v = if j + 1 == n_points {
            hi
        } else {
            lo + j as f64 * step
        };
        point[component] = v;
        let f = problem.residual(&ComplexVector::from_real(&point))?;
        out.push(CurvePoint {
            v,
            components: f.real_parts(),
            norm: f.norm2(),
        });
    }
    Ok(out)
}
