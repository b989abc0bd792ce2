//! Result documents and their table / CSV / JSON renderings.
//!
//! JSON always carries full precision (field values round-trip exactly);
//! the precision setting only affects the table and CSV display forms.
//! Complex values serialize as `{"re": .., "im": ..}` pairs in JSON and as
//! paired `_re`/`_im` columns in CSV; the `a + bi` string form appears only
//! in human-readable tables.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::probing::{BoxBracket, Bracket1D, CurvePoint, StabilityReport};
use crate::problems::{ReceiverCoefficients, ReceiverParams};
use crate::solver::{IterationTrace, SolveOutcome};
use crate::sweep::SweepReport;

/// Complex scalar as an explicit re/im pair for serialization.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CxPair {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for CxPair {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

fn pairs(v: &crate::complex::ComplexVector) -> Vec<CxPair> {
    v.iter().map(|&z| z.into()).collect()
}

/// `a + bi` display form; purely real values print without the `i` term.
pub fn format_complex(z: Complex64, precision: usize) -> String {
    if z.im == 0.0 {
        format!("{:.*}", precision, z.re)
    } else if z.im < 0.0 {
        format!("{:.*} - {:.*}i", precision, z.re, precision, -z.im)
    } else {
        format!("{:.*} + {:.*}i", precision, z.re, precision, z.im)
    }
}

fn format_vector(v: &crate::complex::ComplexVector, precision: usize) -> String {
    let parts: Vec<String> = v.iter().map(|&z| format_complex(z, precision)).collect();
    format!("({})", parts.join(", "))
}

#[derive(Debug, Serialize)]
pub struct TraceDoc {
    pub iterates: Vec<Vec<CxPair>>,
    pub step_norms: Vec<f64>,
    pub residual_norms: Vec<f64>,
}

impl From<&IterationTrace> for TraceDoc {
    fn from(t: &IterationTrace) -> Self {
        Self {
            iterates: t.iterates.iter().map(pairs).collect(),
            step_norms: t.step_norms.clone(),
            residual_norms: t.residual_norms.clone(),
        }
    }
}

/// Result document of a single solve.
#[derive(Debug, Serialize)]
pub struct SolveDoc {
    pub problem: String,
    pub method: String,
    pub alpha: Option<f64>,
    pub epsilon: Option<f64>,
    pub slope: Option<f64>,
    pub status: String,
    pub iterations: usize,
    pub residual_norm: Option<f64>,
    pub last_step_norm: Option<f64>,
    pub root: Option<Vec<CxPair>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceDoc>,
}

impl SolveDoc {
    pub fn pseudo_newton(problem: &str, alpha: f64, epsilon: f64, outcome: &SolveOutcome) -> Self {
        Self {
            problem: problem.into(),
            method: "pseudo-newton".into(),
            alpha: Some(alpha),
            epsilon: Some(epsilon),
            slope: None,
            status: outcome.status.as_str().into(),
            iterations: outcome.iterations,
            residual_norm: outcome.residual_norm,
            last_step_norm: outcome.last_step_norm,
            root: outcome.root.as_ref().map(pairs),
            trace: outcome.trace.as_ref().map(TraceDoc::from),
        }
    }

    pub fn chord(problem: &str, slope: f64, outcome: &SolveOutcome) -> Self {
        Self {
            problem: problem.into(),
            method: "parallel-chord".into(),
            alpha: None,
            epsilon: None,
            slope: Some(slope),
            status: outcome.status.as_str().into(),
            iterations: outcome.iterations,
            residual_norm: outcome.residual_norm,
            last_step_norm: outcome.last_step_norm,
            root: outcome.root.as_ref().map(pairs),
            trace: outcome.trace.as_ref().map(TraceDoc::from),
        }
    }

    pub fn to_table(&self, precision: usize) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "problem: {}  method: {}", self.problem, self.method);
        if let (Some(a), Some(e)) = (self.alpha, self.epsilon) {
            let _ = writeln!(s, "alpha: {a}  epsilon: {e}");
        }
        if let Some(m) = self.slope {
            let _ = writeln!(s, "slope: {m}");
        }
        let _ = writeln!(
            s,
            "status: {}  iterations: {}",
            self.status, self.iterations
        );
        if let Some(r) = self.residual_norm {
            let _ = writeln!(s, "residual_norm: {r:.5e}");
        }
        if let Some(d) = self.last_step_norm {
            let _ = writeln!(s, "step_norm: {d:.5e}");
        }
        if let Some(root) = &self.root {
            let v = crate::complex::ComplexVector::new(
                root.iter().map(|p| Complex64::new(p.re, p.im)).collect(),
            );
            let _ = writeln!(s, "root: {}", format_vector(&v, precision));
        }
        if let Some(trace) = &self.trace {
            let _ = writeln!(s, "iter  step_norm     residual_norm");
            for (i, (st, rn)) in trace
                .step_norms
                .iter()
                .zip(&trace.residual_norms)
                .enumerate()
            {
                let _ = writeln!(s, "{:<5} {st:<13.5e} {rn:.5e}", i + 1);
            }
        }
        s
    }

    /// One row per iteration when a trace is present, otherwise a single
    /// outcome row.
    pub fn to_csv(&self, precision: usize) -> String {
        let mut s = String::new();
        if let Some(trace) = &self.trace {
            let dim = trace.iterates[0].len();
            let mut header = String::from("iter");
            for k in 1..=dim {
                let _ = write!(header, ",x{k}_re,x{k}_im");
            }
            let _ = writeln!(s, "{header},step_norm,residual_norm");
            for (i, x) in trace.iterates.iter().enumerate().skip(1) {
                let _ = write!(s, "{i}");
                for p in x {
                    let _ = write!(s, ",{:.*},{:.*}", precision, p.re, precision, p.im);
                }
                let _ = writeln!(
                    s,
                    ",{:.*e},{:.*e}",
                    precision,
                    trace.step_norms[i - 1],
                    precision,
                    trace.residual_norms[i - 1]
                );
            }
            return s;
        }
        let dim = self.root.as_ref().map_or(0, Vec::len);
        let mut header = String::from("status,iterations,residual_norm,step_norm");
        for k in 1..=dim {
            let _ = write!(header, ",x{k}_re,x{k}_im");
        }
        let _ = writeln!(s, "{header}");
        let _ = write!(
            s,
            "{},{},{},{}",
            self.status,
            self.iterations,
            self.residual_norm
                .map_or(String::new(), |r| format!("{:.*e}", precision, r)),
            self.last_step_norm
                .map_or(String::new(), |d| format!("{:.*e}", precision, d)),
        );
        if let Some(root) = &self.root {
            for p in root {
                let _ = write!(s, ",{:.*},{:.*}", precision, p.re, precision, p.im);
            }
        }
        s.push('\n');
        s
    }
}

#[derive(Debug, Serialize)]
pub struct RootDoc {
    pub index: usize,
    pub alpha: f64,
    pub root: Vec<CxPair>,
    pub step_norm: f64,
    pub residual_norm: f64,
    pub iterations: usize,
    pub is_real: bool,
}

/// Result document of an order sweep.
#[derive(Debug, Serialize)]
pub struct SweepDoc {
    pub problem: String,
    pub seed: Option<u64>,
    pub samples: usize,
    pub converged: usize,
    pub diverged: usize,
    pub max_iter_exceeded: usize,
    pub numeric_errors: usize,
    pub distinct_roots: usize,
    pub roots: Vec<RootDoc>,
}

impl SweepDoc {
    pub fn new(problem: &str, seed: Option<u64>, report: &SweepReport) -> Self {
        let roots = report
            .registry
            .records()
            .iter()
            .enumerate()
            .map(|(i, r)| RootDoc {
                index: i + 1,
                alpha: r.alpha_used,
                root: pairs(&r.root),
                step_norm: r.last_step_norm,
                residual_norm: r.residual_norm,
                iterations: r.iterations,
                is_real: r.is_real,
            })
            .collect();
        Self {
            problem: problem.into(),
            seed,
            samples: report.samples,
            converged: report.converged,
            diverged: report.diverged,
            max_iter_exceeded: report.max_iter_exceeded,
            numeric_errors: report.numeric_errors,
            distinct_roots: report.registry.len(),
            roots,
        }
    }

    pub fn summary_line(&self) -> String {
        format!(
            "samples: {}  converged: {}  diverged: {}  max_iter: {}  numeric_error: {}  distinct roots: {}",
            self.samples,
            self.converged,
            self.diverged,
            self.max_iter_exceeded,
            self.numeric_errors,
            self.distinct_roots
        )
    }

    pub fn to_table(&self, precision: usize) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "problem: {}", self.problem);
        let _ = writeln!(s, "{}", self.summary_line());
        if self.roots.is_empty() {
            return s;
        }
        let _ = writeln!(
            s,
            "m     alpha     root{:<60} step_norm    residual_norm  iterations",
            ""
        );
        for r in &self.roots {
            let v = crate::complex::ComplexVector::new(
                r.root.iter().map(|p| Complex64::new(p.re, p.im)).collect(),
            );
            let _ = writeln!(
                s,
                "{:<5} {:<9.5} {:<64} {:<12.5e} {:<14.5e} {}",
                r.index,
                r.alpha,
                format_vector(&v, precision),
                r.step_norm,
                r.residual_norm,
                r.iterations
            );
        }
        s
    }

    /// Columns: index, alpha, per-component re/im pairs, step norm,
    /// residual norm, iteration count.
    pub fn to_csv(&self, precision: usize) -> String {
        let mut s = String::new();
        let dim = self.roots.first().map_or(0, |r| r.root.len());
        let mut header = String::from("index,alpha");
        for k in 1..=dim {
            let _ = write!(header, ",x{k}_re,x{k}_im");
        }
        let _ = writeln!(s, "{header},step_norm,residual_norm,iterations");
        for r in &self.roots {
            let _ = write!(s, "{},{:.*}", r.index, precision, r.alpha);
            for p in &r.root {
                let _ = write!(s, ",{:.*},{:.*}", precision, p.re, precision, p.im);
            }
            let _ = writeln!(
                s,
                ",{:.*e},{:.*e},{}",
                precision, r.step_norm, precision, r.residual_norm, r.iterations
            );
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct StabilityDoc {
    pub problem: String,
    pub base: Vec<f64>,
    /// 1-based component, as given on the command line.
    pub component: usize,
    pub offsets: Vec<f64>,
    pub residual_norms: Vec<f64>,
    pub base_norm: f64,
    pub classification: String,
}

impl StabilityDoc {
    pub fn new(problem: &str, report: &StabilityReport) -> Self {
        Self {
            problem: problem.into(),
            base: report.base_point.clone(),
            component: report.component + 1,
            offsets: report.offsets.clone(),
            residual_norms: report.residual_norms.clone(),
            base_norm: report.base_norm,
            classification: report.classification.as_str().into(),
        }
    }

    pub fn to_table(&self, precision: usize) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "problem: {}  component: {}",
            self.problem, self.component
        );
        let _ = writeln!(s, "base norm: {:.*}", precision, self.base_norm);
        let _ = writeln!(s, "offset        residual_norm  change");
        for (o, n) in self.offsets.iter().zip(&self.residual_norms) {
            let _ = writeln!(s, "{o:<13} {n:<14.5} {:+.5}", n - self.base_norm);
        }
        let _ = writeln!(s, "classification: {}", self.classification);
        s
    }

    pub fn to_csv(&self, precision: usize) -> String {
        let mut s = String::from("offset,residual_norm\n");
        for (o, n) in self.offsets.iter().zip(&self.residual_norms) {
            let _ = writeln!(s, "{o},{n:.precision$}");
        }
        s
    }
}

/// Curve rows; CSV columns are `v, f1..fn, norm`.
#[derive(Debug, Serialize)]
pub struct CurveDoc {
    pub problem: String,
    pub component: usize,
    pub points: Vec<CurvePointDoc>,
}

#[derive(Debug, Serialize)]
pub struct CurvePointDoc {
    pub v: f64,
    pub components: Vec<f64>,
    pub norm: f64,
}

impl CurveDoc {
    pub fn new(problem: &str, component_one_based: usize, points: &[CurvePoint]) -> Self {
        Self {
            problem: problem.into(),
            component: component_one_based,
            points: points
                .iter()
                .map(|p| CurvePointDoc {
                    v: p.v,
                    components: p.components.clone(),
                    norm: p.norm,
                })
                .collect(),
        }
    }

    pub fn to_csv(&self, precision: usize) -> String {
        let dim = self.points.first().map_or(0, |p| p.components.len());
        let mut header = String::from("v");
        for k in 1..=dim {
            let _ = write!(header, ",f{k}");
        }
        let mut s = format!("{header},norm\n");
        for p in &self.points {
            let _ = write!(s, "{:.*}", precision, p.v);
            for c in &p.components {
                let _ = write!(s, ",{c:.precision$}");
            }
            let _ = writeln!(s, ",{:.*}", precision, p.norm);
        }
        s
    }

    pub fn to_table(&self, precision: usize) -> String {
        self.to_csv(precision).replace(',', "  ")
    }
}

#[derive(Debug, Serialize)]
pub struct BracketBoxDoc {
    pub problem: String,
    pub x_a: Vec<f64>,
    pub x_b: Vec<f64>,
    pub f_a: Vec<f64>,
    pub f_b: Vec<f64>,
    pub component_products: Vec<f64>,
    pub holds: bool,
}

impl BracketBoxDoc {
    pub fn new(problem: &str, cert: &BoxBracket) -> Self {
        Self {
            problem: problem.into(),
            x_a: cert.x_a.clone(),
            x_b: cert.x_b.clone(),
            f_a: cert.f_a.clone(),
            f_b: cert.f_b.clone(),
            component_products: cert.component_products.clone(),
            holds: true,
        }
    }

    pub fn to_table(&self, precision: usize) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "problem: {}", self.problem);
        let _ = writeln!(s, "k  f_k(x_a)       f_k(x_b)       product");
        for k in 0..self.f_a.len() {
            let _ = writeln!(
                s,
                "{}  {:<14.*} {:<14.*} {:.*e}",
                k + 1,
                precision.min(6),
                self.f_a[k],
                precision.min(6),
                self.f_b[k],
                precision.min(6),
                self.component_products[k]
            );
        }
        let _ = writeln!(s, "certificate holds: all componentwise products <= 0");
        s
    }

    pub fn to_csv(&self, precision: usize) -> String {
        let mut s = String::from("component,f_a,f_b,product\n");
        for k in 0..self.f_a.len() {
            let _ = writeln!(
                s,
                "{},{:.*},{:.*},{:.*e}",
                k + 1,
                precision,
                self.f_a[k],
                precision,
                self.f_b[k],
                precision,
                self.component_products[k]
            );
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct BracketScanDoc {
    pub problem: String,
    pub component: usize,
    pub brackets: Vec<BracketRowDoc>,
}

#[derive(Debug, Serialize)]
pub struct BracketRowDoc {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
    pub midpoint: f64,
}

impl BracketScanDoc {
    pub fn new(problem: &str, component_one_based: usize, brackets: &[Bracket1D]) -> Self {
        Self {
            problem: problem.into(),
            component: component_one_based,
            brackets: brackets
                .iter()
                .map(|b| BracketRowDoc {
                    lo: b.lo,
                    hi: b.hi,
                    f_lo: b.f_lo,
                    f_hi: b.f_hi,
                    midpoint: b.midpoint(),
                })
                .collect(),
        }
    }

    pub fn to_csv(&self, precision: usize) -> String {
        let mut s = String::from("lo,hi,f_lo,f_hi,midpoint\n");
        for b in &self.brackets {
            let _ = writeln!(
                s,
                "{:.*},{:.*},{:.*e},{:.*e},{:.*}",
                precision,
                b.lo,
                precision,
                b.hi,
                precision,
                b.f_lo,
                precision,
                b.f_hi,
                precision,
                b.midpoint
            );
        }
        s
    }

    pub fn to_table(&self, precision: usize) -> String {
        let mut s = format!(
            "problem: {}  component: {}  brackets: {}\n",
            self.problem,
            self.component,
            self.brackets.len()
        );
        s.push_str(&self.to_csv(precision).replace(',', "  "));
        s
    }
}

#[derive(Debug, Serialize)]
pub struct ReceiverInfoDoc {
    pub params: ReceiverParams,
    pub coefficients: ReceiverCoefficients,
}

impl ReceiverInfoDoc {
    pub fn new(params: ReceiverParams, coefficients: ReceiverCoefficients) -> Self {
        Self {
            params,
            coefficients,
        }
    }

    pub fn to_table(&self) -> String {
        let c = &self.coefficients;
        let mut s = String::from("derived coefficients:\n");
        for (name, v) in [
            ("a1", c.a1),
            ("a2", c.a2),
            ("a3", c.a3),
            ("a4", c.a4),
            ("a5", c.a5),
            ("a6", c.a6),
            ("a7", c.a7),
            ("a8", c.a8),
            ("a9", c.a9),
        ] {
            let _ = writeln!(s, "  {name} = {v:.12e}");
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let a = self.coefficients.as_array();
        let header: Vec<String> = (1..=9).map(|k| format!("a{k}")).collect();
        let row: Vec<String> = a.iter().map(|v| format!("{v:e}")).collect();
        format!("{}\n{}\n", header.join(","), row.join(","))
    }
}

/// Serialize any result document as pretty JSON.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("result documents always serialize");
    s.push('\n');
    s
}
