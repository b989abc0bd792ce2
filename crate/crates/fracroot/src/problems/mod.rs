//! Problem definitions: the residual-evaluator contract plus the built-in
//! benchmark systems and the hybrid solar receiver model.

use num_complex::Complex64;

use crate::complex::ComplexVector;
use crate::error::{Error, Result};

pub mod receiver;

pub use receiver::{receiver_coefficients, receiver_problem, ReceiverCoefficients, ReceiverParams};

type Evaluator = Box<dyn Fn(&[Complex64], &mut [Complex64]) + Send + Sync>;

/// A root-finding problem: a residual `f: C^n -> C^n` whose zeros are sought.
///
/// Evaluators must be stateless and deterministic; sweeps evaluate them from
/// parallel workers. Custom problems are registered by constructing one of
/// these directly.
pub struct ProblemDef {
    name: String,
    dim: usize,
    residual: Evaluator,
    sampling_box: Vec<(f64, f64)>,
    reference_x0: Option<ComplexVector>,
    default_epsilon: f64,
    default_tol_residual: f64,
}

impl ProblemDef {
    /// Create a problem from a residual evaluator writing `f(x)` into `out`.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        residual: impl Fn(&[Complex64], &mut [Complex64]) + Send + Sync + 'static,
    ) -> Self {
        assert!(dim >= 1, "problem dimension must be >= 1");
        Self {
            name: name.into(),
            dim,
            residual: Box::new(residual),
            sampling_box: vec![(-1.0, 1.0); dim],
            reference_x0: None,
            default_epsilon: 1e-4,
            default_tol_residual: 1e-4,
        }
    }

    pub fn with_sampling_box(mut self, sampling_box: Vec<(f64, f64)>) -> Self {
        assert_eq!(sampling_box.len(), self.dim);
        self.sampling_box = sampling_box;
        self
    }

    pub fn with_reference_x0(mut self, x0: &[f64]) -> Self {
        assert_eq!(x0.len(), self.dim);
        self.reference_x0 = Some(ComplexVector::from_real(x0));
        self
    }

    /// Per-problem defaults picked up by the CLI when flags are omitted.
    pub fn with_defaults(mut self, epsilon: f64, tol_residual: f64) -> Self {
        self.default_epsilon = epsilon;
        self.default_tol_residual = tol_residual;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sampling_box(&self) -> &[(f64, f64)] {
        &self.sampling_box
    }

    pub fn reference_x0(&self) -> Option<ComplexVector> {
        self.reference_x0.clone()
    }

    pub fn default_epsilon(&self) -> f64 {
        self.default_epsilon
    }

    pub fn default_tol_residual(&self) -> f64 {
        self.default_tol_residual
    }

    /// Evaluate into a caller buffer; both slices must have length `dim`.
    pub fn residual_into(&self, x: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        (self.residual)(x, out);
    }

    /// Evaluate at a vector, checking the dimension.
    pub fn residual(&self, x: &ComplexVector) -> Result<ComplexVector> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        self.residual_into(x.as_slice(), &mut out);
        Ok(ComplexVector::new(out))
    }

    /// Residual norm at a real point.
    pub fn residual_norm_at_real(&self, x: &[f64]) -> Result<f64> {
        Ok(self.residual(&ComplexVector::from_real(x))?.norm2())
    }
}

impl std::fmt::Debug for ProblemDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemDef")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish_non_exhaustive()
    }
}

/// Names of the built-in problems, in CLI display order.
pub const BUILTIN_NAMES: [&str; 4] = ["example1", "example2", "example3", "receiver"];

/// Look up a built-in problem by name (receiver with default parameters).
pub fn builtin(name: &str) -> Option<ProblemDef> {
    match name {
        "example1" => Some(example1()),
        "example2" => Some(example2()),
        "example3" => Some(example3()),
        "receiver" => Some(receiver_problem(&ReceiverParams::default())),
        _ => None,
    }
}

/// Two-dimensional mixed trigonometric/exponential system.
///
/// ```text
/// f1 = sin(x1 x2)/2 - x2/(4 pi) - x1/2
/// f2 = (1 - 1/(4 pi)) (e^(2 x1) - e) + (e/pi) x2 - 2 e x1
/// ```
pub fn example1() -> ProblemDef {
    use std::f64::consts::{E, PI};
    ProblemDef::new("example1", 2, |x, out| {
        let (x1, x2) = (x[0], x[1]);
        out[0] = 0.5 * (x1 * x2).sin() - x2 / (4.0 * PI) - 0.5 * x1;
        out[1] = (1.0 - 1.0 / (4.0 * PI)) * ((2.0 * x1).exp() - E) + E / PI * x2 - 2.0 * E * x1;
    })
    .with_sampling_box(vec![(-2.0, 2.0); 2])
    .with_reference_x0(&[1.03, 1.03])
    .with_defaults(1e-3, 1e-4)
}

/// Three-dimensional system with cubic couplings and hyperbolics.
pub fn example2() -> ProblemDef {
    ProblemDef::new("example2", 3, |x, out| {
        let (x1, x2, x3) = (x[0], x[1], x[2]);
        out[0] = -3.6 * x3 * (x1 * x1 * x1 * x2 + 1.0) - 3.6 * (x2 * x2).cos() + 10.8;
        out[1] = -1.6 * x1 * (x1 + x2 * x2 * x2 * x3) - 1.6 * x3.sinh() + 6.4;
        out[2] = -4.0 * x2 * (x1 * x3 * x3 * x3 + 1.0) - 4.0 * x1.cosh() + 24.0;
    })
    .with_sampling_box(vec![(-2.0, 2.0); 3])
    .with_reference_x0(&[1.12, 1.12, 1.12])
    .with_defaults(1e-3, 1e-4)
}

/// Linear 3x3 system `A x = b` written as the residual `A x - b`.
pub fn example3() -> ProblemDef {
    ProblemDef::new("example3", 3, |x, out| {
        let (x1, x2, x3) = (x[0], x[1], x[2]);
        out[0] = 5.0 * x1 - 4.0 * x2 + 3.0 * x3 - 18.0;
        out[1] = 2.0 * x1 + 5.0 * x2 - 6.0 * x3 - 24.0;
        out[2] = -2.0 * x1 + 7.0 * x2 + 12.0 * x3 - 30.0;
    })
    .with_sampling_box(vec![(0.0, 8.0); 3])
    .with_reference_x0(&[0.64, 0.64, 0.64])
    .with_defaults(1e-3, 1e-4)
}

/// Exact solution of the linear benchmark, by Cramer's rule:
/// `(3762, 2448, 774) / 630`.
pub const EXAMPLE3_EXACT: [f64; 3] = [
    3762.0 / 630.0, // 5.9714285714...
    2448.0 / 630.0, // 3.8857142857...
    774.0 / 630.0,  // 1.2285714286...
];
