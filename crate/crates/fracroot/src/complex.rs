//! Complex scalars, vectors, and the elementary functions the built-in
//! residuals need.
//!
//! Scalars are [`num_complex::Complex64`]; this module adds the
//! principal-branch power, the Euclidean norm used everywhere in solver
//! stopping rules, and a dense [`ComplexVector`].

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Principal-branch complex power `z^w` for real `w`:
/// `exp(w (ln|z| + i arg z))` with `arg z` in `(-pi, pi]`.
///
/// `0^w` is `0` for `w > 0` and `1` for `w = 0`; negative powers of zero are
/// a [`Error::ZeroBase`] error.
pub fn cpow(z: Complex64, w: f64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return if w > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else if w == 0.0 {
            Ok(Complex64::new(1.0, 0.0))
        } else {
            Err(Error::ZeroBase { exponent: w })
        };
    }
    // polar form keeps positive real bases exactly real: sin(w*0) == 0
    let (r, theta) = z.to_polar();
    Ok(Complex64::from_polar(r.powf(w), w * theta))
}

/// Euclidean norm `sqrt(sum |z_k|^2)` of a slice of complex scalars.
pub fn norm2_slice(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// The elementary functions appearing in the benchmark residuals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Sin,
    Cos,
    Exp,
    Sinh,
    Cosh,
}

/// Apply an elementary function to a complex argument.
pub fn complex_elementary(f: Elementary, z: Complex64) -> Complex64 {
    match f {
        Elementary::Sin => z.sin(),
        Elementary::Cos => z.cos(),
        Elementary::Exp => z.exp(),
        Elementary::Sinh => z.sinh(),
        Elementary::Cosh => z.cosh(),
    }
}

/// A dense complex vector: the iterate, residual, and root representation.
///
/// Always nonempty; the dimension is the element count.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    elems: Vec<Complex64>,
}

impl ComplexVector {
    pub fn new(elems: Vec<Complex64>) -> Self {
        assert!(!elems.is_empty(), "ComplexVector must have dimension >= 1");
        Self { elems }
    }

    /// Build from real components (imaginary parts zero).
    pub fn from_real(re: &[f64]) -> Self {
        Self::new(re.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.elems
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.elems.iter()
    }

    /// Euclidean norm of the vector.
    pub fn norm2(&self) -> f64 {
        norm2_slice(&self.elems)
    }

    /// Euclidean distance to another vector of the same dimension.
    pub fn distance(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.elems
            .iter()
            .zip(&other.elems)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest `|Im|` over the components.
    pub fn max_abs_imag(&self) -> f64 {
        self.elems.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Copy with every imaginary part set to zero.
    pub fn with_zero_imag(&self) -> Self {
        Self::new(
            self.elems
                .iter()
                .map(|z| Complex64::new(z.re, 0.0))
                .collect(),
        )
    }

    /// Real parts of the components.
    pub fn real_parts(&self) -> Vec<f64> {
        self.elems.iter().map(|z| z.re).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.elems
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl std::ops::Index<usize> for ComplexVector {
    type Output = Complex64;
    fn index(&self, k: usize) -> &Complex64 {
        &self.elems[k]
    }
}

impl From<Vec<Complex64>> for ComplexVector {
    fn from(elems: Vec<Complex64>) -> Self {
        Self::new(elems)
    }
}
