//! Closed-form Riemann-Liouville fractional derivatives (base point 0) and
//! the diagonal pseudo-Jacobian built from them.
//!
//! Only two closed forms are needed: the derivative of a monomial `x^mu`,
//! `gamma(mu+1)/gamma(mu-alpha+1) x^(mu-alpha)`, and its `mu = 0` case, the
//! derivative of a constant, which is nonzero for non-integer order. The
//! pseudo-Jacobian entry at component `k` is the order-`beta` derivative of
//! the constant 1 evaluated at `x_k`, plus a regularizer `epsilon`; `beta`
//! falls back to order 1 when `x_k` is exactly zero so the `x^(-alpha)`
//! singularity at the origin is never touched.

use num_complex::Complex64;

use crate::complex::{cpow, ComplexVector};
use crate::error::{Error, Result};
use crate::gamma::gamma_real;

/// Default distance a derivative order must keep from 0, 1, and 2.
pub const DEFAULT_ORDER_MARGIN: f64 = 1e-4;

/// A validated fractional derivative order in `[0, 2]` away from integers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    alpha: f64,
}

impl FracOrder {
    /// Validate with the default margin of `1e-4` from 0, 1, and 2.
    pub fn new(alpha: f64) -> Result<Self> {
        Self::with_margin(alpha, DEFAULT_ORDER_MARGIN)
    }

    /// Validate with a caller-chosen margin from the integers.
    pub fn with_margin(alpha: f64, margin: f64) -> Result<Self> {
        let ok = alpha.is_finite()
            && (0.0..=2.0).contains(&alpha)
            && [0.0, 1.0, 2.0].iter().all(|n| (alpha - n).abs() >= margin);
        if ok {
            Ok(Self { alpha })
        } else {
            Err(Error::InvalidOrder { alpha, margin })
        }
    }

    pub fn value(self) -> f64 {
        self.alpha
    }
}

/// Riemann-Liouville derivative of `x^mu` (order `alpha`, base point 0):
/// `gamma(mu+1)/gamma(mu-alpha+1) x^(mu-alpha)`.
///
/// Requires `mu > -1`. The order is a raw real here: integer orders are fine
/// as long as `mu - alpha + 1` stays off the gamma poles.
pub fn rl_deriv_monomial(mu: f64, alpha: f64, x: Complex64) -> Result<Complex64> {
    if mu <= -1.0 {
        return Err(Error::InvalidConfig(format!(
            "monomial exponent mu = {mu} must exceed -1"
        )));
    }
    let coef = gamma_real(mu + 1.0)? / gamma_real(mu - alpha + 1.0)?;
    Ok(coef * cpow(x, mu - alpha)?)
}

/// Riemann-Liouville derivative of a constant `c` at `x`:
/// `c x^(-alpha) / gamma(1 - alpha)`, and exactly zero for `alpha = 1`
/// (the classical derivative of a constant).
pub fn rl_deriv_const(c: f64, alpha: f64, x: Complex64) -> Result<Complex64> {
    if alpha == 1.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(c / gamma_real(1.0 - alpha)? * cpow(x, -alpha)?)
}

/// Order selection for one iterate component: the sweep order `alpha` away
/// from the origin, integer order 1 exactly at it. The zero test is exact on
/// both components.
pub fn beta_switch(alpha: FracOrder, xk: Complex64) -> f64 {
    if xk.re == 0.0 && xk.im == 0.0 {
        1.0
    } else {
        alpha.value()
    }
}

/// The diagonal of the pseudo-Jacobian `P`. Off-diagonal entries are
/// identically zero, so only the diagonal is ever formed.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoJacobianDiag {
    pub entries: ComplexVector,
    pub epsilon: f64,
    pub alpha: FracOrder,
}

/// Build the pseudo-Jacobian diagonal at an iterate.
///
/// Entry `k` is `rl_deriv_const(1, beta_switch(alpha, x_k), x_k) + epsilon`;
/// when the switch selects order 1 (zero component) the entry is exactly
/// `epsilon`.
pub fn pseudo_jacobian_diag(
    x: &ComplexVector,
    alpha: FracOrder,
    epsilon: f64,
) -> Result<PseudoJacobianDiag> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "epsilon = {epsilon} must lie in (0, 1)"
        )));
    }
    let entries = x
        .iter()
        .map(|&xk| {
            let beta = beta_switch(alpha, xk);
            Ok(rl_deriv_const(1.0, beta, xk)? + epsilon)
        })
        .collect::<Result<Vec<Complex64>>>()?;
    Ok(PseudoJacobianDiag {
        entries: ComplexVector::new(entries),
        epsilon,
        alpha,
    })
}
