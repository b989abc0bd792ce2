//! Real gamma function.
//!
//! Lanczos approximation (g = 7, nine coefficients) with the Euler
//! reflection formula for arguments below 1/2. Relative error stays under
//! the low 1e-13s across `|x| <= 30` away from the poles; near a pole the
//! reflection's sine factor limits attainable accuracy to roughly 1e-11.

use crate::error::{Error, Result};

/// How close to a nonpositive integer counts as hitting a pole.
const POLE_MARGIN: f64 = 1e-12;

/// Lanczos coefficients for g = 7 (the GSL set).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma at a real argument.
///
/// Errors with [`Error::GammaPole`] when `x` is within `1e-12` of a
/// nonpositive integer.
pub fn gamma_real(x: f64) -> Result<f64> {
    if x <= 0.5 && (x - x.round()).abs() < POLE_MARGIN && x.round() <= 0.0 {
        return Err(Error::GammaPole { x });
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: gamma(x) gamma(1-x) = pi / sin(pi x).
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * lanczos(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEF[0];
        for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let w = x + LANCZOS_G + 0.5;
        (2.0 * std::f64::consts::PI).sqrt() * w.powf(x + 0.5) * (-w).exp() * acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rel(got: f64, want: f64) -> f64 {
        ((got - want) / want).abs()
    }

    #[test]
    fn factorial_values() {
        assert!(rel(gamma_real(5.0).unwrap(), 24.0) < 1e-12);
        assert!(rel(gamma_real(12.0).unwrap(), 39_916_800.0) < 1e-12);
    }

    #[test]
    fn half_integer_values() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!(rel(gamma_real(0.5).unwrap(), sqrt_pi) < 1e-12);
        assert!(rel(gamma_real(-0.5).unwrap(), -2.0 * sqrt_pi) < 1e-12);
    }

    // Reference values computed with mpmath at 40 digits.
    #[test]
    fn spot_values() {
        let cases = [
            (0.1, 9.51350769866873),
            (1.5, 0.886226925452758),
            (7.3, 1271.4236336639088),
            (20.0, 1.21645100408832e17),
            (29.5, 1.6348125198274267e30),
            (-0.9, -10.570564109631926),
            (-1.3, 3.328347006788609),
            (-7.7, 1.8207416684152617e-4),
            (-29.3, 1.5886944571249757e-31),
            (1e-6, 999999.4227853242),
            (-1e-6, -1000000.577216654),
            (0.9999, 1.0000577314579577),
            (1.0001, 0.9999422883231625),
        ];
        for (x, want) in cases {
            let got = gamma_real(x).unwrap();
            assert!(rel(got, want) < 1e-12, "gamma({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn pole_errors() {
        for x in [0.0, -1.0, -2.0, -7.0, -2.0 + 1e-13, -2.0 - 1e-13] {
            assert!(
                matches!(gamma_real(x), Err(Error::GammaPole { .. })),
                "x = {x}"
            );
        }
        // just outside the pole margin is fine
        assert!(gamma_real(-2.0 + 1e-9).is_ok());
    }

    #[test]
    fn recurrence_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let x = rng.gen_range(0.1..20.0);
            let lhs = gamma_real(x + 1.0).unwrap();
            let rhs = x * gamma_real(x).unwrap();
            assert!(rel(lhs, rhs) < 1e-10, "recurrence failed at x = {x}");
        }
    }

    #[test]
    fn reflection_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut tested = 0;
        while tested < 1000 {
            let x: f64 = rng.gen_range(-5.0..5.0);
            if (x - x.round()).abs() < 1e-4 {
                continue;
            }
            tested += 1;
            let lhs = gamma_real(x).unwrap() * gamma_real(1.0 - x).unwrap();
            let rhs = std::f64::consts::PI / (std::f64::consts::PI * x).sin();
            assert!(rel(lhs, rhs) < 1e-9, "reflection failed at x = {x}");
        }
    }
}
