//! Hybrid solar receiver: a concentrator photovoltaic cell thermally coupled
//! to a thermoelectric generator, modeled as a five-equation nonlinear system
//! in `X = (T_cell, T_hot, T_cold, eta_cell, eta_TEG)`.
//!
//! Temperatures are in degrees Celsius; the 273.15 Kelvin offset enters only
//! inside the TEG temperature-ratio term. The derived coefficients `a1..a9`
//! are always computed from the physical parameters at load, never stored.

use serde::{Deserialize, Serialize};

use super::ProblemDef;

/// Physical parameters of the receiver. JSON keys match the field names
/// shown in the serde renames; missing keys take the defaults below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReceiverParams {
    /// Optical efficiency of the concentrator.
    pub eta_opt: f64,
    /// Geometric concentration factor.
    #[serde(rename = "C_g")]
    pub c_g: f64,
    /// Direct normal irradiance, W/m^2.
    #[serde(rename = "DNI")]
    pub dni: f64,
    /// Cell thermal resistivity, K m^2/W.
    pub r_cell: f64,
    /// Solder layer resistivity.
    pub r_sol: f64,
    /// Copper layer resistivity.
    pub r_cop: f64,
    /// Ceramic layer resistivity.
    pub r_cer: f64,
    /// Thermoelectric leg conductivity, W/(m K).
    #[serde(rename = "k_TEG")]
    pub k_teg: f64,
    /// Interconnect resistivity.
    pub r_intercon: f64,
    /// Cell area, m^2.
    #[serde(rename = "A_cell")]
    pub a_cell: f64,
    /// Thermoelectric module area, m^2.
    #[serde(rename = "A_TEG")]
    pub a_teg: f64,
    /// Fill factor of the thermoelectric legs.
    pub f_star: f64,
    /// Interconnect width parameter, m.
    pub b: f64,
    /// Thermoelectric leg length, m.
    pub l: f64,
    /// Ambient temperature, degrees C.
    #[serde(rename = "T_air")]
    pub t_air: f64,
    /// Heat exchanger resistance, K m^2/W.
    #[serde(rename = "R_heat_exch")]
    pub r_heat_exch: f64,
    /// Reference cell efficiency.
    pub eta_cell_ref: f64,
    /// Cell efficiency temperature coefficient, 1/K.
    pub gamma_cell: f64,
    /// Thermoelectric figure of merit.
    #[serde(rename = "ZT")]
    pub zt: f64,
}

impl Default for ReceiverParams {
    fn default() -> Self {
        Self {
            eta_opt: 0.85,
            c_g: 800.0,
            dni: 900.0,
            r_cell: 3e-6,
            r_sol: 1.603e-6,
            r_cop: 7.5e-7,
            r_cer: 8e-6,
            k_teg: 1.5,
            r_intercon: 2.331e-7,
            a_cell: 9e-6,
            a_teg: 5.04e-5,
            f_star: 0.7,
            b: 5e-4,
            l: 5e-4,
            t_air: 20.0,
            r_heat_exch: 0.5,
            eta_cell_ref: 0.43,
            gamma_cell: 4.6e-4,
            zt: 1.0,
        }
    }
}

impl ReceiverParams {
    /// Parse from JSON, filling missing keys with the defaults.
    pub fn from_json(json: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(json)
    }
}

/// The nine derived coefficients of the receiver system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReceiverCoefficients {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub a5: f64,
    pub a6: f64,
    pub a7: f64,
    pub a8: f64,
    pub a9: f64,
}

impl ReceiverCoefficients {
    pub fn as_array(&self) -> [f64; 9] {
        [
            self.a1, self.a2, self.a3, self.a4, self.a5, self.a6, self.a7, self.a8, self.a9,
        ]
    }
}

/// Compute `a1..a9` from the physical parameters.
pub fn receiver_coefficients(p: &ReceiverParams) -> ReceiverCoefficients {
    // interconnect spreading resistance shared by a2 and a5
    let spread = p.r_intercon
        / (0.5 * (p.f_star * p.a_teg).sqrt() * (p.b * p.f_star.sqrt() + p.a_teg.sqrt()));
    ReceiverCoefficients {
        a1: p.eta_opt * p.c_g * p.dni,
        a2: p.r_cell + p.r_sol + p.a_cell * ((p.r_cop + p.r_cer) / p.a_teg + spread),
        a3: p.a_cell * p.l / (p.f_star * p.a_teg * p.k_teg),
        a4: p.t_air,
        a5: p.a_cell * (spread + p.r_cer / p.a_teg + p.r_heat_exch),
        a6: -p.eta_cell_ref * p.gamma_cell,
        a7: p.eta_cell_ref * (1.0 + 25.0 * p.gamma_cell),
        a8: (1.0 + p.zt).sqrt(),
        a9: 273.15,
    }
}

/// Build the five-equation receiver residual.
///
/// With `X = (x, y, z, v, w)`:
///
/// ```text
/// f1 = -x + y + a1 a2 (1 - v)
/// f2 = -y + z + a1 a3 (1 - v)(1 - w)
/// f3 = -z + a4 + a1 a5 (1 - v)(1 - w)
/// f4 = -v + a6 x + a7
/// f5 = -w + (a8 - 1)(1 - R)(a8 + R)^-1,  R = (z + a9)/(y + a9)
/// ```
///
/// When `y + a9` or `a8 + R` vanishes the complex division yields non-finite
/// components, which the solver reports as a numeric error.
pub fn receiver_problem(params: &ReceiverParams) -> ProblemDef {
    let c = receiver_coefficients(params);
    ProblemDef::new("receiver", 5, move |x, out| {
        let (t_cell, t_hot, t_cold, eff_cell, eff_teg) = (x[0], x[1], x[2], x[3], x[4]);
        let ratio = (t_cold + c.a9) / (t_hot + c.a9);
        out[0] = -t_cell + t_hot + c.a1 * c.a2 * (1.0 - eff_cell);
        out[1] = -t_hot + t_cold + c.a1 * c.a3 * (1.0 - eff_cell) * (1.0 - eff_teg);
        out[2] = -t_cold + c.a4 + c.a1 * c.a5 * (1.0 - eff_cell) * (1.0 - eff_teg);
        out[3] = -eff_cell + c.a6 * t_cell + c.a7;
        out[4] = -eff_teg + (c.a8 - 1.0) * (1.0 - ratio) / (c.a8 + ratio);
    })
    .with_sampling_box(vec![
        (53.0, 54.0),
        (51.0, 52.0),
        (22.0, 23.0),
        (0.0, 1.0),
        (0.0, 1.0),
    ])
    .with_reference_x0(&[53.8, 51.6, 22.1, 0.4, 0.1])
    .with_defaults(1e-4, 5e-3)
}

/// The bracketing pair used to certify that the system has a solution.
pub const RECEIVER_X_A: [f64; 5] = [53.0, 51.0, 22.0, 0.0, 0.0];
pub const RECEIVER_X_B: [f64; 5] = [54.0, 52.0, 23.0, 1.0, 1.0];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexVector;

    #[test]
    fn default_coefficients() {
        let c = receiver_coefficients(&ReceiverParams::default());
        assert_eq!(c.a1, 612000.0);
        assert_eq!(c.a4, 20.0);
        assert!((c.a8 - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert_eq!(c.a9, 273.15);
        // full-pipeline values
        assert!((c.a2 - 6.259465794203672e-6).abs() < 1e-18);
        assert!((c.a3 - 8.503401360544217e-5).abs() < 1e-17);
        assert!((c.a5 - 6.0225372227751005e-6).abs() < 1e-18);
        assert!((c.a6 - (-1.978e-4)).abs() < 1e-16);
        assert!((c.a7 - 0.434945).abs() < 1e-12);
    }

    #[test]
    fn a1_linear_in_dni() {
        let p = ReceiverParams {
            dni: 1000.0,
            ..ReceiverParams::default()
        };
        assert_eq!(receiver_coefficients(&p).a1, 680000.0);
        let p = ReceiverParams {
            dni: 450.0,
            ..ReceiverParams::default()
        };
        assert_eq!(receiver_coefficients(&p).a1, 306000.0);
    }

    #[test]
    fn bracket_point_residuals() {
        let p = receiver_problem(&ReceiverParams::default());
        let fa = p
            .residual(&ComplexVector::from_real(&RECEIVER_X_A))
            .unwrap();
        let expect_a = [1.831, 23.041, 1.686, 0.424, 0.016];
        for (k, want) in expect_a.iter().enumerate() {
            assert!((fa[k].re - want).abs() < 1e-3, "f(X_a)[{k}] = {}", fa[k].re);
        }
        let fb = p
            .residual(&ComplexVector::from_real(&RECEIVER_X_B))
            .unwrap();
        let expect_b = [-2.0, -29.0, -3.0, -0.576, -0.984];
        for (k, want) in expect_b.iter().enumerate() {
            assert!((fb[k].re - want).abs() < 1e-3, "f(X_b)[{k}] = {}", fb[k].re);
        }
        // componentwise sign-change certificate
        for k in 0..5 {
            assert!(fa[k].re * fb[k].re <= 0.0, "component {k}");
        }
    }

    #[test]
    fn reported_root_residual() {
        let p = receiver_problem(&ReceiverParams::default());
        let root =
            ComplexVector::from_real(&[53.80159759, 51.59708283, 22.09436105, 0.4243031, 0.01524]);
        let f = p.residual(&root).unwrap();
        let norm = f.norm2();
        assert!((4.5e-3..=5.5e-3).contains(&norm), "norm = {norm}");
        // per-component display values
        let approx = [0.001, 0.0, -0.005, -0.0, 0.001];
        for (k, want) in approx.iter().enumerate() {
            assert!((f[k].re - want).abs() < 5e-4, "f[{k}] = {}", f[k].re);
        }
    }

    #[test]
    fn json_overrides() {
        let p = ReceiverParams::from_json(r#"{"DNI": 1000.0, "ZT": 0.0}"#).unwrap();
        assert_eq!(p.dni, 1000.0);
        assert_eq!(p.zt, 0.0);
        // untouched keys keep defaults
        assert_eq!(p.eta_opt, 0.85);
        assert_eq!(p.r_intercon, 2.331e-7);
        let c = receiver_coefficients(&p);
        assert_eq!(c.a1, 680000.0);
        assert_eq!(c.a8, 1.0);

        assert!(ReceiverParams::from_json(r#"{"DNi": 1.0}"#).is_err());
        assert_eq!(
            ReceiverParams::from_json("{}").unwrap(),
            ReceiverParams::default()
        );
    }

    #[test]
    fn singular_denominator_goes_nonfinite() {
        let p = receiver_problem(&ReceiverParams::default());
        let x = ComplexVector::from_real(&[53.0, -273.15, 22.0, 0.0, 0.0]);
        let f = p.residual(&x).unwrap();
        assert!(!f.is_finite());
    }
}
