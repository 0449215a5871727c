//! Fourier-space weight functions of a hard sphere, the Mayer-bond identity,
//! the kernel K_R = exp(R·t1) and a radial inverse transform.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::catalog::GeneratorId;
use crate::error::{Error, Result};
use crate::flow::{closed_flow, FlowSpec};
use crate::mat4::{bilinear, NumericMat4, NumericVec4};
use crate::special::{f3, sinc};

/// The four weights (w0, w1, w2, w3), of dimension length^0..length^3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureVector {
    pub w0: f64,
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
}

impl MeasureVector {
    pub fn to_vec4(self) -> NumericVec4 {
        NumericVec4([self.w0, self.w1, self.w2, self.w3])
    }
}

impl From<MeasureVector> for NumericVec4 {
    fn from(w: MeasureVector) -> Self {
        w.to_vec4()
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveRadius(r))
    }
}

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveQ(q))
    }
}

/// w0 = c + qRs/2, w1 = (qRc + s)/(2q), w2 = 4πRs/q, w3 = 4π(s − qRc)/q³
/// with s = sin(qR), c = cos(qR).
pub fn kr_weights(r: f64, q: f64) -> Result<MeasureVector> {
    check_radius(r)?;
    check_q(q)?;
    let x = q * r;
    let (s, c) = x.sin_cos();
    let sc = sinc(x);
    Ok(MeasureVector {
        w0: c + x * s / 2.0,
        w1: r * (sc + c) / 2.0,
        w2: 4.0 * PI * r * r * sc,
        w3: 4.0 * PI * r * r * r * f3(x),
    })
}

/// Fourier transform of the unit step of range `r_tot`:
/// 4π[sin(qR) − qR cos(qR)]/q³.
pub fn step_hat(r_tot: f64, q: f64) -> Result<f64> {
    check_radius(r_tot)?;
    check_q(q)?;
    Ok(4.0 * PI * r_tot.powi(3) * f3(q * r_tot))
}

/// w(Ra)ᵗ · M · w(Rb); equals step_hat(Ra + Rb, q).
pub fn mayer_bond(ra: f64, rb: f64, q: f64) -> Result<f64> {
    let a = kr_weights(ra, q)?.to_vec4();
    let b = kr_weights(rb, q)?.to_vec4();
    Ok(bilinear(&a, &b))
}

/// K_R = exp(R·t1). Its first column is `kr_weights(R, q)`.
pub fn kernel_matrix(r: f64, q: f64) -> Result<NumericMat4> {
    check_radius(r)?;
    closed_flow(&FlowSpec::new(GeneratorId::T1, r, q))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialQuadrature {
    pub qmax: f64,
    /// Number of Simpson panels; must be even.
    pub panels: usize,
    /// Width w of the factor exp(−(q/w)²) applied to the integrand, if any.
    pub damping_width: Option<f64>,
}

impl Default for RadialQuadrature {
    fn default() -> Self {
        RadialQuadrature::for_length_scale(1.0)
    }
}

impl RadialQuadrature {
    /// qmax = 200/L, 20000 panels, damping width qmax/5.
    pub fn for_length_scale(length: f64) -> Self {
        let qmax = 200.0 / length;
        RadialQuadrature { qmax, panels: 20_000, damping_width: Some(qmax / 5.0) }
    }

    pub fn undamped(qmax: f64, panels: usize) -> Self {
        RadialQuadrature { qmax, panels, damping_width: None }
    }

    fn validate(&self) -> Result<()> {
        if !(self.qmax > 0.0 && self.qmax.is_finite()) {
            return Err(Error::InvalidQuadrature(format!("qmax must be positive, got {}", self.qmax)));
        }
        if self.panels == 0 || !self.panels.is_multiple_of(2) {
            return Err(Error::InvalidQuadrature(format!("panel count must be even and positive, got {}", self.panels)));
        }
        if let Some(w) = self.damping_width {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidQuadrature(format!("damping width must be positive, got {w}")));
            }
        }
        Ok(())
    }
}

/// f(r) = (2π²)⁻¹ ∫₀^qmax q² hat(q) sinc(qr) dq by composite Simpson.
///
/// `hat` is never called at q = 0, where the integrand vanishes.
pub fn inverse_ft_radial(hat: impl Fn(f64) -> f64, r: f64, quad: &RadialQuadrature) -> Result<f64> {
    quad.validate()?;
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::InvalidQuadrature(format!("radius must be non-negative, got {r}")));
    }
    let n = quad.panels;
    let h = quad.qmax / n as f64;
    let mut sum = 0.0;
    for i in 1..=n {
        let q = i as f64 * h;
        let v = hat(q);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand(q));
        }
        let window = quad.damping_width.map_or(1.0, |w| (-(q / w).powi(2)).exp());
        let g = q * q * v * sinc(q * r) * window;
        let weight = if i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        sum += weight * g;
    }
    Ok(sum * h / 3.0 / (2.0 * PI * PI))
}

/// (r, f(r)) samples of the inverse transform of step_hat(R) on [0, rmax].
pub fn step_profile(r_step: f64, rmax: f64, points: usize) -> Result<Vec<(f64, f64)>> {
    check_radius(r_step)?;
    if !(rmax >= 0.0 && rmax.is_finite()) {
        return Err(Error::InvalidQuadrature(format!("rmax must be non-negative, got {rmax}")));
    }
    let quad = RadialQuadrature::for_length_scale(r_step);
    let hat = |q: f64| 4.0 * PI * r_step.powi(3) * f3(q * r_step);
    let step = if points > 1 { rmax / (points - 1) as f64 } else { 0.0 };
    (0..points)
        .map(|i| {
            let r = i as f64 * step;
            Ok((r, inverse_ft_radial(hat, r, &quad)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_step(q: f64) -> f64 {
        step_hat(1.0, q).unwrap()
    }

    #[test]
    fn weights_at_q_pi() {
        let w = kr_weights(1.0, PI).unwrap();
        assert!((w.w0 + 1.0).abs() < 1e-15);
        assert!((w.w1 + 0.5).abs() < 1e-15);
        assert!(w.w2.abs() < 1e-14);
        assert!((w.w3 - 4.0 / PI).abs() < 1e-14);
    }

    #[test]
    fn weights_small_q_limit() {
        let r = 1.7;
        let w = kr_weights(r, 1e-9).unwrap();
        assert!((w.w0 - 1.0).abs() < 1e-15);
        assert!((w.w1 - r).abs() < 1e-15);
        assert!((w.w2 - 4.0 * PI * r * r).abs() < 1e-13);
        assert!((w.w3 - 4.0 * PI * r.powi(3) / 3.0).abs() < 1e-13);
    }

    #[test]
    fn weights_scale_with_radius() {
        let (r, q) = (2.3f64, 0.9);
        let a = kr_weights(r, q).unwrap();
        let b = kr_weights(1.0, q * r).unwrap();
        assert!((a.w0 - b.w0).abs() < 1e-14);
        assert!((a.w1 - r * b.w1).abs() < 1e-14);
        assert!((a.w2 - r * r * b.w2).abs() < 1e-12);
        assert!((a.w3 - r.powi(3) * b.w3).abs() < 1e-12);
    }

    #[test]
    fn weights_reject_bad_domain() {
        assert!(matches!(kr_weights(0.0, 1.0), Err(Error::NonPositiveRadius(_))));
        assert!(matches!(kr_weights(-1.0, 1.0), Err(Error::NonPositiveRadius(_))));
        assert!(matches!(kr_weights(1.0, 0.0), Err(Error::NonPositiveQ(_))));
        assert!(step_hat(1.0, -2.0).is_err());
    }

    #[test]
    fn step_hat_examples() {
        assert!((step_hat(2.0, 1e-9).unwrap() - 32.0 * PI / 3.0).abs() < 1e-12);
        assert!((step_hat(1.0, PI).unwrap() - 4.0 / PI).abs() < 1e-14);
        assert_eq!(step_hat(1.3, 0.7).unwrap(), kr_weights(1.3, 0.7).unwrap().w3);
    }

    #[test]
    fn mayer_examples() {
        let (r, q) = (0.8f64, 1.9f64);
        let x = 2.0 * q * r;
        let explicit = 4.0 * PI * (x.sin() - x * x.cos()) / q.powi(3);
        assert!((mayer_bond(r, r, q).unwrap() - explicit).abs() < 1e-12);
        assert!((mayer_bond(1.0, 0.5, 1e-7).unwrap() - 4.5 * PI).abs() < 1e-10);
        assert_eq!(mayer_bond(1.0, 0.5, 2.0).unwrap(), mayer_bond(0.5, 1.0, 2.0).unwrap());
    }

    #[test]
    fn kernel_first_column_is_weights() {
        let k = kernel_matrix(1.0, 0.8).unwrap();
        let w = kr_weights(1.0, 0.8).unwrap().to_vec4();
        for i in 0..4 {
            assert!((k.0[i][0] - w.0[i]).abs() < 1e-12);
        }
        let k0 = kernel_matrix(1e-300, 0.8).unwrap();
        assert!(k0.max_abs_diff(&NumericMat4::identity()) < 1e-15);
    }

    #[test]
    fn radial_inverse_recovers_unit_step() {
        let quad = RadialQuadrature::default();
        for (r, want) in [(0.0, 1.0), (0.5, 1.0), (1.5, 0.0), (2.0, 0.0)] {
            let f = inverse_ft_radial(unit_step, r, &quad).unwrap();
            assert!((f - want).abs() < 5e-3, "r={r} f={f}");
        }
    }

    #[test]
    fn undamped_truncation_rings_at_origin() {
        let f = inverse_ft_radial(unit_step, 0.0, &RadialQuadrature::undamped(200.0, 20_000)).unwrap();
        assert!((f - 1.0).abs() > 0.1);
    }

    #[test]
    fn radial_inverse_rejects_bad_input() {
        assert!(matches!(
            inverse_ft_radial(unit_step, 0.5, &RadialQuadrature::undamped(200.0, 3)),
            Err(Error::InvalidQuadrature(_))
        ));
        assert!(inverse_ft_radial(unit_step, -1.0, &RadialQuadrature::default()).is_err());
        assert!(matches!(
            inverse_ft_radial(|q| if q > 50.0 { f64::NAN } else { 1.0 }, 0.5, &RadialQuadrature::default()),
            Err(Error::NonFiniteIntegrand(_))
        ));
    }

    #[test]
    fn profile_has_requested_points() {
        let rows = step_profile(1.0, 2.0, 5).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0].0, 0.0);
        assert_eq!(rows[4].0, 2.0);
        assert!((rows[1].1 - 1.0).abs() < 5e-3);
        assert!(rows[4].1.abs() < 5e-3);
    }
}
