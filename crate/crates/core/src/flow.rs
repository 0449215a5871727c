//! One-parameter flows exp(param · X(q)) of the catalog generators, and a
//! scaling-and-squaring Taylor exponential used as an independent oracle.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::catalog::{classify_square, generator, GeneratorId, SquareClass};
use crate::error::{Error, Result};
use crate::mat4::{Mat4, NumericMat4};
use crate::special::{f3, sinc, sinhc};

pub const GRID_Q: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];
pub const GRID_PARAM: [f64; 4] = [-2.0, -0.5, 0.1, 1.5];

pub const DEFAULT_ORACLE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowSpec {
    pub gen: GeneratorId,
    pub param: f64,
    pub q: f64,
}

impl FlowSpec {
    pub fn new(gen: GeneratorId, param: f64, q: f64) -> Self {
        FlowSpec { gen, param, q }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowMethod {
    ClosedForm,
    Series,
}

impl std::str::FromStr for FlowMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "closed" | "closed_form" => Ok(FlowMethod::ClosedForm),
            "series" => Ok(FlowMethod::Series),
            _ => Err(format!("unknown flow method `{s}` (expected closed or series)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowResult {
    pub matrix: NumericMat4,
    pub method: FlowMethod,
}

fn check_inputs(param: f64, q: f64) -> Result<()> {
    if q <= 0.0 || !q.is_finite() {
        return Err(Error::NonPositiveQ(q));
    }
    if !param.is_finite() {
        return Err(Error::NonFiniteParameter(param));
    }
    Ok(())
}

pub fn flow(spec: &FlowSpec, method: FlowMethod) -> Result<FlowResult> {
    let matrix = match method {
        FlowMethod::ClosedForm => closed_flow(spec)?,
        FlowMethod::Series => expm_oracle(generator(spec.gen), spec.param, spec.q, DEFAULT_ORACLE_TOL)?,
    };
    if !matrix.is_finite() {
        return Err(Error::NonFiniteParameter(spec.param));
    }
    Ok(FlowResult { matrix, method })
}

/// Closed-form exp(param · X(q)).
///
/// Generators with X² = ±q^(2α)·1 use cosh/cos(x)·1 + param·sinhc/sinc(x)·X
/// with x = param·q^α; the Jeffrey flows T1..T3 use their explicit matrices.
pub fn closed_flow(spec: &FlowSpec) -> Result<NumericMat4> {
    let FlowSpec { gen, param, q } = *spec;
    check_inputs(param, q)?;
    match gen {
        GeneratorId::T1 => Ok(t1_flow(param, q)),
        GeneratorId::T2 => Ok(t2_flow(param, q)),
        GeneratorId::T3 => Ok(t3_flow(param, q)),
        _ => {
            let x_mat = generator(gen);
            let (alpha, hyperbolic) = match classify_square(x_mat) {
                SquareClass::Boost(a) => (a, true),
                SquareClass::Rotation(a) => (a, false),
                SquareClass::Other => return Err(Error::NoClosedForm(gen.name().to_string())),
            };
            let x = param * q.powi(alpha as i32);
            let (even, odd) = if hyperbolic { (x.cosh(), param * sinhc(x)) } else { (x.cos(), param * sinc(x)) };
            let xq = x_mat.eval(q)?;
            Ok(NumericMat4::from_fn(|r, c| if r == c { even } else { 0.0 } + odd * xq.0[r][c]))
        }
    }
}

/// exp(χ·t1), with s = sin(qχ), c = cos(qχ).
fn t1_flow(chi: f64, q: f64) -> NumericMat4 {
    let x = q * chi;
    let (s, c) = x.sin_cos();
    let sc = sinc(x);
    let q2 = q * q;
    let q3 = q2 * q;
    let d = 16.0 * PI;
    NumericMat4([
        [c + q * s * chi / 2.0, (c * q2 * chi - q * s) / 2.0, -q3 * s * chi / d, (c * q3 * q * chi - 3.0 * s * q3) / d],
        [chi * (sc + c) / 2.0, c - q * s * chi / 2.0, -(3.0 * s * q + c * q2 * chi) / d, -q3 * s * chi / d],
        [4.0 * PI * chi * chi * sc, 4.0 * PI * chi * (sc + c), c - q * s * chi / 2.0, (c * q2 * chi - s * q) / 2.0],
        [4.0 * PI * chi * chi * chi * f3(x), 4.0 * PI * chi * chi * sc, chi * (sc + c) / 2.0, c + q * s * chi / 2.0],
    ])
}

/// exp(χ·t2), with g = exp(-q²χ/(8π)).
fn t2_flow(chi: f64, q: f64) -> NumericMat4 {
    let q2 = q * q;
    let g = (-q2 * chi / (8.0 * PI)).exp();
    let a = g * q2 * chi / (8.0 * PI);
    let b = -g * q2 * q2 * chi / (64.0 * PI * PI);
    NumericMat4([
        [g + a, 0.0, b, 0.0],
        [0.0, g - a, 0.0, b],
        [g * chi, 0.0, g - a, 0.0],
        [0.0, g * chi, 0.0, g + a],
    ])
}

/// exp(χ·t3), with C = cos(y), S = sin(y), y = q³χ/(8π).
fn t3_flow(chi: f64, q: f64) -> NumericMat4 {
    let q2 = q * q;
    let q3 = q2 * q;
    let y = q3 * chi / (8.0 * PI);
    let (s, c) = y.sin_cos();
    let sy = sinc(y);
    let p16 = 16.0 * PI;
    let p128 = 128.0 * PI * PI;
    // S/(2q) - C q² χ/(16π) = q² χ (sinc y - cos y)/(16π) = q² χ y² f3(y)/(16π)
    let e10 = q2 * chi * y * y * f3(y) / p16;
    let e01 = -(8.0 * PI * q * s + c * q3 * q * chi) / p16;
    let e02 = q3 * q2 * s * chi / p128;
    NumericMat4([
        [c - q3 * s * chi / p16, e01, e02, -(24.0 * PI * q3 * s + c * q3 * q3 * chi) / p128],
        [e10, c + q3 * s * chi / p16, (-24.0 * PI * q * s + c * q2 * q2 * chi) / p128, e02],
        [-q * s * chi / 2.0, q2 * chi * y * y * f3(y) / 2.0, c + q3 * s * chi / p16, e01],
        [chi * (sy + c) / 2.0, -q * s * chi / 2.0, e10, c - q3 * s * chi / p16],
    ])
}

/// Taylor series of exp(param · X(q)) with scaling and squaring.
///
/// The argument is scaled by 2^-s so that its 1-norm is at most 0.5, and the
/// series stops once the next term falls below tol/2^s in max norm.
pub fn expm_oracle(x: &Mat4, param: f64, q: f64, tol: f64) -> Result<NumericMat4> {
    check_inputs(param, q)?;
    let a = x.eval(q)?.scale(param);
    Ok(expm(&a, tol))
}

pub fn expm(a: &NumericMat4, tol: f64) -> NumericMat4 {
    let norm = a.norm1();
    let mut s = 0i32;
    while norm / 2f64.powi(s) > 0.5 {
        s += 1;
    }
    let scale = 2f64.powi(s);
    let b = a.scale(1.0 / scale);
    let stop = tol / scale;

    let mut sum = NumericMat4::identity();
    let mut term = NumericMat4::identity();
    for k in 1..=60 {
        term = (&term * &b).scale(1.0 / k as f64);
        sum = &sum + &term;
        if term.max_norm() < stop {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// Max norm of aᵗ·M·a − M.
pub fn invariance_residual(a: &NumericMat4) -> f64 {
    let m = NumericMat4::metric();
    let g = &(&a.transpose() * &m) * a;
    g.max_abs_diff(&m)
}

/// Max norm of flow(p1)·flow(p2) − flow(p1 + p2).
pub fn group_law_residual(gen: GeneratorId, p1: f64, p2: f64, q: f64) -> Result<f64> {
    let a = closed_flow(&FlowSpec::new(gen, p1, q))?;
    let b = closed_flow(&FlowSpec::new(gen, p2, q))?;
    let ab = closed_flow(&FlowSpec::new(gen, p1 + p2, q))?;
    Ok((&a * &b).max_abs_diff(&ab))
}

/// ‖closed − oracle‖_max / (1 + ‖closed‖_max).
pub fn oracle_discrepancy(spec: &FlowSpec, tol: f64) -> Result<f64> {
    let closed = closed_flow(spec)?;
    let series = expm_oracle(generator(spec.gen), spec.param, spec.q, tol)?;
    Ok(closed.max_abs_diff(&series) / (1.0 + closed.max_norm()))
}

pub fn grid() -> impl Iterator<Item = (f64, f64)> {
    GRID_Q.into_iter().flat_map(|q| GRID_PARAM.into_iter().map(move |p| (q, p)))
}
