//! Finite transforms exactly as published, entry by entry, kept apart from
//! [`crate::flow::closed_flow`] so that they can be diffed against the oracle.

use std::f64::consts::PI;

use serde::Serialize;

use crate::catalog::{generator, GeneratorId};
use crate::error::Result;
use crate::flow::{expm_oracle, grid, DEFAULT_ORACLE_TOL};
use crate::mat4::NumericMat4;

use GeneratorId::*;

/// Relative max-norm threshold above which a printed entry is reported.
pub const ERRATUM_THRESHOLD: f64 = 1e-9;

enum Shape {
    /// exp(±τ) on the diagonal.
    Diagonal([i8; 4]),
    /// Even function on the diagonal, ±q^k·odd(x) off it, x = τ·q^α.
    Paired { alpha: i32, hyperbolic: bool, odd: [(usize, usize, i8, i32); 4] },
}

fn shape(id: GeneratorId) -> Option<Shape> {
    use Shape::*;
    let s = match id {
        B0 => Diagonal([1, 1, -1, -1]),
        B0p => Diagonal([1, -1, 1, -1]),
        P0 => Diagonal([1, -1, -1, 1]),
        T0 => Diagonal([1, 1, 1, 1]),
        B2 => Paired { alpha: 2, hyperbolic: true, odd: [(0, 2, -1, 2), (1, 3, 1, 2), (2, 0, -1, -2), (3, 1, 1, 2)] },
        D2 => Paired { alpha: 2, hyperbolic: false, odd: [(0, 2, -1, 2), (1, 3, 1, 2), (2, 0, 1, -2), (3, 1, -1, -2)] },
        B1 => Paired { alpha: 1, hyperbolic: true, odd: [(0, 1, -1, 1), (1, 0, -1, -1), (2, 3, 1, 1), (3, 2, 1, -1)] },
        D1 => Paired { alpha: 1, hyperbolic: false, odd: [(0, 1, -1, 1), (1, 0, 1, -1), (2, 3, 1, 1), (3, 2, -1, -1)] },
        F1 => Paired { alpha: 1, hyperbolic: false, odd: [(0, 1, -1, 1), (1, 0, 1, -1), (2, 3, -1, 1), (3, 2, 1, -1)] },
        F2 => Paired { alpha: 2, hyperbolic: false, odd: [(0, 2, -1, 2), (1, 3, -1, 2), (2, 0, 1, -2), (3, 1, 1, -2)] },
        F3 => Paired { alpha: 3, hyperbolic: true, odd: [(0, 3, -1, 3), (1, 2, 1, 1), (2, 1, 1, -1), (3, 0, -1, -3)] },
        H1 => Paired { alpha: 1, hyperbolic: true, odd: [(0, 1, -1, 1), (1, 0, -1, -1), (2, 3, -1, 1), (3, 2, -1, -1)] },
        H2 => Paired { alpha: 2, hyperbolic: true, odd: [(0, 2, -1, 2), (1, 3, -1, 2), (2, 0, -1, -2), (3, 1, -1, -2)] },
        F3p => Paired { alpha: 3, hyperbolic: true, odd: [(0, 3, -1, 3), (1, 2, -1, 1), (2, 1, -1, -1), (3, 0, -1, -3)] },
        P3 => Paired { alpha: 3, hyperbolic: false, odd: [(0, 3, -1, 3), (1, 2, -1, 1), (2, 1, 1, -1), (3, 0, 1, -3)] },
        P3p => Paired { alpha: 3, hyperbolic: false, odd: [(0, 3, -1, 3), (1, 2, 1, 1), (2, 1, -1, -1), (3, 0, 1, -3)] },
        One | T1 | T2 | T3 => return None,
    };
    Some(s)
}

/// The published matrix for exp(param·X), evaluated literally.
/// `None` for the identity generator, which has no printed transform of its own.
pub fn printed_flow(id: GeneratorId, param: f64, q: f64) -> Option<NumericMat4> {
    match id {
        One => None,
        T1 => Some(printed_t1(param, q)),
        T2 => Some(printed_t2(param, q)),
        T3 => Some(printed_t3(param, q)),
        _ => Some(match shape(id)? {
            Shape::Diagonal(signs) => {
                NumericMat4::from_fn(|r, c| if r == c { (f64::from(signs[r]) * param).exp() } else { 0.0 })
            }
            Shape::Paired { alpha, hyperbolic, odd } => {
                let x = param * q.powi(alpha);
                let (even, odd_fn) = if hyperbolic { (x.cosh(), x.sinh()) } else { (x.cos(), x.sin()) };
                let mut m = NumericMat4::identity().scale(even);
                for (r, c, sign, k) in odd {
                    m.0[r][c] = f64::from(sign) * q.powi(k) * odd_fn;
                }
                m
            }
        }),
    }
}

fn printed_t1(x: f64, q: f64) -> NumericMat4 {
    let (s, c) = (q * x).sin_cos();
    NumericMat4([
        [c + q * s * x / 2.0, (c * q * q * x - q * s) / 2.0, -q.powi(3) * s * x / (16.0 * PI), (c * q.powi(4) * x - 3.0 * s * q.powi(3)) / (16.0 * PI)],
        [(s + c * q * x) / (2.0 * q), c - q * s * x / 2.0, -(3.0 * s * q + c * q * q * x) / (16.0 * PI), -q.powi(3) * s * x / (16.0 * PI)],
        [4.0 * PI * s * x / q, 4.0 * PI * (s + c * q * x) / q, c - q * s * x / 2.0, (c * q * q * x - s * q) / 2.0],
        [4.0 * PI * (s - c * q * x) / q.powi(3), 4.0 * PI * s * x / q, (s + c * q * x) / (2.0 * q), c + q * s * x / 2.0],
    ])
}

fn printed_t2(x: f64, q: f64) -> NumericMat4 {
    let g = (-q * q * x / (8.0 * PI)).exp();
    let a = g * q * q * x / (8.0 * PI);
    let b = -g * q.powi(4) * x / (64.0 * PI * PI);
    NumericMat4([[g + a, 0.0, b, 0.0], [0.0, g - a, 0.0, b], [g * x, 0.0, g - a, 0.0], [0.0, g * x, 0.0, g + a]])
}

/// The two printed column blocks (columns 0-1 and 2-3) stitched side by side.
fn printed_t3(x: f64, q: f64) -> NumericMat4 {
    let (s, c) = (q.powi(3) * x / (8.0 * PI)).sin_cos();
    let p16 = 16.0 * PI;
    let p128 = 128.0 * PI * PI;
    NumericMat4([
        [c - q.powi(3) * s * x / p16, -(8.0 * PI * q * s + c * q.powi(4) * x) / p16, q.powi(5) * s * x / p128, -(24.0 * PI * q.powi(3) * s + c * q.powi(6) * x) / p128],
        [s / (2.0 * q) - c * q * q * x / p16, c + q.powi(3) * s * x / p16, (-24.0 * PI * q * s + c * q.powi(4) * x) / p128, q.powi(5) * s * x / p128],
        [-q * s * x / 2.0, 4.0 * PI * s / q - c * q * q * x / 2.0, c + q.powi(3) * s * x / p16, -(8.0 * PI * q * s + c * q.powi(4) * x) / p16],
        [4.0 * PI * s / q.powi(3) + c * x / 2.0, -q * s * x / 2.0, s / (2.0 * q) - c * q * q * x / p16, c - q.powi(3) * s * x / p16],
    ])
}

/// A printed matrix entry that disagrees with the series exponential.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowErratum {
    pub gen: GeneratorId,
    pub row: usize,
    pub col: usize,
    /// Worst |printed − oracle| / (1 + ‖oracle‖_max) over the grid.
    pub max_rel_error: f64,
    pub q: f64,
    pub param: f64,
    pub printed: f64,
    pub oracle: f64,
}

impl std::fmt::Display for FlowErratum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "exp(param*{}) entry ({}, {}): printed {:.6e}, series {:.6e} at q={}, param={} (relative error {:.3e})",
            self.gen.display_name(),
            self.row,
            self.col,
            self.printed,
            self.oracle,
            self.q,
            self.param,
            self.max_rel_error
        )
    }
}

/// Scans every printed flow over the standard grid and reports each entry
/// whose relative deviation from the oracle exceeds [`ERRATUM_THRESHOLD`].
pub fn flow_errata() -> Result<Vec<FlowErratum>> {
    let mut out = Vec::new();
    for id in GeneratorId::ALL {
        let mut worst: [[Option<FlowErratum>; 4]; 4] = Default::default();
        for (q, p) in grid() {
            let Some(printed) = printed_flow(id, p, q) else { continue };
            let oracle = expm_oracle(generator(id), p, q, DEFAULT_ORACLE_TOL)?;
            let denom = 1.0 + oracle.max_norm();
            for r in 0..4 {
                for c in 0..4 {
                    let rel = (printed.0[r][c] - oracle.0[r][c]).abs() / denom;
                    let is_worse = worst[r][c].as_ref().is_none_or(|e| rel > e.max_rel_error);
                    if rel > ERRATUM_THRESHOLD && is_worse {
                        worst[r][c] = Some(FlowErratum {
                            gen: id,
                            row: r,
                            col: c,
                            max_rel_error: rel,
                            q,
                            param: p,
                            printed: printed.0[r][c],
                            oracle: oracle.0[r][c],
                        });
                    }
                }
            }
        }
        out.extend(worst.into_iter().flatten().flatten());
    }
    Ok(out)
}
