//! 4×4 matrices over the exact ring, their numeric counterparts, and the metric.
//!
//! Indices follow the fundamental-measure convention: row μ, column ν, both
//! running over 0..4, where component ν of a vector carries units (length)^ν.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::RingElem;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Mat4 {
    rows: [[RingElem; 4]; 4],
}

impl Mat4 {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> RingElem) -> Self {
        Mat4 {
            rows: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))),
        }
    }

    pub fn from_rows(rows: [[RingElem; 4]; 4]) -> Self {
        Mat4 { rows }
    }

    pub fn zero() -> Self {
        Mat4::default()
    }

    pub fn identity() -> Self {
        Mat4::from_fn(|r, c| if r == c { RingElem::one() } else { RingElem::zero() })
    }

    /// The counter-diagonal pseudo-metric with signature (+ + − −).
    pub fn metric() -> Self {
        Mat4::from_fn(|r, c| if r + c == 3 { RingElem::one() } else { RingElem::zero() })
    }

    pub fn entry(&self, row: usize, col: usize) -> &RingElem {
        &self.rows[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: RingElem) {
        self.rows[row][col] = value;
    }

    pub fn rows(&self) -> &[[RingElem; 4]; 4] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(RingElem::is_zero)
    }

    pub fn scale(&self, s: &RingElem) -> Mat4 {
        Mat4::from_fn(|r, c| s * &self.rows[r][c])
    }

    pub fn transpose(&self) -> Mat4 {
        Mat4::from_fn(|r, c| self.rows[c][r].clone())
    }

    /// `M · xᵗ · M`: mirrors entries across the counter diagonal,
    /// so entry (μ, ν) of the result is entry (3 − ν, 3 − μ) of `self`.
    pub fn counter_transpose(&self) -> Mat4 {
        Mat4::from_fn(|r, c| self.rows[3 - c][3 - r].clone())
    }

    pub fn commutator(&self, other: &Mat4) -> Mat4 {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Mat4) -> Mat4 {
        &(self * other) + &(other * self)
    }

    pub fn eval(&self, q: f64) -> Result<NumericMat4> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::NonPositiveQ(q));
        }
        Ok(NumericMat4(std::array::from_fn(|r| {
            std::array::from_fn(|c| self.rows[r][c].eval(q))
        })))
    }
}

impl<'a> Mul<&'a Mat4> for &'a Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: &Mat4) -> Mat4 {
        Mat4::from_fn(|r, c| {
            let mut acc = RingElem::zero();
            for k in 0..4 {
                let (a, b) = (&self.rows[r][k], &rhs.rows[k][c]);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
    }
}

impl<'a> Add<&'a Mat4> for &'a Mat4 {
    type Output = Mat4;
    fn add(self, rhs: &Mat4) -> Mat4 {
        Mat4::from_fn(|r, c| &self.rows[r][c] + &rhs.rows[r][c])
    }
}

impl<'a> Sub<&'a Mat4> for &'a Mat4 {
    type Output = Mat4;
    fn sub(self, rhs: &Mat4) -> Mat4 {
        Mat4::from_fn(|r, c| &self.rows[r][c] - &rhs.rows[r][c])
    }
}

impl Neg for &Mat4 {
    type Output = Mat4;
    fn neg(self) -> Mat4 {
        Mat4::from_fn(|r, c| -&self.rows[r][c])
    }
}

impl fmt::Debug for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat4\n{self}")
    }
}

impl fmt::Display for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect();
        let width: Vec<usize> = (0..4)
            .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(1))
            .collect();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&width)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// A 4-vector of fundamental measures; component ν carries units (length)^ν.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NumericVec4(pub [f64; 4]);

impl NumericVec4 {
    pub fn new(u0: f64, u1: f64, u2: f64, u3: f64) -> Self {
        NumericVec4([u0, u1, u2, u3])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

/// `uᵗ · M · v = u0·v3 + u1·v2 + u2·v1 + u3·v0`.
pub fn bilinear(u: &NumericVec4, v: &NumericVec4) -> f64 {
    let (u, v) = (&u.0, &v.0);
    (u[0] * v[3] + u[3] * v[0]) + (u[1] * v[2] + u[2] * v[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NumericMat4(pub [[f64; 4]; 4]);

impl NumericMat4 {
    pub fn zero() -> Self {
        NumericMat4([[0.0; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::from_fn(|r, c| if r == c { 1.0 } else { 0.0 })
    }

    pub fn metric() -> Self {
        Self::from_fn(|r, c| if r + c == 3 { 1.0 } else { 0.0 })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> f64) -> Self {
        NumericMat4(std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.0[c][r])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(|r, c| s * self.0[r][c])
    }

    pub fn column(&self, c: usize) -> NumericVec4 {
        NumericVec4(std::array::from_fn(|r| self.0[r][c]))
    }

    pub fn apply(&self, v: &NumericVec4) -> NumericVec4 {
        NumericVec4(std::array::from_fn(|r| {
            (0..4).map(|k| self.0[r][k] * v.0[k]).sum()
        }))
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    /// Largest absolute entry.
    pub fn max_norm(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..4)
            .map(|c| (0..4).map(|r| self.0[r][c].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &NumericMat4) -> f64 {
        (self - other).max_norm()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    pub fn det(&self) -> f64 {
        // Laplace expansion along the first row with 3x3 minors
        let m = &self.0;
        let minor = |skip: usize| {
            let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
            let a = |r: usize, i: usize| m[r][cols[i]];
            a(1, 0) * (a(2, 1) * a(3, 2) - a(2, 2) * a(3, 1))
                - a(1, 1) * (a(2, 0) * a(3, 2) - a(2, 2) * a(3, 0))
                + a(1, 2) * (a(2, 0) * a(3, 1) - a(2, 1) * a(3, 0))
        };
        (0..4)
            .map(|c| {
                let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][c] * minor(c)
            })
            .sum()
    }
}

impl<'a> Mul<&'a NumericMat4> for &'a NumericMat4 {
    type Output = NumericMat4;
    fn mul(self, rhs: &NumericMat4) -> NumericMat4 {
        NumericMat4::from_fn(|r, c| (0..4).map(|k| self.0[r][k] * rhs.0[k][c]).sum())
    }
}

impl<'a> Add<&'a NumericMat4> for &'a NumericMat4 {
    type Output = NumericMat4;
    fn add(self, rhs: &NumericMat4) -> NumericMat4 {
        NumericMat4::from_fn(|r, c| self.0[r][c] + rhs.0[r][c])
    }
}

impl<'a> Sub<&'a NumericMat4> for &'a NumericMat4 {
    type Output = NumericMat4;
    fn sub(self, rhs: &NumericMat4) -> NumericMat4 {
        NumericMat4::from_fn(|r, c| self.0[r][c] - rhs.0[r][c])
    }
}

/// Coefficients `[c0, c1, c2, c3]` of the monic characteristic polynomial
/// `λ⁴ + c3·λ³ + c2·λ² + c1·λ + c0` (Faddeev–LeVerrier).
pub fn characteristic_polynomial(a: &NumericMat4) -> [f64; 4] {
    let id = NumericMat4::identity();
    let mut m = *a;
    let c3 = -m.trace();
    m = a * &(&m + &id.scale(c3));
    let c2 = -m.trace() / 2.0;
    m = a * &(&m + &id.scale(c2));
    let c1 = -m.trace() / 3.0;
    m = a * &(&m + &id.scale(c1));
    let c0 = -m.trace() / 4.0;
    [c0, c1, c2, c3]
}

/// Eigenvalues of a real symmetric 4×4 matrix, ascending, from the closed-form
/// roots of its characteristic polynomial (Ferrari's method).
pub fn symmetric_eigenvalues(a: &NumericMat4) -> [f64; 4] {
    let [c0, c1, c2, c3] = characteristic_polynomial(a);
    let mut roots = real_quartic_roots(c3, c2, c1, c0);
    roots.sort_by(f64::total_cmp);
    roots
}

/// Roots of `x⁴ + b·x³ + c·x² + d·x + e` assuming all four are real.
fn real_quartic_roots(b: f64, c: f64, d: f64, e: f64) -> [f64; 4] {
    let shift = -b / 4.0;
    // depressed quartic y^4 + p y^2 + r1 y + r0
    let p = c - 3.0 * b * b / 8.0;
    let r1 = d - b * c / 2.0 + b * b * b / 8.0;
    let r0 = e - b * d / 4.0 + b * b * c / 16.0 - 3.0 * b.powi(4) / 256.0;
    let scale = 1.0 + p.abs() + r0.abs().sqrt();

    let ys = if r1.abs() <= 1e-14 * scale * scale.sqrt() {
        let disc = (p * p - 4.0 * r0).max(0.0).sqrt();
        let z1 = ((-p + disc) / 2.0).max(0.0).sqrt();
        let z2 = ((-p - disc) / 2.0).max(0.0).sqrt();
        [z1, -z1, z2, -z2]
    } else {
        // resolvent cubic 8m^3 + 8p m^2 + (2p^2 - 8 r0) m - r1^2 = 0, largest root
        let m = largest_cubic_root(p, (p * p - 4.0 * r0) / 4.0, -r1 * r1 / 8.0);
        let s = (2.0 * m).max(0.0).sqrt();
        let mut out = [0.0; 4];
        for (k, sign) in [1.0, -1.0].into_iter().enumerate() {
            // y^2 + sign*s*y + (p/2 + m - sign*r1/(2s))
            let c0 = p / 2.0 + m - sign * r1 / (2.0 * s);
            let disc = (s * s - 4.0 * c0).max(0.0).sqrt();
            out[2 * k] = (-sign * s + disc) / 2.0;
            out[2 * k + 1] = (-sign * s - disc) / 2.0;
        }
        out
    };
    ys.map(|y| y + shift)
}

/// Largest real root of `m³ + a·m² + b·m + c`.
fn largest_cubic_root(a: f64, b: f64, c: f64) -> f64 {
    let p = b - a * a / 3.0;
    let q = 2.0 * a.powi(3) / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;
    let disc = q * q / 4.0 + p.powi(3) / 27.0;
    let t = if disc > 0.0 {
        let sq = disc.sqrt();
        (-q / 2.0 + sq).cbrt() + (-q / 2.0 - sq).cbrt()
    } else if p == 0.0 {
        0.0
    } else {
        let r = (-p / 3.0).sqrt();
        let arg = (3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        2.0 * r * (arg.acos() / 3.0).cos()
    };
    let mut m = t + shift;
    // one Newton step to clean up cancellation
    let f = ((m + a) * m + b) * m + c;
    let df = (3.0 * m + 2.0 * a) * m + b;
    if df.abs() > f64::EPSILON {
        m -= f / df;
    }
    m
}
