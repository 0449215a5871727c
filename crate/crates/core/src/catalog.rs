//! The named matrices: unit matrix, six isometric generators, nine metamorphic
//! generators and the four shifting generators `t0..t3`.
//!
//! Entries come from `data/generators.csv`, one literal term per line.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::mat4::Mat4;
use crate::ring::{Monomial, RingElem};

const GENERATOR_DATA: &str = include_str!("../data/generators.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorId {
    One,
    B0,
    B0p,
    B1,
    B2,
    D1,
    D2,
    F1,
    F2,
    F3,
    H1,
    H2,
    F3p,
    P0,
    P3,
    P3p,
    T0,
    T1,
    T2,
    T3,
}

use GeneratorId::*;

impl GeneratorId {
    pub const ALL: [GeneratorId; 20] = [
        One, B0, B0p, B1, B2, D1, D2, F1, F2, F3, H1, H2, F3p, P0, P3, P3p, T0, T1, T2, T3,
    ];

    /// Isometric generators in table order: first family, then second family.
    pub const ISOMETRIC: [GeneratorId; 6] = [B0, B2, D2, B0p, B1, D1];

    /// Metamorphic generators in table order, grouped by commuting triplet.
    pub const METAMORPHIC: [GeneratorId; 9] = [F1, F2, F3, H1, H2, F3p, P0, P3, P3p];

    pub const JEFFREY: [GeneratorId; 4] = [T0, T1, T2, T3];

    /// The 16-element basis of all 4×4 matrices: unit matrix plus the 15 generators.
    pub const BASIS: [GeneratorId; 16] = [
        One, B0, B2, D2, B0p, B1, D1, F1, F2, F3, H1, H2, F3p, P0, P3, P3p,
    ];

    /// Shell-safe name.
    pub fn name(self) -> &'static str {
        match self {
            One => "One",
            B0 => "B0",
            B0p => "B0p",
            B1 => "B1",
            B2 => "B2",
            D1 => "D1",
            D2 => "D2",
            F1 => "F1",
            F2 => "F2",
            F3 => "F3",
            H1 => "H1",
            H2 => "H2",
            F3p => "F3p",
            P0 => "P0",
            P3 => "P3",
            P3p => "P3p",
            T0 => "T0",
            T1 => "T1",
            T2 => "T2",
            T3 => "T3",
        }
    }

    /// Conventional typeset name (primes instead of a `p` suffix).
    pub fn display_name(self) -> &'static str {
        match self {
            One => "1",
            B0p => "B0'",
            F3p => "F3'",
            P3p => "P3'",
            other => other.name(),
        }
    }

    pub fn is_jeffrey(self) -> bool {
        matches!(self, T0 | T1 | T2 | T3)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    /// Accepts the shell-safe names and the primed spellings (`B0'`, `F3'`, `P3'`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        GeneratorId::ALL
            .into_iter()
            .find(|id| id.name() == t || id.display_name() == t)
            .or(match t {
                "1" | "one" | "ONE" | "I" => Some(One),
                "t0" => Some(T0),
                "t1" => Some(T1),
                "t2" => Some(T2),
                "t3" => Some(T3),
                _ => None,
            })
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }
}

impl Serialize for GeneratorId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for GeneratorId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn parse_catalog(data: &str) -> Result<Vec<Mat4>> {
    let mut mats = vec![Mat4::zero(); GeneratorId::ALL.len()];
    for (lineno, line) in data.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| Error::Fixture(format!("generators.csv:{}: {what}", lineno + 1));
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [id, row, col, num, den, q, pi] = fields[..] else {
            return Err(bad("expected 7 fields"));
        };
        let id: GeneratorId = id.parse()?;
        let int = |s: &str| s.parse::<i64>().map_err(|_| bad("not an integer"));
        let (row, col) = (int(row)? as usize, int(col)? as usize);
        if row > 3 || col > 3 {
            return Err(bad("index out of range"));
        }
        let den = int(den)?;
        if den == 0 {
            return Err(bad("zero denominator"));
        }
        let m = &mut mats[id.index()];
        let value = m.entry(row, col) + &RingElem::term(int(num)?, den, int(q)?, int(pi)?);
        m.set(row, col, value);
    }
    Ok(mats)
}

fn catalog() -> &'static [Mat4] {
    static CATALOG: OnceLock<Vec<Mat4>> = OnceLock::new();
    CATALOG.get_or_init(|| parse_catalog(GENERATOR_DATA).expect("embedded generator table is valid"))
}

/// Exact matrix of a named generator.
pub fn generator(id: GeneratorId) -> &'static Mat4 {
    &catalog()[id.index()]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryClass {
    /// `M·Xᵗ·M = −X`: exponentiates to metric-preserving maps.
    Isometric,
    /// `M·Xᵗ·M = X`.
    Metamorphic,
    Neither,
}

/// Classifies by behaviour under the counter transpose. The zero matrix
/// satisfies both conditions and is reported as [`SymmetryClass::Isometric`].
pub fn symmetry_class(x: &Mat4) -> SymmetryClass {
    let ct = x.counter_transpose();
    if ct == -x {
        SymmetryClass::Isometric
    } else if &ct == x {
        SymmetryClass::Metamorphic
    } else {
        SymmetryClass::Neither
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareClass {
    /// `X·X = q^(2α)·1`
    Boost(i64),
    /// `X·X = −q^(2α)·1`
    Rotation(i64),
    Other,
}

pub fn classify_square(x: &Mat4) -> SquareClass {
    let sq = x * x;
    let d = sq.entry(0, 0);
    let scalar = (0..4).all(|r| (0..4).all(|c| if r == c { sq.entry(r, c) == d } else { sq.entry(r, c).is_zero() }));
    if !scalar {
        return SquareClass::Other;
    }
    match d.as_monomial() {
        Some((c, Monomial { q, pi: 0 })) if q % 2 == 0 && c.abs().is_one() => {
            if c.is_positive() {
                SquareClass::Boost(q / 2)
            } else {
                SquareClass::Rotation(q / 2)
            }
        }
        _ => SquareClass::Other,
    }
}

/// The order α such that every term of entry (μ, ν) carries `q^(ν−μ+α)`,
/// or `None` if the entries mix orders. The zero matrix has no order.
pub fn homogeneity_order(x: &Mat4) -> Option<i64> {
    let mut order = None;
    for r in 0..4 {
        for c in 0..4 {
            for (m, _) in x.entry(r, c).terms() {
                let alpha = m.q - (c as i64 - r as i64);
                match order {
                    None => order = Some(alpha),
                    Some(a) if a != alpha => return None,
                    _ => {}
                }
            }
        }
    }
    order
}

/// Dimension of the space of real 4×4 matrices in a symmetry class,
/// i.e. the number of free parameters left by `M·Xᵗ·M = ∓X`.
pub fn free_parameters(class: SymmetryClass) -> usize {
    let sign: i64 = match class {
        SymmetryClass::Isometric => -1,
        SymmetryClass::Metamorphic => 1,
        SymmetryClass::Neither => return 0,
    };
    // matrix of X ↦ ct(X) − sign·X on the coordinate basis E_{rc}
    let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); 16]; 16];
    for r in 0..4 {
        for c in 0..4 {
            let j = 4 * r + c;
            let mirrored = 4 * (3 - c) + (3 - r);
            rows[mirrored][j] += BigRational::one();
            rows[j][j] -= BigRational::from_integer(BigInt::from(sign));
        }
    }
    16 - rank(rows)
}

fn rank(mut a: Vec<Vec<BigRational>>) -> usize {
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &pivot;
                for k in col..ncols {
                    let delta = &f * &a[rank][k];
                    a[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}
