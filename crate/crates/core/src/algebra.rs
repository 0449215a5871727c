//! Exact decomposition of 4×4 matrices in a named basis and the structure
//! tables built from it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::catalog::{generator, GeneratorId};
use crate::error::{Error, Result};
use crate::mat4::Mat4;
use crate::ring::{FieldElem, RingElem};

/// Coefficients of a matrix in a basis of named generators. Absent means zero.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "BTreeMap<GeneratorId, RingElem>", into = "BTreeMap<GeneratorId, RingElem>")]
pub struct Decomposition {
    coeffs: BTreeMap<GeneratorId, RingElem>,
}

impl From<BTreeMap<GeneratorId, RingElem>> for Decomposition {
    fn from(map: BTreeMap<GeneratorId, RingElem>) -> Self {
        map.into_iter().collect()
    }
}

impl From<Decomposition> for BTreeMap<GeneratorId, RingElem> {
    fn from(d: Decomposition) -> Self {
        d.coeffs
    }
}

impl FromIterator<(GeneratorId, RingElem)> for Decomposition {
    fn from_iter<I: IntoIterator<Item = (GeneratorId, RingElem)>>(iter: I) -> Self {
        let mut d = Decomposition::default();
        for (id, c) in iter {
            d.add(id, &c);
        }
        d
    }
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(id: GeneratorId, coeff: RingElem) -> Self {
        [(id, coeff)].into_iter().collect()
    }

    pub fn add(&mut self, id: GeneratorId, coeff: &RingElem) {
        let slot = self.coeffs.entry(id).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&id);
        }
    }

    pub fn get(&self, id: GeneratorId) -> RingElem {
        self.coeffs.get(&id).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (GeneratorId, &RingElem)> {
        self.coeffs.iter().map(|(id, c)| (*id, c))
    }

    /// `Σ coeff · generator`
    pub fn reconstruct(&self) -> Mat4 {
        self.coeffs.iter().fold(Mat4::zero(), |acc, (id, c)| &acc + &generator(*id).scale(c))
    }
}

impl fmt::Debug for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Decomposition({self})")
    }
}

/// Compact rendering such as `-q^4 B0`, `D2`, `1/2 F2 + ...` or `0`.
impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (id, c)) in self.coeffs.iter().enumerate() {
            let name = id.display_name();
            let coef = c.to_string();
            let (negative, body) = if c.len() == 1 {
                match coef.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, coef),
                }
            } else {
                (false, format!("({coef})"))
            };
            let term = match body.as_str() {
                "1" => name.to_string(),
                _ if *id == GeneratorId::One => body,
                _ => format!("{body} {name}"),
            };
            match (i, negative) {
                (0, true) => write!(f, "-{term}")?,
                (0, false) => write!(f, "{term}")?,
                (_, true) => write!(f, " - {term}")?,
                (_, false) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

/// A set of generators with a precomputed exact solver for coordinates.
///
/// The 16 matrix entries form the equations and the basis elements the
/// unknowns. Gauss–Jordan elimination over the fraction field (first nonzero
/// pivot per column) is run once on `[A | I]`; decomposing a matrix is then a
/// product with the recorded row operations followed by an exact
/// reconstruction check, which catches right-hand sides outside the span.
pub struct Basis {
    ids: Vec<GeneratorId>,
    transform: Vec<Vec<FieldElem>>,
    pivot_rows: Vec<usize>,
}

impl Basis {
    pub fn new(ids: &[GeneratorId]) -> Result<Basis> {
        let n = ids.len();
        if n > 16 {
            return Err(Error::DependentBasis);
        }
        let mut a: Vec<Vec<FieldElem>> = (0..16)
            .map(|e| ids.iter().map(|&id| generator(id).entry(e / 4, e % 4).clone().into()).collect())
            .collect();
        let mut t: Vec<Vec<FieldElem>> = (0..16)
            .map(|r| (0..16).map(|c| if r == c { FieldElem::one() } else { FieldElem::zero() }).collect())
            .collect();

        let mut pivot_rows = Vec::with_capacity(n);
        for col in 0..n {
            let row = pivot_rows.len();
            let p = (row..16).find(|&r| !a[r][col].is_zero()).ok_or(Error::DependentBasis)?;
            a.swap(row, p);
            t.swap(row, p);
            let inv = a[row][col].invert()?;
            for k in 0..n {
                a[row][k] = &a[row][k] * &inv;
            }
            for k in 0..16 {
                t[row][k] = &t[row][k] * &inv;
            }
            for r in 0..16 {
                if r == row || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for k in 0..n {
                    if !a[row][k].is_zero() {
                        a[r][k] = &a[r][k] - &(&f * &a[row][k]);
                    }
                }
                for k in 0..16 {
                    if !t[row][k].is_zero() {
                        t[r][k] = &t[r][k] - &(&f * &t[row][k]);
                    }
                }
            }
            pivot_rows.push(row);
        }
        Ok(Basis { ids: ids.to_vec(), transform: t, pivot_rows })
    }

    /// Unit matrix plus the 15 isometric and metamorphic generators.
    pub fn full() -> &'static Basis {
        static FULL: OnceLock<Basis> = OnceLock::new();
        FULL.get_or_init(|| Basis::new(&GeneratorId::BASIS).expect("the 16 generators are independent"))
    }

    /// `t0..t3`.
    pub fn jeffrey() -> &'static Basis {
        static JEFFREY: OnceLock<Basis> = OnceLock::new();
        JEFFREY.get_or_init(|| Basis::new(&GeneratorId::JEFFREY).expect("t0..t3 are independent"))
    }

    pub fn ids(&self) -> &[GeneratorId] {
        &self.ids
    }

    fn apply_row(&self, row: usize, rhs: &[RingElem]) -> FieldElem {
        self.transform[row]
            .iter()
            .zip(rhs)
            .filter(|(t, b)| !t.is_zero() && !b.is_zero())
            .fold(FieldElem::zero(), |acc, (t, b)| &acc + &(t * &FieldElem::from(b.clone())))
    }

    pub fn decompose(&self, t: &Mat4) -> Result<Decomposition> {
        let rhs: Vec<RingElem> = (0..16).map(|e| t.entry(e / 4, e % 4).clone()).collect();
        let mut d = Decomposition::new();
        for (&id, &row) in self.ids.iter().zip(&self.pivot_rows) {
            let c = self.apply_row(row, &rhs);
            let c = c.to_ring().ok_or_else(|| Error::NotRingValued(c.to_string()))?;
            d.add(id, &c);
        }
        let residual = t - &d.reconstruct();
        if !residual.is_zero() {
            return Err(Error::NotInSpan { residual: Box::new(residual) });
        }
        Ok(d)
    }
}

/// Coordinates of `t` in the 16-element basis.
pub fn decompose(t: &Mat4) -> Result<Decomposition> {
    Basis::full().decompose(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    /// `X·Y`
    Product,
    /// `Y·X`, still indexed with X on the rows.
    ReverseProduct,
    /// `[X, Y]/2`
    HalfCommutator,
    /// `{X, Y}/2`
    HalfAnticommutator,
}

impl TableKind {
    pub fn apply(self, x: &Mat4, y: &Mat4) -> Mat4 {
        let half = RingElem::term(1, 2, 0, 0);
        match self {
            TableKind::Product => x * y,
            TableKind::ReverseProduct => y * x,
            TableKind::HalfCommutator => x.commutator(y).scale(&half),
            TableKind::HalfAnticommutator => x.anticommutator(y).scale(&half),
        }
    }

    pub fn header(self) -> &'static str {
        match self {
            TableKind::Product => "X.Y",
            TableKind::ReverseProduct => "Y.X",
            TableKind::HalfCommutator => "[X,Y]/2",
            TableKind::HalfAnticommutator => "{X,Y}/2",
        }
    }
}

impl std::str::FromStr for TableKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "product" => Ok(TableKind::Product),
            "reverse_product" => Ok(TableKind::ReverseProduct),
            "half_commutator" => Ok(TableKind::HalfCommutator),
            "half_anticommutator" => Ok(TableKind::HalfAnticommutator),
            other => Err(format!("unknown table kind '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    #[default]
    Full,
    Jeffrey,
}

impl BasisKind {
    pub fn basis(self) -> &'static Basis {
        match self {
            BasisKind::Full => Basis::full(),
            BasisKind::Jeffrey => Basis::jeffrey(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureTable {
    pub kind: TableKind,
    #[serde(default)]
    pub basis: BasisKind,
    pub rows: Vec<GeneratorId>,
    pub cols: Vec<GeneratorId>,
    pub cells: Vec<Vec<Decomposition>>,
}

impl StructureTable {
    /// Cell (i, j) is `kind(rows[i], cols[j])` decomposed in `basis`.
    pub fn build(basis: BasisKind, kind: TableKind, rows: &[GeneratorId], cols: &[GeneratorId]) -> Result<Self> {
        let solver = basis.basis();
        let cells = rows
            .iter()
            .map(|&x| {
                cols.iter()
                    .map(|&y| solver.decompose(&kind.apply(generator(x), generator(y))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StructureTable { kind, basis, rows: rows.to_vec(), cols: cols.to_vec(), cells })
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// Aligned plain-text layout with X down the left and Y across the top.
    pub fn to_text(&self) -> String {
        let mut grid: Vec<Vec<String>> = Vec::with_capacity(self.rows.len() + 1);
        let mut header = vec![self.kind.header().to_string()];
        header.extend(self.cols.iter().map(|c| c.display_name().to_string()));
        grid.push(header);
        for (id, row) in self.rows.iter().zip(&self.cells) {
            let mut line = vec![id.display_name().to_string()];
            line.extend(row.iter().map(|d| d.to_string()));
            grid.push(line);
        }
        let ncols = grid[0].len();
        let width: Vec<usize> = (0..ncols)
            .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for (i, line) in grid.iter().enumerate() {
            let cells: Vec<String> = line
                .iter()
                .zip(&width)
                .map(|(s, w)| format!("{s:<w$}"))
                .collect();
            out.push_str(format!("{} | {}", cells[0], cells[1..].join("  ")).trim_end());
            out.push('\n');
            if i == 0 {
                out.push_str(&"-".repeat(width.iter().sum::<usize>() + 2 * ncols));
                out.push('\n');
            }
        }
        out
    }
}

/// Structure table in the 16-element basis.
pub fn build_table(kind: TableKind, rows: &[GeneratorId], cols: &[GeneratorId]) -> Result<StructureTable> {
    StructureTable::build(BasisKind::Full, kind, rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::GeneratorId::*;
    use crate::ring::RingElem as R;

    #[test]
    fn identity_decomposes_to_one() {
        assert_eq!(decompose(&Mat4::identity()).unwrap(), Decomposition::single(One, R::one()));
    }

    #[test]
    fn b2_d2_commutator() {
        // The printed commutator list has +2q^4 B0; the product of the printed
        // matrices gives the opposite sign.
        let c = generator(B2).commutator(generator(D2));
        assert_eq!(decompose(&c).unwrap(), Decomposition::single(B0, R::term(-2, 1, 4, 0)));
        let c = generator(B1).commutator(generator(D1));
        assert_eq!(decompose(&c).unwrap(), Decomposition::single(B0p, R::term(-2, 1, 2, 0)));
    }

    #[test]
    fn family_commutators() {
        let two = R::from_int(2);
        let cases = [
            (B0, B2, D2),
            (B0, D2, B2),
            (B0p, B1, D1),
            (B0p, D1, B1),
        ];
        for (x, y, z) in cases {
            let c = generator(x).commutator(generator(y));
            assert_eq!(decompose(&c).unwrap(), Decomposition::single(z, two.clone()), "[{x},{y}]");
        }
    }

    #[test]
    fn mixed_product() {
        let p = generator(B0) * generator(F2);
        assert_eq!(decompose(&p).unwrap(), Decomposition::single(H2, R::one()));
    }

    #[test]
    fn every_basis_element_decomposes_to_itself() {
        for id in GeneratorId::BASIS {
            assert_eq!(decompose(generator(id)).unwrap(), Decomposition::single(id, R::one()));
        }
    }

    #[test]
    fn jeffrey_basis_rejects_out_of_span() {
        let err = Basis::jeffrey().decompose(generator(B0)).unwrap_err();
        match err {
            Error::NotInSpan { residual } => assert!(!residual.is_zero()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dependent_basis_is_rejected() {
        assert!(matches!(Basis::new(&[One, T0]), Err(Error::DependentBasis)));
    }

    #[test]
    fn half_commutator_table_of_isometries() {
        let t = build_table(TableKind::HalfCommutator, &GeneratorId::ISOMETRIC, &GeneratorId::ISOMETRIC).unwrap();
        assert_eq!(t.cell_count(), 36);
        assert_eq!(t.cells[0][1], Decomposition::single(D2, R::one()));
        assert_eq!(t.cells[1][2], Decomposition::single(B0, R::term(-1, 1, 4, 0)));
        for i in 0..6 {
            assert!(t.cells[i][i].is_zero());
            for j in 0..6 {
                if (i < 3) != (j < 3) {
                    assert!(t.cells[i][j].is_zero(), "families commute");
                }
            }
        }
    }

    #[test]
    fn metamorphic_product_diagonal() {
        let t = build_table(TableKind::Product, &GeneratorId::METAMORPHIC, &GeneratorId::METAMORPHIC).unwrap();
        assert_eq!(t.cells[0][0], Decomposition::single(One, R::term(-1, 1, 2, 0)));
        let f1f2 = build_table(TableKind::HalfCommutator, &[F1], &[F2]).unwrap();
        assert!(f1f2.cells[0][0].is_zero());
    }

    #[test]
    fn empty_table() {
        let t = build_table(TableKind::Product, &[], &[]).unwrap();
        assert_eq!(t.cell_count(), 0);
        assert!(t.to_text().starts_with("X.Y |"));
    }

    #[test]
    fn display_of_cells() {
        assert_eq!(Decomposition::new().to_string(), "0");
        assert_eq!(Decomposition::single(B0, R::term(-1, 1, 4, 0)).to_string(), "-q^4 B0");
        assert_eq!(Decomposition::single(One, R::term(1, 1, 2, 0)).to_string(), "q^2");
        assert_eq!(Decomposition::single(F3p, R::from_int(-1)).to_string(), "-F3'");
        let d: Decomposition = [(F2, &R::term(1, 2, 0, 0) + &R::term(1, 128, 0, -2)), (H2, R::from_int(1))]
            .into_iter()
            .collect();
        assert_eq!(d.to_string(), "(1/(128*pi^2) + 1/2) F2 + H2");
    }

    #[test]
    fn decomposition_json() {
        let d = Decomposition::single(B0p, R::term(-1, 1, 2, 0));
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"B0p":{"terms":[{"num":"-1","den":"1","q":2,"pi":0}]}}"#);
        let back: Decomposition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        let zero: Decomposition = serde_json::from_str(r#"{"B0":{"terms":[]}}"#).unwrap();
        assert!(zero.is_zero());
    }
}
