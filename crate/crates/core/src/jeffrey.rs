//! The commuting Jeffrey matrices t0..t3: exact decompositions into the
//! 16-element basis and the product identities among them.

use serde::Serialize;

use crate::algebra::{decompose, Decomposition};
use crate::catalog::{generator, GeneratorId};
use crate::error::{Error, Result};
use crate::mat4::Mat4;
use crate::reference::{verify_tables, ReferenceTables};
use crate::ring::RingElem;

use GeneratorId::*;

const JEFFREY: [GeneratorId; 4] = GeneratorId::JEFFREY;

fn t(nu: usize) -> &'static Mat4 {
    generator(JEFFREY[nu])
}

/// Exact decomposition of t_ν over the 16-element basis.
pub fn jeffrey_decomposition(nu: usize) -> Result<Decomposition> {
    if nu > 3 {
        return Err(Error::UnknownGenerator(format!("t{nu}")));
    }
    decompose(t(nu))
}

/// The published linear combinations for t0..t3.
pub fn printed_jeffrey_decomposition(nu: usize) -> Option<Decomposition> {
    let r = RingElem::term;
    let d: Vec<(GeneratorId, RingElem)> = match nu {
        0 => vec![(One, r(1, 1, 0, 0))],
        1 => vec![
            (F1, r(1, 2, 0, 0)),
            (H1, r(-1, 2, 0, 0)),
            (P3, r(2, 1, -2, 1) + r(3, 32, -2, -1)),
            (P3p, r(-2, 1, -2, 1) + r(-1, 32, -2, -1)),
            (F3, r(2, 1, -2, 1) + r(-1, 32, -2, -1)),
            (F3p, r(-2, 1, -2, 1) + r(3, 32, -2, -1)),
        ],
        2 => vec![
            (One, r(-1, 8, 2, -1)),
            (P0, r(1, 8, 2, -1)),
            (F2, r(1, 2, 0, 0) + r(1, 128, 0, -2)),
            (H2, r(-1, 2, 0, 0) + r(1, 128, 0, -2)),
        ],
        3 => vec![
            (F1, r(1, 16, 2, -1)),
            (H1, r(1, 16, 2, -1)),
            (P3, r(1, 4, 0, 0) + r(3, 256, 0, -2)),
            (P3p, r(1, 4, 0, 0) + r(1, 256, 0, -2)),
            (F3, r(-1, 4, 0, 0) + r(1, 256, 0, -2)),
            (F3p, r(-1, 4, 0, 0) + r(3, 256, 0, -2)),
        ],
        _ => return None,
    };
    Some(d.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct JeffreyReport {
    pub checks: Vec<IdentityCheck>,
}

impl JeffreyReport {
    fn push(&mut self, name: impl Into<String>, holds: bool) {
        self.checks.push(IdentityCheck { name: name.into(), holds });
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Exact checks of the product and commutation rules of t0..t3 and of their
/// decompositions. Failures are recorded, not raised.
pub fn jeffrey_identities() -> Result<JeffreyReport> {
    let mut report = JeffreyReport::default();
    let one = Mat4::identity();

    let t1t1 = t(1) * t(1);
    report.push("t1*t1 = 8pi t2", t1t1 == t(2).scale(&RingElem::term(8, 1, 0, 1)));

    let t1t3 = t(1) * t(3);
    report.push("t1*t3 = -(q^4/(8pi)) 1", t1t3 == one.scale(&RingElem::term(-1, 8, 4, -1)));

    let t3t3 = t(3) * t(3);
    let rhs = &one.scale(&RingElem::term(-1, 32, 6, -2)) + &t(2).scale(&RingElem::term(-1, 8, 4, -1));
    report.push("t3*t3 = -(q^6/(32pi^2)) t0 - (q^4/(8pi)) t2", t3t3 == rhs);

    for mu in 0..4 {
        for nu in mu + 1..4 {
            report.push(format!("[t{mu},t{nu}] = 0"), t(mu).commutator(t(nu)).is_zero());
        }
    }

    let tables = ReferenceTables::embedded();
    for name in ["jeffrey_commutator", "jeffrey_product"] {
        let table = tables.get(name).ok_or_else(|| Error::Fixture(format!("missing table {name}")))?;
        let diff = verify_tables(std::slice::from_ref(table))?;
        report.push(format!("{name} reproduced"), diff.is_clean());
    }

    for nu in 0..4 {
        let computed = jeffrey_decomposition(nu)?;
        let printed = printed_jeffrey_decomposition(nu).expect("nu in range");
        let residual = &printed.reconstruct() - t(nu);
        report.push(format!("t{nu} decomposition"), computed == printed && residual.is_zero());
    }

    Ok(report)
}
