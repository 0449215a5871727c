//! Published structure tables, transcribed cell by cell into
//! `data/reference_tables.json`, and the exact diff against regenerated tables.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::{Decomposition, StructureTable};
use crate::catalog::GeneratorId;
use crate::error::{Error, Result};

const REFERENCE_DATA: &str = include_str!("../data/reference_tables.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceTable {
    pub name: String,
    #[serde(flatten)]
    pub table: StructureTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceTables {
    pub tables: Vec<ReferenceTable>,
}

impl ReferenceTables {
    pub fn from_json(json: &str) -> Result<Self> {
        let tables: ReferenceTables = serde_json::from_str(json)?;
        for t in &tables.tables {
            let shape_ok = t.table.cells.len() == t.table.rows.len()
                && t.table.cells.iter().all(|row| row.len() == t.table.cols.len());
            if !shape_ok {
                return Err(Error::Fixture(format!("table {} does not match its row/column labels", t.name)));
            }
        }
        Ok(tables)
    }

    pub fn embedded() -> &'static ReferenceTables {
        static TABLES: OnceLock<ReferenceTables> = OnceLock::new();
        TABLES.get_or_init(|| ReferenceTables::from_json(REFERENCE_DATA).expect("embedded reference tables are valid"))
    }

    pub fn get(&self, name: &str) -> Option<&ReferenceTable> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn cell_count(&self) -> usize {
        self.tables.iter().map(|t| t.table.cell_count()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub table: String,
    pub row: GeneratorId,
    pub col: GeneratorId,
    pub expected: Decomposition,
    pub generated: Decomposition,
}

impl fmt::Display for CellMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}, {}): published {}, computed {}",
            self.table,
            self.row.display_name(),
            self.col.display_name(),
            self.expected,
            self.generated
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub name: String,
    pub cells_checked: usize,
    pub mismatches: Vec<CellMismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct VerificationReport {
    pub tables: Vec<TableReport>,
}

impl VerificationReport {
    pub fn cells_checked(&self) -> usize {
        self.tables.iter().map(|t| t.cells_checked).sum()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CellMismatch> {
        self.tables.iter().flat_map(|t| t.mismatches.iter())
    }

    pub fn mismatch_count(&self) -> usize {
        self.mismatches().count()
    }

    pub fn is_clean(&self) -> bool {
        self.mismatch_count() == 0
    }
}

/// Regenerates each table from the generator catalog and lists every cell
/// that differs from the transcription.
pub fn verify_tables(tables: &[ReferenceTable]) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    for reference in tables {
        let t = &reference.table;
        let generated = StructureTable::build(t.basis, t.kind, &t.rows, &t.cols)?;
        let mut mismatches = Vec::new();
        for (i, (expected_row, generated_row)) in t.cells.iter().zip(&generated.cells).enumerate() {
            for (j, (expected, got)) in expected_row.iter().zip(generated_row).enumerate() {
                if expected != got {
                    mismatches.push(CellMismatch {
                        table: reference.name.clone(),
                        row: t.rows[i],
                        col: t.cols[j],
                        expected: expected.clone(),
                        generated: got.clone(),
                    });
                }
            }
        }
        report.tables.push(TableReport {
            name: reference.name.clone(),
            cells_checked: generated.cell_count(),
            mismatches,
        });
    }
    Ok(report)
}

/// Diff of every embedded published table.
pub fn verify_reference_tables() -> Result<VerificationReport> {
    verify_tables(&ReferenceTables::embedded().tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BasisKind, TableKind};
    use crate::catalog::GeneratorId::*;
    use crate::ring::RingElem;

    #[test]
    fn embedded_tables_load() {
        let t = ReferenceTables::embedded();
        assert_eq!(t.tables.len(), 12);
        assert_eq!(t.cell_count(), 599);
        let t4 = t.get("jeffrey_product").unwrap();
        assert_eq!(t4.table.basis, BasisKind::Jeffrey);
        assert_eq!(t4.table.cells[1][1], Decomposition::single(T2, RingElem::term(8, 1, 0, 1)));
    }

    #[test]
    fn clean_table_has_no_mismatches() {
        let tables = ReferenceTables::embedded();
        let t5 = tables.get("metamorphic_product").unwrap().clone();
        let report = verify_tables(&[t5]).unwrap();
        assert_eq!(report.cells_checked(), 81);
        assert!(report.is_clean());
    }

    #[test]
    fn corrupted_cell_is_reported() {
        let mut t5 = ReferenceTables::embedded().get("metamorphic_product").unwrap().clone();
        t5.table.cells[2][4] = Decomposition::single(D1, RingElem::term(1, 1, 4, 0));
        let report = verify_tables(&[t5]).unwrap();
        let bad: Vec<_> = report.mismatches().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].table.as_str(), bad[0].row, bad[0].col), ("metamorphic_product", F3, H2));
        assert_eq!(bad[0].generated, Decomposition::single(D1, RingElem::term(-1, 1, 4, 0)));
    }

    #[test]
    fn empty_input_gives_empty_report() {
        let report = verify_tables(&[]).unwrap();
        assert_eq!(report.cells_checked(), 0);
        assert!(report.tables.is_empty());

        let empty = ReferenceTable {
            name: "empty".into(),
            table: StructureTable { kind: TableKind::Product, basis: BasisKind::Full, rows: vec![], cols: vec![], cells: vec![] },
        };
        let report = verify_tables(&[empty]).unwrap();
        assert_eq!(report.cells_checked(), 0);
        assert!(report.is_clean());
    }

    #[test]
    fn malformed_fixture_is_rejected() {
        let json = r#"{"tables":[{"name":"x","kind":"product","basis":"full","rows":["B0"],"cols":["B0"],"cells":[]}]}"#;
        assert!(matches!(ReferenceTables::from_json(json), Err(Error::Fixture(_))));
    }
}
