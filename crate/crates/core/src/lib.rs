//! Exact and numeric toolkit for the 4x4 matrix algebra acting on
//! fundamental-measure vectors of hard spheres.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod flow;
pub mod hard_sphere;
pub mod jeffrey;
pub mod mat4;
pub mod printed;
pub mod reference;
pub mod ring;
pub mod special;
pub mod verify;

pub use algebra::{build_table, decompose, Basis, BasisKind, Decomposition, StructureTable, TableKind};
pub use catalog::{generator, GeneratorId, SquareClass, SymmetryClass};
pub use error::{Error, Result};
pub use mat4::{bilinear, Mat4, NumericMat4, NumericVec4};
pub use ring::{FieldElem, Monomial, RingElem};
