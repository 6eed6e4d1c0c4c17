//! Picard groupoids, cubical complexes, finitely presented triangulated
//! categories and (multi-)determinant functors as concrete, checkable data.

pub mod algebra;
pub mod catring;
pub mod cubes;
pub mod determinant;
pub mod error;
pub mod fixtures;
pub mod picard;
pub mod qcomplex;
pub mod report;
pub mod selftest;
pub mod trianglecat;
pub mod workspace;

pub use error::{Error, Result};
pub use report::{Report, ReportItem, Status, Verdict};
