//! Exact integer linear algebra.

pub mod complex;
pub mod group;
pub mod matrix;
pub mod snf;

pub use complex::ChainComplexZ;
pub use group::{group_hom_check, Elem, FgAbelianGroup, GroupHom, HomCheck};
pub use matrix::IntMatrix;
pub use snf::{invariant_factors, smith_normal_form, Snf};
