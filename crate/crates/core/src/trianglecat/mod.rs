//! Finitely presented triangulated categories: supplied batteries of
//! triangles, octahedra and certified nine-diagrams, checked for
//! consistency (the axioms of a triangulated category are not verified).

mod builtin;
mod functor;

mod presentation;
mod verdier;

pub use builtin::{
    all_dims, builtin, dims_add, dims_name, dims_shift, dims_tensor, euler, graded_lines, graded_lines_family, parse_dims,
    point, swap_name, Dims, GradedLines,
};
pub use functor::{
    check_functor_verdier_admission, check_multiexact_tri_functor, graded_lines_tensor, is_trivial, PairKey, TriFunctorData, Tuple,
};
pub use presentation::{
    octahedron_incidences, rotate, shifted_label, validate_presentation, Composition, IsoMorphism, NineDiagram, Octahedron,
    PresentationIndex, SumEntry, Triangle, TriangPresentation, TriangleIso, VerdierCertificate,
};
pub use verdier::{check_verdier, commutativity_2cube, degenerate_2cube, octahedron_to_2cube};
pub(crate) use functor::object_tuples_except;

#[cfg(test)]
mod tests;
