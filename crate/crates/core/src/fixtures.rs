//! Bundled workspaces. The JSON files shipped under `fixtures/` are
//! emitted from these builders.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{Elem, FgAbelianGroup};
use crate::catring::CategoricalRingData;
use crate::cubes::Cube;
use crate::determinant::euler_determinant;
use crate::error::Result;
use crate::picard::{PicardFunctorData, PicardPresentation};
use crate::trianglecat::{graded_lines, graded_lines_tensor, octahedron_to_2cube, TriFunctorData, TriangPresentation};
use crate::workspace::{CellSpec, WorkspaceFile};

pub const Z_SIGN: &str = "Z-sign";
pub const TENSOR_TARGET: &str = "graded-lines-tensor";
/// Sum whose commutativity 2-cube is bundled.
pub const COMM_DIAGRAM: &str = "comm([0,1],[1,0])";
pub const OCTAHEDRON: &str = "A([0,1],[1,0],[0,1])";

/// The graded-lines presentation and its Euler determinant.
pub fn graded_lines_workspace() -> WorkspaceFile {
    let t = Arc::new(graded_lines(2));
    let d = euler_determinant(vec![t.clone()]).expect("Euler class is additive");
    let mut f = WorkspaceFile::new();
    f.add_picard(Z_SIGN, &PicardPresentation::z_with_sign());
    f.add_presentation(&t);
    f.add_determinant(&d, Z_SIGN);
    f
}

/// The degreewise tensor with its target renamed, so that source and
/// target can live in one workspace.
pub fn graded_lines_tensor_data() -> (Arc<TriangPresentation>, TriFunctorData) {
    let (target, mut tensor) = graded_lines_tensor(2);
    let mut t = (*target).clone();
    t.id = TENSOR_TARGET.into();
    let t = Arc::new(t);
    tensor.target = t.clone();
    (t, tensor)
}

/// Source and target of the tensor, the tensor, and the Euler determinant
/// of the target.
pub fn tensor_workspace() -> WorkspaceFile {
    let (target, tensor) = graded_lines_tensor_data();
    let mut d = euler_determinant(vec![target.clone()]).expect("Euler class is additive");
    d.id = "euler-target".into();
    let mut f = WorkspaceFile::new();
    f.add_picard(Z_SIGN, &PicardPresentation::z_with_sign());
    f.add_presentation(&tensor.sources[0]);
    f.add_presentation(&target);
    f.add_tri_functor(&tensor);
    f.add_determinant(&d, Z_SIGN);
    f
}

/// The commutativity 2-cube of a sum and an octahedron written as a
/// 2-cube, each with its certificate, on the part of graded-lines they use.
pub fn two_squares_presentation() -> Result<TriangPresentation> {
    let mut t = graded_lines(2);
    let grid = octahedron_to_2cube(&mut t, OCTAHEDRON)?;
    let keep_grids: BTreeSet<String> = [COMM_DIAGRAM.to_string(), grid].into();
    t.nine_diagrams.retain(|d| keep_grids.contains(&d.id));
    t.certificates.retain(|c| keep_grids.contains(&c.diagram));
    let mut octs: BTreeSet<String> = t.certificates.iter().flat_map(|c| [c.v1.clone(), c.v2.clone(), c.v3.clone()]).collect();
    octs.insert(OCTAHEDRON.into());
    t.octahedra.retain(|o| octs.contains(&o.id));
    t.sums.retain(|s| format!("comm({},{})", s.x, s.y) == COMM_DIAGRAM);
    let mut tris: BTreeSet<String> = t.octahedra.iter().flat_map(|o| o.triangles().map(String::from)).collect();
    tris.extend(t.nine_diagrams.iter().flat_map(|d| d.rows.iter().chain(&d.cols).cloned()));
    tris.extend(t.sums.iter().flat_map(|s| [s.delta1.clone(), s.delta2.clone()]));
    t.triangles.retain(|x| tris.contains(&x.id));
    t.triangle_isos.retain(|m| tris.contains(&m.source) && tris.contains(&m.target));
    t.id = "two-squares".into();
    Ok(t)
}

pub fn two_squares_workspace() -> Result<WorkspaceFile> {
    let mut f = WorkspaceFile::new();
    f.add_presentation(&two_squares_presentation()?);
    Ok(f)
}

/// `Z` with integer multiplication, discrete and over `(Z, Z/2, xy)`.
pub fn rings_workspace() -> WorkspaceFile {
    let mut f = WorkspaceFile::new();
    let z = CategoricalRingData::discrete_integers();
    f.add_picard("Z", &z.base);
    f.add_picard_functor("Z-mult", &["Z", "Z"], "Z", &z.mult, vec![CellSpec::Zero, CellSpec::Zero]);
    f.add_catring(&z, "Z", "Z-mult");
    let s = CategoricalRingData::integers_with_sign();
    f.add_picard(Z_SIGN, &s.base);
    f.add_picard_functor(
        "Z-sign-mult",
        &[Z_SIGN, Z_SIGN],
        Z_SIGN,
        &PicardFunctorData::integer_product(),
        vec![CellSpec::IntegerProduct, CellSpec::Zero],
    );
    f.add_catring(&s, Z_SIGN, "Z-sign-mult");
    f
}

/// A valid and an invalid 2-cube over `(Z/2, Z/2, xy)`.
pub fn cubes_workspace() -> WorkspaceFile {
    let p = PicardPresentation::z2_with_sign();
    let e = |k| Elem(vec![k]);
    let good = Cube::from_corners(&p, 2, &[e(1), e(0), e(1), e(1)]).expect("corners fit");
    let mut bad = good.clone();
    bad.structure[1][1] = p.b().add(&bad.structure[1][1], &e(1));
    let mut f = WorkspaceFile::new();
    f.add_picard("Z2-sign", &p);
    f.add_picard("Z2", &PicardPresentation::discrete(FgAbelianGroup::cyclic(2)));
    f.add_cube("square", "Z2-sign", &good);
    f.add_cube("broken-square", "Z2-sign", &bad);
    f
}

/// The Euler determinant of graded-lines with the additivity datum of one
/// sum triangle changed.
pub fn seeded_invalid_workspace() -> WorkspaceFile {
    let mut f = graded_lines_workspace();
    let d = &mut f.determinants[0];
    d.id = "euler-broken".into();
    let target = d.tri.iter_mut().find(|e| e.tuple[0].starts_with("cone(")).expect("a cone triangle");
    target.value = Elem(vec![(target.value.0[0] + 1).rem_euclid(2)]);
    f
}

/// Every bundled fixture by file stem.
pub fn all() -> Result<Vec<(&'static str, WorkspaceFile)>> {
    Ok(vec![
        ("graded_lines", graded_lines_workspace()),
        ("graded_lines_tensor", tensor_workspace()),
        ("two_squares", two_squares_workspace()?),
        ("rings", rings_workspace()),
        ("cubes", cubes_workspace()),
        ("seeded_invalid_det", seeded_invalid_workspace()),
    ])
}
