//! JSON workspaces: named presentations, functors, determinants and
//! categorical rings, loaded from one or more files with every reference
//! resolved.
//!
//! The file format is the versioned document [`WorkspaceFile`]; emission is
//! canonical (entries sorted by id), so loading an emitted workspace gives
//! back the same workspace.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Elem, FgAbelianGroup};
use crate::catring::CategoricalRingData;
use crate::cubes::Cube;
use crate::determinant::{DetMorphismData, DeterminantData};
use crate::error::{Error, Result};
use crate::picard::{CellFn, PicardFunctorData, PicardPresentation};
use crate::trianglecat::{PairKey, TriFunctorData, TriangPresentation, Tuple};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    pub multidet_schema: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub picard: Vec<PicardEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub presentations: Vec<TriangPresentation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cubes: Vec<CubeEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub picard_functors: Vec<PicardFunctorEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tri_functors: Vec<TriFunctorEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub determinants: Vec<DeterminantEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub det_morphisms: Vec<DetMorphismEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factorizations: Vec<FactorizationEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub catrings: Vec<CatRingEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PicardEntry {
    pub id: String,
    pub pi0: FgAbelianGroup,
    pub pi1: FgAbelianGroup,
    pub symmetry: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeEntry {
    pub id: String,
    pub picard: String,
    pub n: usize,
    pub vertices: Vec<Elem>,
    pub structure: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GensValue {
    pub gens: Vec<usize>,
    pub value: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismValue {
    pub gens: Vec<usize>,
    pub gen: usize,
    pub value: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellEntry {
    pub at: Vec<Elem>,
    pub y: Elem,
    pub y2: Elem,
    pub value: Elem,
}

/// Monoidal structure cells of one slot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CellSpec {
    Zero,
    /// Listed values, zero elsewhere. `at` has the slot's own entry empty.
    Table { entries: Vec<CellEntry> },
    /// `xx′·y(y−1)/2 mod 2` for the first slot of integer multiplication on
    /// `(Z, Z/2, xy)`.
    IntegerProduct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PicardFunctorEntry {
    pub id: String,
    pub sources: Vec<String>,
    pub target: String,
    pub objects: Vec<GensValue>,
    pub morphisms: Vec<Vec<MorphismValue>>,
    pub cells: Vec<CellSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleValue<T> {
    pub tuple: Tuple,
    pub value: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlotValue<T> {
    pub slot: usize,
    pub tuple: Tuple,
    pub value: T,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub i: usize,
    pub j: usize,
    pub tuple: Tuple,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdierEntry {
    pub i: usize,
    pub j: usize,
    pub tuple: Tuple,
    pub diagram: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriFunctorEntry {
    pub id: String,
    pub sources: Vec<String>,
    pub target: String,
    pub objects: Vec<TupleValue<String>>,
    #[serde(default)]
    pub isos: Vec<SlotValue<String>>,
    #[serde(default)]
    pub triangles: Vec<SlotValue<String>>,
    #[serde(default)]
    pub verdier: Vec<VerdierEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub battery: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_battery: Option<Vec<PairEntry>>,
    #[serde(default)]
    pub anticommutativity_attested: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeterminantEntry {
    pub id: String,
    pub sources: Vec<String>,
    pub target: String,
    pub obj: Vec<TupleValue<Elem>>,
    #[serde(default)]
    pub iso: Vec<SlotValue<Elem>>,
    #[serde(default)]
    pub tri: Vec<SlotValue<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub battery: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_battery: Option<Vec<PairEntry>>,
    #[serde(default)]
    pub partial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetMorphismEntry {
    pub id: String,
    pub d1: String,
    pub d2: String,
    pub theta: Vec<TupleValue<Elem>>,
}

/// Candidate factorization `D ≅ f ∘ det_u` through a universal determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationEntry {
    pub id: String,
    pub universal: String,
    pub det: String,
    pub functor: String,
    pub alpha: Vec<TupleValue<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatRingEntry {
    pub id: String,
    pub base: String,
    pub mult: String,
    pub unit: Elem,
    pub left_act: Vec<Vec<Elem>>,
    pub right_act: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub universal: DeterminantData,
    pub det: DeterminantData,
    pub functor: PicardFunctorData,
    pub alpha: BTreeMap<Tuple, Elem>,
}

/// A resolved workspace. Equality compares the canonical file form.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub file: WorkspaceFile,
    pub picard: BTreeMap<String, PicardPresentation>,
    pub presentations: BTreeMap<String, Arc<TriangPresentation>>,
    pub cubes: BTreeMap<String, (PicardPresentation, Cube)>,
    pub picard_functors: BTreeMap<String, PicardFunctorData>,
    pub tri_functors: BTreeMap<String, TriFunctorData>,
    pub determinants: BTreeMap<String, DeterminantData>,
    pub det_morphisms: BTreeMap<String, DetMorphismData>,
    pub factorizations: BTreeMap<String, Factorization>,
    pub catrings: BTreeMap<String, CategoricalRingData>,
}

impl PartialEq for Workspace {
    fn eq(&self, other: &Self) -> bool {
        self.file == other.file
    }
}

fn unresolved(what: &str, id: &str, owner: &str) -> Error {
    Error::UnresolvedReference(format!("{what} {id} referenced by {owner}"))
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, what: &str, id: &str, owner: &str) -> Result<&'a T> {
    map.get(id).ok_or_else(|| unresolved(what, id, owner))
}

fn check_group(g: &FgAbelianGroup, owner: &str) -> Result<FgAbelianGroup> {
    FgAbelianGroup::new(g.factors().to_vec()).map_err(|e| Error::Parse(format!("{owner}: {e}")))
}

fn element(g: &FgAbelianGroup, e: &Elem, owner: &str) -> Result<Elem> {
    g.element(e.0.clone()).map_err(|err| Error::Parse(format!("{owner}: {err}")))
}

fn unique<'a>(kind: &str, ids: impl IntoIterator<Item = &'a str>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::DuplicateId(format!("{kind} {id}")));
        }
    }
    Ok(())
}

/// Internal references of a presentation: objects of triangles and isos,
/// triangles of octahedra, sums and nine-diagrams, octahedra of
/// certificates.
pub fn resolve_presentation(t: &TriangPresentation) -> Result<()> {
    let owner = format!("presentation {}", t.id);
    unique(&format!("object in {owner}:"), t.objects.iter().map(String::as_str))?;
    unique(&format!("iso in {owner}:"), t.isos.iter().map(|x| x.id.as_str()))?;
    unique(&format!("triangle in {owner}:"), t.triangles.iter().map(|x| x.id.as_str()))?;
    unique(&format!("octahedron in {owner}:"), t.octahedra.iter().map(|x| x.id.as_str()))?;
    unique(&format!("nine-diagram in {owner}:"), t.nine_diagrams.iter().map(|x| x.id.as_str()))?;
    let objects: BTreeSet<&str> = t.objects.iter().map(String::as_str).collect();
    let isos: BTreeSet<&str> = t.isos.iter().map(|x| x.id.as_str()).collect();
    let tris: BTreeSet<&str> = t.triangles.iter().map(|x| x.id.as_str()).collect();
    let octs: BTreeSet<&str> = t.octahedra.iter().map(|x| x.id.as_str()).collect();
    let grids: BTreeSet<&str> = t.nine_diagrams.iter().map(|x| x.id.as_str()).collect();
    let need = |set: &BTreeSet<&str>, what: &str, id: &str, by: &str| -> Result<()> {
        if set.contains(id) {
            Ok(())
        } else {
            Err(unresolved(what, id, &format!("{by} in {owner}")))
        }
    };
    need(&objects, "object", &t.zero, "zero")?;
    for (x, y) in &t.shift {
        need(&objects, "object", x, "shift")?;
        need(&objects, "object", y, "shift")?;
    }
    for f in &t.isos {
        need(&objects, "object", &f.source, &format!("iso {}", f.id))?;
        need(&objects, "object", &f.target, &format!("iso {}", f.id))?;
    }
    for (x, f) in &t.identities {
        need(&objects, "object", x, "identities")?;
        need(&isos, "iso", f, "identities")?;
    }
    for (f, g) in &t.inverses {
        need(&isos, "iso", f, "inverses")?;
        need(&isos, "iso", g, "inverses")?;
    }
    for c in &t.compositions {
        for f in [&c.first, &c.second, &c.result] {
            need(&isos, "iso", f, "compositions")?;
        }
    }
    for tri in &t.triangles {
        for x in tri.objects() {
            need(&objects, "object", x, &format!("triangle {}", tri.id))?;
        }
    }
    for s in &t.sums {
        for x in [&s.x, &s.y, &s.sum] {
            need(&objects, "object", x, "sums")?;
        }
        need(&tris, "triangle", &s.delta1, "sums")?;
        need(&tris, "triangle", &s.delta2, "sums")?;
    }
    for m in &t.triangle_isos {
        let by = format!("triangle iso {}", m.id);
        need(&tris, "triangle", &m.source, &by)?;
        need(&tris, "triangle", &m.target, &by)?;
        for f in [&m.ix, &m.iy, &m.iz] {
            need(&isos, "iso", f, &by)?;
        }
    }
    for o in &t.octahedra {
        for d in o.triangles() {
            need(&tris, "triangle", d, &format!("octahedron {}", o.id))?;
        }
    }
    for g in &t.nine_diagrams {
        for d in g.rows.iter().chain(&g.cols) {
            need(&tris, "triangle", d, &format!("nine-diagram {}", g.id))?;
        }
    }
    for c in &t.certificates {
        let by = format!("certificate of {}", c.diagram);
        need(&grids, "nine-diagram", &c.diagram, &by)?;
        need(&objects, "object", &c.a, &by)?;
        for v in [&c.v1, &c.v2, &c.v3] {
            need(&octs, "octahedron", v, &by)?;
        }
    }
    Ok(())
}

/// Checks that `tuple` has objects of `sources` everywhere except at
/// `slot`, where `at_slot` must hold.
fn check_tuple(
    sources: &[Arc<TriangPresentation>],
    tuple: &[String],
    slot: Option<usize>,
    at_slot: impl Fn(&TriangPresentation, &str) -> bool,
    what: &str,
    owner: &str,
) -> Result<()> {
    if tuple.len() != sources.len() {
        return Err(Error::Parse(format!("{owner}: tuple {tuple:?} has the wrong length")));
    }
    for (k, (x, s)) in tuple.iter().zip(sources).enumerate() {
        let ok = if Some(k) == slot { at_slot(s, x) } else { s.has_object(x) };
        if !ok {
            let what = if Some(k) == slot { what } else { "object" };
            return Err(unresolved(what, x, owner));
        }
    }
    Ok(())
}

fn pairs_in(entries: &[PairEntry]) -> BTreeSet<PairKey> {
    entries.iter().map(|p| PairKey { i: p.i, j: p.j, tuple: p.tuple.clone() }).collect()
}

fn pairs_out(keys: &BTreeSet<PairKey>) -> Vec<PairEntry> {
    keys.iter().map(|p| PairEntry { i: p.i, j: p.j, tuple: p.tuple.clone() }).collect()
}

fn cell_fn(spec: &CellSpec, slot: usize, target: &PicardPresentation, owner: &str) -> Result<CellFn> {
    Ok(match spec {
        CellSpec::Zero => CellFn::zero(target.b()),
        CellSpec::Table { entries } => {
            let map = entries
                .iter()
                .map(|e| Ok(((e.at.clone(), e.y.clone(), e.y2.clone()), element(target.b(), &e.value, owner)?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            CellFn::table(slot, target.b(), map)
        }
        CellSpec::IntegerProduct => {
            if *target != PicardPresentation::z_with_sign() {
                return Err(Error::Parse(format!("{owner}: integer-product cells need the target (Z, Z/2, xy)")));
            }
            PicardFunctorData::integer_product().cells[0].clone()
        }
    })
}

fn tuple_map(entries: &[TupleValue<Elem>], g: &FgAbelianGroup, owner: &str) -> Result<BTreeMap<Tuple, Elem>> {
    let mut out = BTreeMap::new();
    for e in entries {
        if out.insert(e.tuple.clone(), element(g, &e.value, owner)?).is_some() {
            return Err(Error::DuplicateId(format!("{owner}: entry {:?}", e.tuple)));
        }
    }
    Ok(out)
}

fn slot_map<T: Clone>(entries: &[SlotValue<T>], owner: &str, conv: impl Fn(&T) -> Result<T>) -> Result<BTreeMap<(usize, Tuple), T>> {
    let mut out = BTreeMap::new();
    for e in entries {
        if out.insert((e.slot, e.tuple.clone()), conv(&e.value)?).is_some() {
            return Err(Error::DuplicateId(format!("{owner}: entry slot {} {:?}", e.slot, e.tuple)));
        }
    }
    Ok(out)
}

impl Workspace {
    pub fn empty() -> Self {
        Self::from_file(WorkspaceFile { multidet_schema: SCHEMA_VERSION, ..Default::default() }).expect("empty workspace")
    }

    /// Resolves every reference of a parsed file.
    pub fn from_file(mut file: WorkspaceFile) -> Result<Self> {
        if file.multidet_schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported multidet_schema {}", file.multidet_schema)));
        }
        canonicalize(&mut file);
        unique("picard", file.picard.iter().map(|x| x.id.as_str()))?;
        unique("presentation", file.presentations.iter().map(|x| x.id.as_str()))?;
        unique("cube", file.cubes.iter().map(|x| x.id.as_str()))?;
        unique("functor", file.picard_functors.iter().map(|x| x.id.as_str()).chain(file.tri_functors.iter().map(|x| x.id.as_str())))?;
        unique("determinant", file.determinants.iter().map(|x| x.id.as_str()))?;
        unique("det-morphism", file.det_morphisms.iter().map(|x| x.id.as_str()))?;
        unique("factorization", file.factorizations.iter().map(|x| x.id.as_str()))?;
        unique("catring", file.catrings.iter().map(|x| x.id.as_str()))?;

        let mut ws = Workspace::default();
        for p in &file.picard {
            let owner = format!("picard {}", p.id);
            let (a, b) = (check_group(&p.pi0, &owner)?, check_group(&p.pi1, &owner)?);
            let pres = PicardPresentation::new(a, b, p.symmetry.clone()).map_err(|e| Error::Parse(format!("{owner}: {e}")))?;
            ws.picard.insert(p.id.clone(), pres);
        }
        for t in &file.presentations {
            resolve_presentation(t)?;
            ws.presentations.insert(t.id.clone(), Arc::new(t.clone()));
        }
        for c in &file.cubes {
            let owner = format!("cube {}", c.id);
            let p = lookup(&ws.picard, "picard", &c.picard, &owner)?.clone();
            let cube = Cube { n: c.n, vertices: c.vertices.clone(), structure: c.structure.clone() };
            ws.cubes.insert(c.id.clone(), (p, cube));
        }
        for f in &file.picard_functors {
            let owner = format!("functor {}", f.id);
            let sources = f
                .sources
                .iter()
                .map(|s| lookup(&ws.picard, "picard", s, &owner).cloned())
                .collect::<Result<Vec<_>>>()?;
            let target = lookup(&ws.picard, "picard", &f.target, &owner)?.clone();
            let objects = f.objects.iter().map(|o| (o.gens.clone(), o.value.clone())).collect();
            let morphisms = f
                .morphisms
                .iter()
                .map(|table| table.iter().map(|m| ((m.gens.clone(), m.gen), m.value.clone())).collect())
                .collect();
            let cells = f.cells.iter().enumerate().map(|(k, c)| cell_fn(c, k, &target, &owner)).collect::<Result<_>>()?;
            let data = PicardFunctorData { sources, target, objects, morphisms, cells };
            data.validate_shape().map_err(|e| Error::Parse(format!("{owner}: {e}")))?;
            ws.picard_functors.insert(f.id.clone(), data);
        }
        for f in &file.tri_functors {
            let data = ws.resolve_tri_functor(f)?;
            ws.tri_functors.insert(f.id.clone(), data);
        }
        for d in &file.determinants {
            let data = ws.resolve_determinant(d)?;
            ws.determinants.insert(d.id.clone(), data);
        }
        for m in &file.det_morphisms {
            let owner = format!("det-morphism {}", m.id);
            let d1 = lookup(&ws.determinants, "determinant", &m.d1, &owner)?.clone();
            let d2 = lookup(&ws.determinants, "determinant", &m.d2, &owner)?.clone();
            let theta = tuple_map(&m.theta, d1.target.b(), &owner)?;
            ws.det_morphisms.insert(m.id.clone(), DetMorphismData { d1, d2, theta });
        }
        for f in &file.factorizations {
            let owner = format!("factorization {}", f.id);
            let universal = lookup(&ws.determinants, "determinant", &f.universal, &owner)?.clone();
            let det = lookup(&ws.determinants, "determinant", &f.det, &owner)?.clone();
            let functor = lookup(&ws.picard_functors, "functor", &f.functor, &owner)?.clone();
            let alpha = tuple_map(&f.alpha, det.target.b(), &owner)?;
            ws.factorizations.insert(f.id.clone(), Factorization { universal, det, functor, alpha });
        }
        for r in &file.catrings {
            let owner = format!("catring {}", r.id);
            let base = lookup(&ws.picard, "picard", &r.base, &owner)?.clone();
            let mult = lookup(&ws.picard_functors, "functor", &r.mult, &owner)?.clone();
            ws.catrings.insert(
                r.id.clone(),
                CategoricalRingData {
                    id: r.id.clone(),
                    base,
                    mult,
                    unit: r.unit.clone(),
                    left_act: r.left_act.clone(),
                    right_act: r.right_act.clone(),
                },
            );
        }
        ws.file = file;
        Ok(ws)
    }

    fn sources(&self, ids: &[String], owner: &str) -> Result<Vec<Arc<TriangPresentation>>> {
        ids.iter().map(|s| lookup(&self.presentations, "presentation", s, owner).cloned()).collect()
    }

    fn resolve_tri_functor(&self, f: &TriFunctorEntry) -> Result<TriFunctorData> {
        let owner = format!("functor {}", f.id);
        let sources = self.sources(&f.sources, &owner)?;
        let target = lookup(&self.presentations, "presentation", &f.target, &owner)?.clone();
        let mut objects = BTreeMap::new();
        for o in &f.objects {
            check_tuple(&sources, &o.tuple, None, |_, _| true, "object", &owner)?;
            if !target.has_object(&o.value) {
                return Err(unresolved("object", &o.value, &owner));
            }
            objects.insert(o.tuple.clone(), o.value.clone());
        }
        let isos = slot_map(&f.isos, &owner, |v| {
            target.iso(v).map(|_| v.clone()).ok_or_else(|| unresolved("iso", v, &owner))
        })?;
        for (slot, t) in isos.keys() {
            check_tuple(&sources, t, Some(*slot), |s, x| s.iso(x).is_some(), "iso", &owner)?;
        }
        let triangles = slot_map(&f.triangles, &owner, |v| {
            target.triangle(v).map(|_| v.clone()).ok_or_else(|| unresolved("triangle", v, &owner))
        })?;
        for (slot, t) in triangles.keys() {
            check_tuple(&sources, t, Some(*slot), |s, x| s.triangle(x).is_some(), "triangle", &owner)?;
        }
        let mut verdier = BTreeMap::new();
        for v in &f.verdier {
            if target.nine_diagram(&v.diagram).is_none() {
                return Err(unresolved("nine-diagram", &v.diagram, &owner));
            }
            verdier.insert(PairKey { i: v.i, j: v.j, tuple: v.tuple.clone() }, v.diagram.clone());
        }
        Ok(TriFunctorData {
            id: f.id.clone(),
            sources,
            target,
            objects,
            isos,
            triangles,
            verdier,
            battery: f.battery.clone(),
            pair_battery: f.pair_battery.as_deref().map(pairs_in),
            anticommutativity_attested: f.anticommutativity_attested,
        })
    }

    fn resolve_determinant(&self, d: &DeterminantEntry) -> Result<DeterminantData> {
        let owner = format!("determinant {}", d.id);
        let sources = self.sources(&d.sources, &owner)?;
        let target = lookup(&self.picard, "picard", &d.target, &owner)?.clone();
        let obj = tuple_map(&d.obj, target.a(), &owner)?;
        for t in obj.keys() {
            check_tuple(&sources, t, None, |_, _| true, "object", &owner)?;
        }
        let iso = slot_map(&d.iso, &owner, |v| element(target.b(), v, &owner))?;
        for (slot, t) in iso.keys() {
            check_tuple(&sources, t, Some(*slot), |s, x| s.iso(x).is_some(), "iso", &owner)?;
        }
        let tri = slot_map(&d.tri, &owner, |v| element(target.b(), v, &owner))?;
        for (slot, t) in tri.keys() {
            check_tuple(&sources, t, Some(*slot), |s, x| s.triangle(x).is_some(), "triangle", &owner)?;
        }
        if let Some(b) = &d.battery {
            for (k, (list, s)) in b.iter().zip(&sources).enumerate() {
                if let Some(x) = list.iter().find(|x| s.triangle(x).is_none()) {
                    return Err(unresolved("triangle", x, &format!("battery slot {k} of {owner}")));
                }
            }
        }
        Ok(DeterminantData {
            id: d.id.clone(),
            sources,
            target,
            obj,
            iso,
            tri,
            battery: d.battery.clone(),
            pair_battery: d.pair_battery.as_deref().map(pairs_in),
            partial: d.partial,
        })
    }

    /// Canonical pretty-printed JSON.
    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.file).expect("workspace serializes");
        s.push('\n');
        s
    }

    /// Merges another file. An id defined identically in both is kept once.
    pub fn merge(self, other: WorkspaceFile) -> Result<Self> {
        let mut f = self.file;
        union(&mut f.picard, other.picard, |e| &e.id);
        union(&mut f.presentations, other.presentations, |e| &e.id);
        union(&mut f.cubes, other.cubes, |e| &e.id);
        union(&mut f.picard_functors, other.picard_functors, |e| &e.id);
        union(&mut f.tri_functors, other.tri_functors, |e| &e.id);
        union(&mut f.determinants, other.determinants, |e| &e.id);
        union(&mut f.det_morphisms, other.det_morphisms, |e| &e.id);
        union(&mut f.factorizations, other.factorizations, |e| &e.id);
        union(&mut f.catrings, other.catrings, |e| &e.id);
        Self::from_file(f)
    }
}

fn union<T: PartialEq>(into: &mut Vec<T>, from: Vec<T>, id: impl Fn(&T) -> &String) {
    for e in from {
        if !into.iter().any(|x| id(x) == id(&e) && *x == e) {
            into.push(e);
        }
    }
}

fn canonicalize(f: &mut WorkspaceFile) {
    f.picard.sort_by(|a, b| a.id.cmp(&b.id));
    f.presentations.sort_by(|a, b| a.id.cmp(&b.id));
    f.cubes.sort_by(|a, b| a.id.cmp(&b.id));
    f.picard_functors.sort_by(|a, b| a.id.cmp(&b.id));
    f.tri_functors.sort_by(|a, b| a.id.cmp(&b.id));
    f.determinants.sort_by(|a, b| a.id.cmp(&b.id));
    f.det_morphisms.sort_by(|a, b| a.id.cmp(&b.id));
    f.factorizations.sort_by(|a, b| a.id.cmp(&b.id));
    f.catrings.sort_by(|a, b| a.id.cmp(&b.id));
    for d in &mut f.determinants {
        d.obj.sort_by(|a, b| a.tuple.cmp(&b.tuple));
        d.iso.sort_by(|a, b| (a.slot, &a.tuple).cmp(&(b.slot, &b.tuple)));
        d.tri.sort_by(|a, b| (a.slot, &a.tuple).cmp(&(b.slot, &b.tuple)));
        if let Some(p) = &mut d.pair_battery {
            p.sort();
        }
    }
    for t in &mut f.tri_functors {
        t.objects.sort_by(|a, b| a.tuple.cmp(&b.tuple));
        t.isos.sort_by(|a, b| (a.slot, &a.tuple).cmp(&(b.slot, &b.tuple)));
        t.triangles.sort_by(|a, b| (a.slot, &a.tuple).cmp(&(b.slot, &b.tuple)));
        t.verdier.sort_by(|a, b| (a.i, a.j, &a.tuple).cmp(&(b.i, b.j, &b.tuple)));
        if let Some(p) = &mut t.pair_battery {
            p.sort();
        }
    }
    for m in &mut f.det_morphisms {
        m.theta.sort_by(|a, b| a.tuple.cmp(&b.tuple));
    }
    for m in &mut f.factorizations {
        m.alpha.sort_by(|a, b| a.tuple.cmp(&b.tuple));
    }
}

/// Parses one document; errors carry `name:line:column`.
pub fn parse_workspace_file(text: &str, name: &str) -> Result<WorkspaceFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{name}:{}:{}: {e}", e.line(), e.column())))
}

/// Loads and merges the given files. No files gives the empty workspace.
pub fn load_workspace<P: AsRef<Path>>(paths: &[P]) -> Result<Workspace> {
    let mut ws = Workspace::empty();
    for p in paths {
        let p = p.as_ref();
        let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
        ws = ws.merge(parse_workspace_file(&text, &p.display().to_string())?)?;
    }
    Ok(ws)
}

pub fn load_workspace_str(text: &str) -> Result<Workspace> {
    Workspace::from_file(parse_workspace_file(text, "<input>")?)
}

/// Builders turning in-memory data into file entries.
impl WorkspaceFile {
    pub fn new() -> Self {
        Self { multidet_schema: SCHEMA_VERSION, ..Default::default() }
    }

    pub fn add_picard(&mut self, id: &str, p: &PicardPresentation) {
        self.picard.push(PicardEntry { id: id.into(), pi0: p.a().clone(), pi1: p.b().clone(), symmetry: p.symmetry.clone() });
    }

    pub fn add_presentation(&mut self, t: &TriangPresentation) {
        self.presentations.push(t.clone());
    }

    pub fn add_cube(&mut self, id: &str, picard: &str, c: &Cube) {
        self.cubes.push(CubeEntry { id: id.into(), picard: picard.into(), n: c.n, vertices: c.vertices.clone(), structure: c.structure.clone() });
    }

    /// Cells cannot be read back from closures, so they are supplied.
    pub fn add_picard_functor(&mut self, id: &str, sources: &[&str], target: &str, f: &PicardFunctorData, cells: Vec<CellSpec>) {
        self.picard_functors.push(PicardFunctorEntry {
            id: id.into(),
            sources: sources.iter().map(|s| s.to_string()).collect(),
            target: target.into(),
            objects: f.objects.iter().map(|(g, v)| GensValue { gens: g.clone(), value: v.clone() }).collect(),
            morphisms: f
                .morphisms
                .iter()
                .map(|t| t.iter().map(|((g, j), v)| MorphismValue { gens: g.clone(), gen: *j, value: v.clone() }).collect())
                .collect(),
            cells,
        });
    }

    pub fn add_tri_functor(&mut self, f: &TriFunctorData) {
        self.tri_functors.push(TriFunctorEntry {
            id: f.id.clone(),
            sources: f.sources.iter().map(|s| s.id.clone()).collect(),
            target: f.target.id.clone(),
            objects: f.objects.iter().map(|(t, v)| TupleValue { tuple: t.clone(), value: v.clone() }).collect(),
            isos: f.isos.iter().map(|((s, t), v)| SlotValue { slot: *s, tuple: t.clone(), value: v.clone() }).collect(),
            triangles: f.triangles.iter().map(|((s, t), v)| SlotValue { slot: *s, tuple: t.clone(), value: v.clone() }).collect(),
            verdier: f
                .verdier
                .iter()
                .map(|(p, d)| VerdierEntry { i: p.i, j: p.j, tuple: p.tuple.clone(), diagram: d.clone() })
                .collect(),
            battery: f.battery.clone(),
            pair_battery: f.pair_battery.as_ref().map(pairs_out),
            anticommutativity_attested: f.anticommutativity_attested,
        });
    }

    pub fn add_determinant(&mut self, d: &DeterminantData, target: &str) {
        self.determinants.push(DeterminantEntry {
            id: d.id.clone(),
            sources: d.sources.iter().map(|s| s.id.clone()).collect(),
            target: target.into(),
            obj: d.obj.iter().map(|(t, v)| TupleValue { tuple: t.clone(), value: v.clone() }).collect(),
            iso: d.iso.iter().map(|((s, t), v)| SlotValue { slot: *s, tuple: t.clone(), value: v.clone() }).collect(),
            tri: d.tri.iter().map(|((s, t), v)| SlotValue { slot: *s, tuple: t.clone(), value: v.clone() }).collect(),
            battery: d.battery.clone(),
            pair_battery: d.pair_battery.as_ref().map(pairs_out),
            partial: d.partial,
        });
    }

    pub fn add_det_morphism(&mut self, id: &str, d1: &str, d2: &str, theta: &BTreeMap<Tuple, Elem>) {
        self.det_morphisms.push(DetMorphismEntry {
            id: id.into(),
            d1: d1.into(),
            d2: d2.into(),
            theta: theta.iter().map(|(t, v)| TupleValue { tuple: t.clone(), value: v.clone() }).collect(),
        });
    }

    pub fn add_factorization(&mut self, id: &str, universal: &str, det: &str, functor: &str, alpha: &BTreeMap<Tuple, Elem>) {
        self.factorizations.push(FactorizationEntry {
            id: id.into(),
            universal: universal.into(),
            det: det.into(),
            functor: functor.into(),
            alpha: alpha.iter().map(|(t, v)| TupleValue { tuple: t.clone(), value: v.clone() }).collect(),
        });
    }

    pub fn add_catring(&mut self, r: &CategoricalRingData, base: &str, mult: &str) {
        self.catrings.push(CatRingEntry {
            id: r.id.clone(),
            base: base.into(),
            mult: mult.into(),
            unit: r.unit.clone(),
            left_act: r.left_act.clone(),
            right_act: r.right_act.clone(),
        });
    }
}

#[cfg(test)]
mod tests;
