//! Determinant and multi-determinant functors on finite batteries.
//!
//! A determinant `D : T₁ × … × Tₙ → P` into a skeletal Picard groupoid is
//! stored as three tables: `obj` on object tuples, `iso` on tuples carrying
//! an iso in one slot, and `tri` on tuples carrying a triangle in one slot,
//! the value `det(Δ) : det(z) + det(x) → det(y)` as an element of `B`.
//!
//! Every axiom becomes a linear equation in `B` (see [`equations`]); the
//! cubical formulation builds image cubes and runs [`crate::cubes::validate_cube`]
//! on them (see [`cubical`]).

pub mod cubical;
pub mod equations;
mod ops;
mod random;
pub mod solver;
#[cfg(test)]
mod tests;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::algebra::Elem;
use crate::picard::PicardPresentation;
use crate::trianglecat::{object_tuples_except, PairKey, TriangPresentation, Tuple};

pub use cubical::{cross_check_definitions, validate_cubical_determinant, CubicalBattery};
pub use equations::{axiom_equations, validate_determinant, validate_multideterminant, Equation, ObjEquation, Var};
pub use ops::{
    check_det_morphism, check_universal_factorization, compose_with_multiexact, sum_determinants, twist, DetMorphismData,
};
pub use random::{euler_determinant, product_euler_determinant, random_instances, solve_determinant, Instance, InstanceKind};

#[derive(Clone, Debug)]
pub struct DeterminantData {
    pub id: String,
    pub sources: Vec<Arc<TriangPresentation>>,
    pub target: PicardPresentation,
    pub obj: BTreeMap<Tuple, Elem>,
    /// Keyed by slot and a tuple holding an iso id at that slot.
    pub iso: BTreeMap<(usize, Tuple), Elem>,
    /// Keyed by slot and a tuple holding a triangle id at that slot.
    pub tri: BTreeMap<(usize, Tuple), Elem>,
    /// Per-slot triangle battery; `None` means every listed triangle.
    pub battery: Option<Vec<Vec<String>>>,
    /// Triangle pairs subject to the two-triangles axiom; `None` means all.
    pub pair_battery: Option<BTreeSet<PairKey>>,
    /// Entries may be missing (outside a window). Checks that touch them
    /// are reported untestable instead of raising `MissingDatum`.
    pub partial: bool,
}

impl DeterminantData {
    /// The determinant sending everything to zero.
    pub fn zero(sources: Vec<Arc<TriangPresentation>>, target: PicardPresentation) -> Self {
        let mut d = Self::empty("zero", sources, target);
        let (a0, b0) = (d.target.a().zero(), d.target.b().zero());
        for t in d.object_tuples() {
            d.obj.insert(t, a0.clone());
        }
        for i in 0..d.arity() {
            let src = d.sources[i].clone();
            for ctx in d.slot_contexts(i) {
                for f in &src.isos {
                    d.iso.insert((i, with(&ctx, i, &f.id)), b0.clone());
                }
                for t in &src.triangles {
                    d.tri.insert((i, with(&ctx, i, &t.id)), b0.clone());
                }
            }
        }
        d
    }

    pub fn empty(id: &str, sources: Vec<Arc<TriangPresentation>>, target: PicardPresentation) -> Self {
        Self {
            id: id.into(),
            sources,
            target,
            obj: BTreeMap::new(),
            iso: BTreeMap::new(),
            tri: BTreeMap::new(),
            battery: None,
            pair_battery: None,
            partial: false,
        }
    }

    pub fn arity(&self) -> usize {
        self.sources.len()
    }

    pub fn battery(&self, slot: usize) -> Vec<String> {
        match &self.battery {
            Some(b) => b[slot].clone(),
            None => self.sources[slot].triangles.iter().map(|t| t.id.clone()).collect(),
        }
    }

    pub fn object_tuples(&self) -> Vec<Tuple> {
        object_tuples_except(&self.sources, &[])
    }

    pub fn slot_contexts(&self, i: usize) -> Vec<Tuple> {
        object_tuples_except(&self.sources, &[i])
    }

    /// Pairs of battery triangles in distinct slots, objects elsewhere.
    pub fn pairs(&self) -> Vec<PairKey> {
        if let Some(p) = &self.pair_battery {
            return p.iter().cloned().collect();
        }
        let n = self.arity();
        let mut out = vec![];
        for i in 0..n {
            for j in i + 1..n {
                let (bi, bj) = (self.battery(i), self.battery(j));
                for ctx in object_tuples_except(&self.sources, &[i, j]) {
                    for a in &bi {
                        for b in &bj {
                            out.push(PairKey { i, j, tuple: with(&with(&ctx, i, a), j, b) });
                        }
                    }
                }
            }
        }
        out
    }

    /// Same sources (by content) and target.
    pub fn same_signature(&self, other: &Self) -> bool {
        self.target == other.target
            && self.arity() == other.arity()
            && self.sources.iter().zip(&other.sources).all(|(a, b)| Arc::ptr_eq(a, b) || a == b)
    }
}

pub(crate) fn with(tuple: &[String], slot: usize, value: &str) -> Tuple {
    let mut t = tuple.to_vec();
    t[slot] = value.to_string();
    t
}

pub(crate) fn show(tuple: &[String]) -> String {
    tuple.join(" ⊗ ")
}
