//! Categorical rings in skeletal form and the K₀ ring of a tensor
//! triangulated presentation.

mod k0;

pub use k0::{compute_k0_ring, K0RingPresentation};

use std::collections::BTreeMap;

use crate::algebra::{Elem, FgAbelianGroup};
use crate::error::{Error, Result};
use crate::picard::{check_multiexact_picard_functor, validate_picard, CellFn, PicardFunctorData, PicardPresentation};
use crate::report::{Report, ReportItem};

/// Coordinates sampled on each side when `π₀` is infinite.
pub const SAMPLE_BOUND: i64 = 2;

/// A Picard groupoid with a multiexact, unital, associative product.
///
/// `mult` carries the product as a functor `P × P → P` (object table, values
/// on automorphisms, structure cells). The actions of `π₀` on `π₁` are also
/// stored as tables and must agree with those derived from `mult`.
#[derive(Clone, Debug)]
pub struct CategoricalRingData {
    pub id: String,
    pub base: PicardPresentation,
    pub mult: PicardFunctorData,
    pub unit: Elem,
    /// `left_act[i][k] = e_i · b_k`
    pub left_act: Vec<Vec<Elem>>,
    /// `right_act[i][k] = b_k · e_i`
    pub right_act: Vec<Vec<Elem>>,
}

impl CategoricalRingData {
    /// Ring with the given multiplication table on generators, zero
    /// structure cells and functor values on automorphisms taken from the
    /// action tables.
    pub fn from_tables(
        id: impl Into<String>,
        base: PicardPresentation,
        table: Vec<Vec<Elem>>,
        unit: Elem,
        left_act: Vec<Vec<Elem>>,
        right_act: Vec<Vec<Elem>>,
    ) -> Self {
        let mut objects = BTreeMap::new();
        for (i, row) in table.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                objects.insert(vec![i, j], v.clone());
            }
        }
        let mut morphisms: Vec<BTreeMap<(Vec<usize>, usize), Elem>> = vec![BTreeMap::new(), BTreeMap::new()];
        for (i, row) in right_act.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                morphisms[0].insert((vec![0, i], k), v.clone());
            }
        }
        for (i, row) in left_act.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                morphisms[1].insert((vec![i, 0], k), v.clone());
            }
        }
        let zero = CellFn::zero(base.b());
        let mult = PicardFunctorData {
            sources: vec![base.clone(), base.clone()],
            target: base.clone(),
            objects,
            morphisms,
            cells: vec![zero.clone(), zero],
        };
        Self { id: id.into(), base, mult, unit, left_act, right_act }
    }

    /// `Z` with `π₁ = 0` and integer multiplication.
    pub fn discrete_integers() -> Self {
        let base = PicardPresentation::discrete(FgAbelianGroup::integers());
        Self::from_tables("Z", base, vec![vec![Elem(vec![1])]], Elem(vec![1]), vec![vec![]], vec![vec![]])
    }

    /// `(Z, Z/2, xy)` with integer multiplication; both actions scale by
    /// parity.
    pub fn integers_with_sign() -> Self {
        let mult = PicardFunctorData::integer_product();
        let one = || vec![vec![Elem(vec![1])]];
        Self {
            id: "Z-sign".into(),
            base: mult.target.clone(),
            mult,
            unit: Elem(vec![1]),
            left_act: one(),
            right_act: one(),
        }
    }

    pub fn multiply(&self, x: &Elem, y: &Elem) -> Elem {
        self.mult.apply(&[x.clone(), y.clone()])
    }

    /// `x · b`, extended biadditively from the table.
    pub fn act_left(&self, x: &Elem, b: &Elem) -> Elem {
        act(self.base.b(), &self.left_act, x, b)
    }

    /// `b · x`
    pub fn act_right(&self, b: &Elem, x: &Elem) -> Elem {
        act(self.base.b(), &self.right_act, x, b)
    }

    fn shape_errors(&self) -> Vec<String> {
        let (n, m) = (self.base.a().ngens(), self.base.b().ngens());
        let mut out = vec![];
        if self.mult.sources != [self.base.clone(), self.base.clone()] || self.mult.target != self.base {
            out.push("mult is not a functor P × P → P on the base".to_string());
        }
        if let Err(e) = self.mult.validate_shape() {
            out.push(e.to_string());
        }
        if !self.base.a().contains(&self.unit) {
            out.push(format!("unit {} is not in π₀", self.unit));
        }
        for (name, t) in [("left_act", &self.left_act), ("right_act", &self.right_act)] {
            if t.len() != n || t.iter().any(|row| row.len() != m || row.iter().any(|v| !self.base.b().contains(v))) {
                out.push(format!("{name} must be a {n} × {m} table of π₁ elements"));
            }
        }
        out
    }
}

fn act(b: &FgAbelianGroup, table: &[Vec<Elem>], x: &Elem, m: &Elem) -> Elem {
    let mut acc = b.zero();
    for (i, row) in table.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            let c = x.0[i] * m.0[k];
            if c != 0 {
                acc = b.add(&acc, &b.scale(c, v));
            }
        }
    }
    acc
}

/// Action of `e_i` on `b_k` read off the functor as the σ composite
/// `0 ≅ x⊗0 → x⊗0 ≅ 0`: conjugation of `F(1_x, b)` by the unit cell of the
/// other slot. Returns `(left, right)`.
fn sigma_actions(r: &CategoricalRingData, i: usize, k: usize) -> (Elem, Elem) {
    let (a, b) = (r.base.a(), r.base.b());
    let (x, m, z) = (a.generator(i), b.generator(k), a.zero());
    let conj = |cell: Elem, v: Elem| b.sum(&[b.neg(&cell), v, cell]);
    let left = conj(r.mult.cells[1].eval(&[x.clone(), z.clone()], &z, &z), r.mult.apply_morphism(1, &[x.clone(), z.clone()], &m));
    let right = conj(r.mult.cells[0].eval(&[z.clone(), x.clone()], &z, &z), r.mult.apply_morphism(0, &[z.clone(), x], &m));
    (left, right)
}

/// Checks the ring axioms on generators (associativity, unit), the action
/// axioms for the actions σ induces, agreement of the stored actions with
/// them, and
/// multiexactness of the product functor.
pub fn validate_categorical_ring(r: &CategoricalRingData) -> Report {
    let mut report = Report::new("validate-catring");
    report.absorb("base", validate_picard(&r.base));
    let shape = r.shape_errors();
    if !shape.is_empty() {
        for e in shape {
            report.push(ReportItem::fail("shape", r.id.as_str(), e));
        }
        return report.finish();
    }
    let (a, b) = (r.base.a(), r.base.b());
    let gens: Vec<Elem> = (0..a.ngens()).map(|i| a.generator(i)).collect();
    let bgens: Vec<Elem> = (0..b.ngens()).map(|k| b.generator(k)).collect();
    let mut counts = [0usize; 4];

    for (i, x) in gens.iter().enumerate() {
        for (j, y) in gens.iter().enumerate() {
            for (k, z) in gens.iter().enumerate() {
                let l = r.multiply(&r.multiply(x, y), z);
                let rr = r.multiply(x, &r.multiply(y, z));
                if l == rr {
                    counts[0] += 1;
                } else {
                    report.push(ReportItem::fail("associativity", format!("(e{i}, e{j}, e{k})"), format!("(xy)z = {l} but x(yz) = {rr}")));
                }
            }
        }
        let (l, rr) = (r.multiply(&r.unit, x), r.multiply(x, &r.unit));
        if &l != x || &rr != x {
            report.push(ReportItem::fail("unit", format!("e{i}"), format!("1·x = {l}, x·1 = {rr}")));
        } else {
            counts[1] += 1;
        }
    }
    report.push(ReportItem::pass("associativity", "generator triples", format!("{} triples hold", counts[0])));
    report.push(ReportItem::pass("unit", "generators", format!("unit {} on {} generators", r.unit, counts[1])));
    counts[1] = 0;

    // axioms on the actions σ induces; the stored tables are only compared
    let sigma: Vec<Vec<(Elem, Elem)>> = (0..gens.len()).map(|i| (0..bgens.len()).map(|k| sigma_actions(r, i, k)).collect()).collect();
    let dl: Vec<Vec<Elem>> = sigma.iter().map(|row| row.iter().map(|p| p.0.clone()).collect()).collect();
    let dr: Vec<Vec<Elem>> = sigma.iter().map(|row| row.iter().map(|p| p.1.clone()).collect()).collect();
    let act_l = |x: &Elem, m: &Elem| act(b, &dl, x, m);
    let act_r = |m: &Elem, x: &Elem| act(b, &dr, x, m);
    for (i, x) in gens.iter().enumerate() {
        for (k, m) in bgens.iter().enumerate() {
            counts[1] += 1;
            let loc = format!("(e{i}, b{k})");
            for (side, v) in [("left", &r.left_act[i][k]), ("right", &r.right_act[i][k])] {
                let (dx, dm) = (a.generator_order(i) as i64, b.generator_order(k) as i64);
                if dx > 0 && !b.is_zero(&b.scale(dx, v)) || dm > 0 && !b.is_zero(&b.scale(dm, v)) {
                    report.push(ReportItem::fail("action-well-defined", loc.clone(), format!("{side} value {v} ignores an order")));
                }
            }
            let (sl, sr) = &sigma[i][k];
            if !b.is_zero(&b.sub(sl, &r.left_act[i][k])) || !b.is_zero(&b.sub(sr, &r.right_act[i][k])) {
                report.push(ReportItem::fail(
                    "sigma-agreement",
                    loc.clone(),
                    format!("σ gives ({sl}, {sr}), tables give ({}, {})", r.left_act[i][k], r.right_act[i][k]),
                ));
            }
            for (j, y) in gens.iter().enumerate() {
                counts[2] += 1;
                let loc = format!("(e{i}, e{j}, b{k})");
                let xy = r.multiply(x, y);
                let eq = |p: &Elem, q: &Elem| b.is_zero(&b.sub(p, q));
                let (l, rr) = (act_l(x, &act_l(y, m)), act_l(&xy, m));
                if !eq(&l, &rr) {
                    report.push(ReportItem::fail("left-action", loc.clone(), format!("x·(y·b) = {l} but (xy)·b = {rr}")));
                }
                let (l, rr) = (act_r(&act_r(m, x), y), act_r(m, &xy));
                if !eq(&l, &rr) {
                    report.push(ReportItem::fail("right-action", loc.clone(), format!("(b·x)·y = {l} but b·(xy) = {rr}")));
                }
                let (l, rr) = (act_r(&act_l(x, m), y), act_l(x, &act_r(m, y)));
                if !eq(&l, &rr) {
                    report.push(ReportItem::fail("bimodule", loc, format!("(x·b)·y = {l} but x·(b·y) = {rr}")));
                }
            }
        }
    }
    for (k, m) in bgens.iter().enumerate() {
        counts[3] += 1;
        let (l, rr) = (act_l(&r.unit, m), act_r(m, &r.unit));
        if !b.is_zero(&b.sub(&l, m)) || !b.is_zero(&b.sub(&rr, m)) {
            report.push(ReportItem::fail("unit-action", format!("b{k}"), format!("1·b = {l}, b·1 = {rr}")));
        }
    }
    if !bgens.is_empty() {
        report.push(ReportItem::pass("actions", "generators", format!("{} pairs, {} triples, {} units", counts[1], counts[2], counts[3])));
    }

    let bound = (!a.is_finite()).then_some(SAMPLE_BOUND);
    match check_multiexact_picard_functor(&r.mult, bound) {
        Ok(m) => {
            if let Some(bound) = bound {
                report.push(ReportItem::note("multiexact", "sampling", format!("π₀ infinite, coordinates in [-{bound}, {bound}]")));
            }
            report.absorb("multiexact", m);
        }
        Err(e) => report.push(ReportItem::fail("multiexact", r.id.as_str(), e.to_string())),
    }
    report.finish()
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Pi0Ring {
    pub group: FgAbelianGroup,
    /// Products of generators.
    pub table: Vec<Vec<Elem>>,
    pub unit: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Pi1Bimodule {
    pub group: FgAbelianGroup,
    pub left: Vec<Vec<Elem>>,
    pub right: Vec<Vec<Elem>>,
}

pub fn pi0_ring(r: &CategoricalRingData) -> Pi0Ring {
    let a = r.base.a();
    let table = (0..a.ngens())
        .map(|i| (0..a.ngens()).map(|j| r.multiply(&a.generator(i), &a.generator(j))).collect())
        .collect();
    Pi0Ring { group: a.clone(), table, unit: r.unit.clone() }
}

/// The `π₀`-bimodule `π₁`, with actions derived from the σ composite and
/// compared against the stored tables.
pub fn pi1_bimodule(r: &CategoricalRingData) -> Result<Pi1Bimodule> {
    if let Some(e) = r.shape_errors().into_iter().next() {
        return Err(Error::DimensionMismatch(e));
    }
    let (a, b) = (r.base.a(), r.base.b());
    let mut left = vec![vec![]; a.ngens()];
    let mut right = vec![vec![]; a.ngens()];
    for i in 0..a.ngens() {
        for k in 0..b.ngens() {
            let (sl, sr) = sigma_actions(r, i, k);
            for (side, derived, stored) in [("left", &sl, &r.left_act[i][k]), ("right", &sr, &r.right_act[i][k])] {
                if !b.is_zero(&b.sub(derived, stored)) {
                    return Err(Error::SigmaMismatch(format!("{side} action of e{i} on b{k}: σ gives {derived}, table has {stored}")));
                }
            }
            left[i].push(b.reduce(sl));
            right[i].push(b.reduce(sr));
        }
    }
    Ok(Pi1Bimodule { group: b.clone(), left, right })
}

#[cfg(test)]
mod tests;
