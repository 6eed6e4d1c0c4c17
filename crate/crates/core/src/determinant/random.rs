//! Solving the axioms for `tri`/`iso`, Euler determinants and random
//! instances.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rand::Rng;

use super::equations::{axiom_equations, Var};
use super::solver::{is_prime, GfSystem};
use super::{with, DeterminantData};
use crate::algebra::{smith_normal_form, Elem, IntMatrix};
use crate::error::{Error, Result};
use crate::picard::PicardPresentation;
use crate::trianglecat::{euler, parse_dims, TriangPresentation};

/// `Some(p)` for `B = Z/p`, `Some(1)` for `B = 0`.
fn modulus(target: &PicardPresentation) -> Result<u64> {
    match target.b().factors() {
        [] => Ok(1),
        [p] if is_prime(*p) => Ok(*p),
        _ => Err(Error::Invalid(format!("the solver needs π₁ = Z/p with p prime, got {}", target.b()))),
    }
}

/// Every `tri` and `iso` entry a determinant on these sources carries.
fn entries(d: &DeterminantData) -> Vec<Var> {
    let mut out = vec![];
    for i in 0..d.arity() {
        let battery = d.battery(i);
        for ctx in d.slot_contexts(i) {
            out.extend(battery.iter().map(|t| Var::Tri(i, with(&ctx, i, t))));
            out.extend(d.sources[i].isos.iter().map(|f| Var::Iso(i, with(&ctx, i, &f.id))));
        }
    }
    out
}

/// Fills `tri` and `iso` with a solution of the axiomatic equations for the
/// given `obj`, choosing free entries with `free`. `Ok(None)` when the
/// equations are inconsistent for this `obj`.
pub fn solve_determinant(d: &DeterminantData, mut free: impl FnMut(&Var) -> u64) -> Result<Option<DeterminantData>> {
    let p = modulus(&d.target)?;
    let vars = entries(d);
    let mut out = d.clone();
    out.tri.clear();
    out.iso.clear();
    if p == 1 {
        for v in vars {
            insert(&mut out, v, Elem(vec![]));
        }
        return Ok(Some(out));
    }
    let mut index: BTreeMap<Var, usize> = BTreeMap::new();
    for v in &vars {
        let k = index.len();
        index.entry(v.clone()).or_insert(k);
    }
    let eqs = axiom_equations(d);
    let mut system = GfSystem::new(p);
    let b = d.target.b();
    for e in &eqs {
        let mut row: BTreeMap<usize, u64> = BTreeMap::new();
        for (vs, sign) in [(&e.lhs, 1), (&e.rhs, p - 1)] {
            for v in vs.iter() {
                let k = index.len();
                let k = *index.entry(v.clone()).or_insert(k);
                *row.entry(k).or_insert(0) += sign;
            }
        }
        let mut c = b.zero();
        for (u, v) in &e.sym {
            let (Some(ou), Some(ov)) = (d.obj.get(u), d.obj.get(v)) else {
                return Err(Error::MissingDatum(format!("obj values for {} at {}", e.check, e.location)));
            };
            c = b.add(&c, &d.target.symmetry(ou, ov));
        }
        let rhs = c.0[0].rem_euclid(p as i64) as u64;
        if !system.add(row, rhs) {
            return Ok(None);
        }
    }
    let by_index: Vec<&Var> = {
        let mut v: Vec<(&Var, &usize)> = index.iter().collect();
        v.sort_by_key(|(_, k)| **k);
        v.into_iter().map(|(v, _)| v).collect()
    };
    let x = system.solve(index.len(), |k| free(by_index[k]));
    for (v, k) in &index {
        insert(&mut out, v.clone(), Elem(vec![x[*k] as i64]));
    }
    Ok(Some(out))
}

fn insert(d: &mut DeterminantData, v: Var, value: Elem) {
    match v {
        Var::Tri(i, t) => d.tri.insert((i, t), value),
        Var::Iso(i, t) => d.iso.insert((i, t), value),
    };
}

/// `obj(x₁, …, xₙ) = Π χ(xᵢ)` into `(Z, Z/2, xy)` on presentations whose
/// objects are dimension vectors, with the additivity data solved from the
/// axioms (free entries set to 0).
pub fn euler_determinant(sources: Vec<Arc<TriangPresentation>>) -> Result<DeterminantData> {
    let mut d = DeterminantData::empty("euler", sources, PicardPresentation::z_with_sign());
    for t in d.object_tuples() {
        let mut chi = 1;
        for x in &t {
            let v = parse_dims(x).ok_or_else(|| Error::Invalid(format!("object {x} is not a dimension vector")))?;
            chi *= euler(v);
        }
        d.obj.insert(t, Elem(vec![chi]));
    }
    solve_determinant(&d, |_| 0)?.ok_or_else(|| Error::Invalid("the Euler class admits no additivity data".into()))
}

/// The product of Euler determinants on `g × g`:
/// `tri₁(Δ; w) = tri_E(Δ)·χ(w) + [corrected]·χ(x)χ(z)·C(χ(w), 2)` and
/// `tri₂(w; Δ) = χ(w)·tri_E(Δ)`, isos likewise scaled. Objects outside the
/// graded-lines family count as `χ = 0`.
pub fn product_euler_determinant(g: Arc<TriangPresentation>, corrected: bool) -> Result<DeterminantData> {
    let e = euler_determinant(vec![g.clone()])?;
    let chi = |x: &str| parse_dims(x).map(euler).unwrap_or(0);
    let mut d = DeterminantData::empty("product-euler", vec![g.clone(), g.clone()], PicardPresentation::z_with_sign());
    let b = d.target.b().clone();
    for t in d.object_tuples() {
        d.obj.insert(t.clone(), Elem(vec![chi(&t[0]) * chi(&t[1])]));
    }
    for w in &g.objects {
        let cw = chi(w);
        for ((_, k), v) in &e.tri {
            let Some(tri) = g.triangle(&k[0]) else { continue };
            let mut first = v.0[0] * cw;
            if corrected {
                first += chi(&tri.x) * chi(&tri.z) * (cw * (cw - 1) / 2);
            }
            d.tri.insert((0, vec![k[0].clone(), w.clone()]), b.reduce(Elem(vec![first])));
            d.tri.insert((1, vec![w.clone(), k[0].clone()]), b.reduce(Elem(vec![v.0[0] * cw])));
        }
        for ((_, k), v) in &e.iso {
            d.iso.insert((0, vec![k[0].clone(), w.clone()]), b.reduce(Elem(vec![v.0[0] * cw])));
            d.iso.insert((1, vec![w.clone(), k[0].clone()]), b.reduce(Elem(vec![v.0[0] * cw])));
        }
    }
    Ok(d)
}


/// Integer-valued additive functions on the objects of `t`: a basis of
/// `{w : w(y) = w(x) + w(z) on triangles, w(a) = w(b) along isos}`.
pub fn additive_functions(t: &TriangPresentation) -> Result<Vec<BTreeMap<String, i64>>> {
    let pos: BTreeMap<&str, usize> = t.objects.iter().enumerate().map(|(k, o)| (o.as_str(), k)).collect();
    let mut triplets = vec![];
    let mut r = 0;
    let mut row = |entries: &[(&str, i64)]| {
        for (o, c) in entries {
            if let Some(&k) = pos.get(o) {
                triplets.push((r, k, *c));
            }
        }
        r += 1;
    };
    for tri in &t.triangles {
        row(&[(&tri.y, 1), (&tri.x, -1), (&tri.z, -1)]);
    }
    for f in &t.isos {
        row(&[(&f.source, 1), (&f.target, -1)]);
    }
    row(&[(&t.zero, 1)]);
    let m = IntMatrix::from_triplets(r, t.objects.len(), triplets)?;
    let snf = smith_normal_form(&m)?;
    let rank = snf.rank();
    let mut out = vec![];
    for k in rank..t.objects.len() {
        let col: BTreeMap<String, i64> = t
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), snf.v.get(i, k).to_i64().expect("small kernel entries")))
            .collect();
        out.push(col);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    /// A random solution of the axioms.
    Repaired,
    /// A solution with one or two entries changed.
    Perturbed,
    /// A solution whose `obj` was changed at one tuple.
    ObjDefect,
    /// Uniformly random `tri` and `iso`.
    Raw,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub data: DeterminantData,
    pub kind: InstanceKind,
}

/// Random `obj`: a product of additive functions per slot times a random
/// element of `A`.
fn random_obj<R: Rng + ?Sized>(d: &mut DeterminantData, bases: &[Vec<BTreeMap<String, i64>>], rng: &mut R) {
    let ws: Vec<BTreeMap<String, i64>> = bases
        .iter()
        .zip(&d.sources)
        .map(|(basis, src)| {
            let coeffs: Vec<i64> = basis.iter().map(|_| rng.gen_range(-2..=2)).collect();
            src.objects
                .iter()
                .map(|o| (o.clone(), basis.iter().zip(&coeffs).map(|(w, c)| w[o] * c).sum()))
                .collect()
        })
        .collect();
    let scale = d.target.a().random_element(rng, 3);
    d.obj.clear();
    for t in d.object_tuples() {
        let k: i64 = t.iter().zip(&ws).map(|(x, w)| w[x]).product();
        let v = d.target.a().scale(k, &scale);
        d.obj.insert(t, v);
    }
}

fn random_b<R: Rng + ?Sized>(d: &DeterminantData, rng: &mut R) -> Elem {
    d.target.b().random_element(rng, 3)
}

fn nonzero<R: Rng + ?Sized>(g: &crate::algebra::FgAbelianGroup, rng: &mut R, bound: i64) -> Elem {
    if g.is_trivial() {
        return g.zero();
    }
    loop {
        let e = g.random_element(rng, bound);
        if !g.is_zero(&e) {
            return e;
        }
    }
}

/// `count` random determinants on the given sources, a mix of axiom
/// solutions and mutations of them. Needs `π₁ = Z/p` or `0`.
pub fn random_instances<R: Rng + ?Sized>(
    template: &DeterminantData,
    count: usize,
    rng: &mut R,
) -> Result<Vec<Instance>> {
    modulus(&template.target)?;
    let bases: Vec<_> = template.sources.iter().map(|s| additive_functions(s)).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut d = template.clone();
        random_obj(&mut d, &bases, rng);
        let roll = rng.gen_range(0..20);
        let kind = match roll {
            0..=7 => InstanceKind::Repaired,
            8..=13 => InstanceKind::Perturbed,
            14..=16 => InstanceKind::ObjDefect,
            _ => InstanceKind::Raw,
        };
        let p = modulus(&d.target)?.max(2);
        let Some(mut sol) = solve_determinant(&d, |_| rng.gen_range(0..p))? else { continue };
        sol.id = format!("random-{}", out.len());
        match kind {
            InstanceKind::Repaired => {}
            InstanceKind::Perturbed => {
                for _ in 0..rng.gen_range(1..=2) {
                    let b = nonzero(sol.target.b(), rng, 3);
                    if rng.gen_bool(0.8) || sol.iso.is_empty() {
                        let k = rng.gen_range(0..sol.tri.len());
                        let v = sol.tri.values_mut().nth(k).expect("in range");
                        *v = sol.target.b().add(v, &b);
                    } else {
                        let k = rng.gen_range(0..sol.iso.len());
                        let v = sol.iso.values_mut().nth(k).expect("in range");
                        *v = sol.target.b().add(v, &b);
                    }
                }
            }
            InstanceKind::ObjDefect => {
                let k = rng.gen_range(0..sol.obj.len());
                let a = sol.target.a().clone();
                let v = sol.obj.values_mut().nth(k).expect("in range");
                *v = a.add(v, &nonzero(&a, rng, 2));
            }
            InstanceKind::Raw => {
                let keys: Vec<_> = sol.tri.keys().cloned().collect();
                for k in keys {
                    let b = random_b(&sol, rng);
                    sol.tri.insert(k, b);
                }
                let keys: Vec<_> = sol.iso.keys().cloned().collect();
                for k in keys {
                    let b = random_b(&sol, rng);
                    sol.iso.insert(k, b);
                }
            }
        }
        out.push(Instance { data: sol, kind });
    }
    Ok(out)
}
