//! Constructions on determinants and checks of morphisms between them.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::equations::{var_value, Eval, Tally, Var};
use super::{show, with, DeterminantData};
use crate::algebra::Elem;
use crate::error::{Error, Result};
use crate::picard::PicardFunctorData;
use crate::report::{Report, ReportItem};
use crate::trianglecat::{check_functor_verdier_admission, TriFunctorData, Tuple};

/// Pointwise sum, with the additivity datum corrected by
/// `c(obj₂(z), obj₁(x))` as for sums of 1-cubes.
pub fn sum_determinants(d1: &DeterminantData, d2: &DeterminantData) -> Result<DeterminantData> {
    if !d1.same_signature(d2) {
        return Err(Error::MismatchedSignature(format!("{} and {} have different sources or targets", d1.id, d2.id)));
    }
    let p = &d1.target;
    let (a, b) = (p.a(), p.b());
    let mut out = DeterminantData::empty(&format!("{}+{}", d1.id, d2.id), d1.sources.clone(), p.clone());
    out.battery = d1.battery.clone().or_else(|| d2.battery.clone());
    out.pair_battery = match (&d1.pair_battery, &d2.pair_battery) {
        (Some(x), Some(y)) => Some(x.intersection(y).cloned().collect()),
        (x, y) => x.clone().or_else(|| y.clone()),
    };
    out.partial = d1.partial || d2.partial;
    for (t, v) in &d1.obj {
        match d2.obj.get(t) {
            Some(w) => {
                out.obj.insert(t.clone(), a.add(v, w));
            }
            None => out.partial = true,
        }
    }
    for (k, v) in &d1.iso {
        match d2.iso.get(k) {
            Some(w) => {
                out.iso.insert(k.clone(), b.add(v, w));
            }
            None => out.partial = true,
        }
    }
    for ((i, t), v) in &d1.tri {
        let Some(w) = d2.tri.get(&(*i, t.clone())) else {
            out.partial = true;
            continue;
        };
        let Some(tri) = d1.sources[*i].triangle(&t[*i]) else { continue };
        let (Some(oz), Some(ox)) = (d2.obj.get(&with(t, *i, &tri.z)), d1.obj.get(&with(t, *i, &tri.x))) else {
            out.partial = true;
            continue;
        };
        out.tri.insert((*i, t.clone()), b.sum([v, w, &p.symmetry(oz, ox)]));
    }
    Ok(out)
}

/// `D ∘ F` for a single-variable `D` on the target of `F`. Requires `F` to
/// carry Verdier structures on its pair battery; the composite inherits
/// that battery. Entries `F` sends out of its window are left out and the
/// result is marked partial.
pub fn compose_with_multiexact(det: &DeterminantData, f: &TriFunctorData) -> Result<DeterminantData> {
    if det.arity() != 1 {
        return Err(Error::MismatchedSignature(format!("{} is not single-variable", det.id)));
    }
    if !(Arc::ptr_eq(&det.sources[0], &f.target) || det.sources[0] == f.target) {
        return Err(Error::MismatchedSignature(format!("{} is not defined on the target of {}", det.id, f.id)));
    }
    let admission = check_functor_verdier_admission(f);
    if !admission.is_valid() {
        let why: Vec<String> = admission.failures().take(3).map(|i| format!("{}: {}", i.location, i.detail)).collect();
        return Err(Error::VerdierAdmissionMissing(format!("{}: {}", f.id, why.join("; "))));
    }
    let mut out = DeterminantData::empty(&format!("{}∘{}", det.id, f.id), f.sources.clone(), det.target.clone());
    out.battery = f.battery.clone();
    out.pair_battery = Some(f.pairs().into_iter().collect());
    out.partial = true;
    let b0 = det.target.b().zero();
    for (t, x) in &f.objects {
        if let Some(v) = det.obj.get(&vec![x.clone()]) {
            out.obj.insert(t.clone(), v.clone());
        }
    }
    for (k, g) in &f.isos {
        let v = det.iso.get(&(0, vec![g.clone()])).cloned().or_else(|| f.target.is_identity(g).then(|| b0.clone()));
        if let Some(v) = v {
            out.iso.insert(k.clone(), v);
        }
    }
    for (k, t) in &f.triangles {
        if let Some(v) = det.tri.get(&(0, vec![t.clone()])) {
            out.tri.insert(k.clone(), v.clone());
        }
    }
    Ok(out)
}

/// `d` transported along `θ : d ⇒ d′`: `tri′ = tri + θ(y) − θ(z) − θ(x)`,
/// `iso′(f) = iso(f) + θ(b) − θ(a)`. Tuples missing from `theta` count as 0.
pub fn twist(d: &DeterminantData, theta: &BTreeMap<Tuple, Elem>) -> DeterminantData {
    let b = d.target.b();
    let zero = b.zero();
    let th = |t: &Tuple| theta.get(t).unwrap_or(&zero).clone();
    let mut out = d.clone();
    out.id = format!("{}^θ", d.id);
    for ((i, t), v) in out.tri.iter_mut() {
        if let Some(tri) = d.sources[*i].triangle(&t[*i]) {
            let shift = b.sub(&th(&with(t, *i, &tri.y)), &b.add(&th(&with(t, *i, &tri.z)), &th(&with(t, *i, &tri.x))));
            *v = b.add(v, &shift);
        }
    }
    for ((i, t), v) in out.iso.iter_mut() {
        if let Some(f) = d.sources[*i].iso(&t[*i]) {
            *v = b.add(v, &b.sub(&th(&with(t, *i, &f.target)), &th(&with(t, *i, &f.source))));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct DetMorphismData {
    pub d1: DeterminantData,
    pub d2: DeterminantData,
    pub theta: BTreeMap<Tuple, Elem>,
}

/// `θ(y) + tri₁(Δ) = tri₂(Δ) + θ(z) + θ(x)` on battery triangles and
/// `θ(b) + iso₁(f) = iso₂(f) + θ(a)` on listed isos.
pub fn check_det_morphism(m: &DetMorphismData) -> Result<Report> {
    let (d1, d2) = (&m.d1, &m.d2);
    if !d1.same_signature(d2) {
        return Err(Error::MismatchedSignature(format!("{} and {} have different sources or targets", d1.id, d2.id)));
    }
    let differ: Vec<String> =
        d1.obj.iter().filter(|(t, v)| d2.obj.get(*t).is_some_and(|w| w != *v)).take(3).map(|(t, _)| show(t)).collect();
    if !differ.is_empty() {
        return Err(Error::ObjMismatch(format!("obj values differ at {}", differ.join(", "))));
    }
    let b = d1.target.b();
    let mut tally = Tally::new(d1.partial || d2.partial);
    let th = |t: &Tuple| m.theta.get(t).cloned().ok_or_else(|| format!("θ({})", show(t)));
    let val = |d: &DeterminantData, v: Var| var_value(d, &v).ok_or_else(|| v.describe());
    for i in 0..d1.arity() {
        let src = d1.sources[i].clone();
        for ctx in d1.slot_contexts(i) {
            let at = |x: &str| with(&ctx, i, x);
            for id in d1.battery(i) {
                let Some(t) = src.triangle(&id) else { continue };
                let sides = (|| {
                    let l = b.add(&th(&at(&t.y))?, &val(d1, Var::Tri(i, at(&id)))?);
                    let r = b.sum([&val(d2, Var::Tri(i, at(&id)))?, &th(&at(&t.z))?, &th(&at(&t.x))?]);
                    Ok::<_, String>((l, r))
                })();
                tally.record("det-morphism", &show(&at(&id)), verdict(b, sides))?;
            }
            for f in &src.isos {
                let sides = (|| {
                    let l = b.add(&th(&at(&f.target))?, &val(d1, Var::Iso(i, at(&f.id)))?);
                    let r = b.add(&val(d2, Var::Iso(i, at(&f.id)))?, &th(&at(&f.source))?);
                    Ok::<_, String>((l, r))
                })();
                tally.record("naturality", &show(&at(&f.id)), verdict(b, sides))?;
            }
        }
    }
    Ok(tally.into_report("check-det-morphism"))
}

fn verdict(b: &crate::algebra::FgAbelianGroup, sides: std::result::Result<(Elem, Elem), String>) -> Eval {
    match sides {
        Err(m) => Eval::Missing(m),
        Ok((l, r)) if b.is_zero(&b.sub(&l, &r)) => Eval::Holds,
        Ok((l, r)) => Eval::Fails(format!("{l} ≠ {r}")),
    }
}

/// Checks a candidate `(f, α)` factoring `D` through `det_u`:
/// `f(obj_u) = obj_D`, and on every battery triangle
/// `α(y) + f(tri_u(Δ)) + μ_f(obj_u z, obj_u x) = α(z) + α(x) + tri_D(Δ)`,
/// with `α(a) : f(det_u(a)) → D(a)` natural on listed isos.
pub fn check_universal_factorization(
    det_u: &DeterminantData,
    d: &DeterminantData,
    f: &PicardFunctorData,
    alpha: &BTreeMap<Tuple, Elem>,
) -> Result<Report> {
    let same_sources = det_u.arity() == d.arity()
        && det_u.sources.iter().zip(&d.sources).all(|(a, b)| Arc::ptr_eq(a, b) || a == b);
    if !same_sources || f.arity() != 1 || f.sources[0] != det_u.target || f.target != d.target {
        return Err(Error::MismatchedSignature(
            "need det_u and D on the same sources and f from the target of det_u to the target of D".into(),
        ));
    }
    f.validate_shape()?;
    let b = d.target.b();
    let ua = det_u.target.a();
    let mut tally = Tally::new(det_u.partial || d.partial);
    let al = |t: &Tuple| alpha.get(t).cloned().ok_or_else(|| format!("α({})", show(t)));
    let uo = |t: &Tuple| det_u.obj.get(t).cloned().ok_or_else(|| format!("obj_u({})", show(t)));
    let val = |dd: &DeterminantData, v: Var| var_value(dd, &v).ok_or_else(|| v.describe());
    for t in d.object_tuples() {
        let ev = match (uo(&t), d.obj.get(&t)) {
            (Err(m), _) => Eval::Missing(m),
            (_, None) => Eval::Missing(format!("obj({})", show(&t))),
            (Ok(u), Some(v)) => {
                let fu = f.apply(&[u]);
                if fu == *v {
                    Eval::Holds
                } else {
                    Eval::Fails(format!("f(obj_u) = {fu} ≠ {v}"))
                }
            }
        };
        tally.record("obj", &show(&t), ev)?;
    }
    for i in 0..d.arity() {
        let src = d.sources[i].clone();
        for ctx in d.slot_contexts(i) {
            let at = |x: &str| with(&ctx, i, x);
            for id in d.battery(i) {
                let Some(t) = src.triangle(&id) else { continue };
                let sides = (|| {
                    let (uz, ux, uy) = (uo(&at(&t.z))?, uo(&at(&t.x))?, uo(&at(&t.y))?);
                    let cell = f.cells[0].eval(&[ua.add(&uz, &ux)], &uz, &ux);
                    let ftri = f.apply_morphism(0, &[uy], &val(det_u, Var::Tri(i, at(&id)))?);
                    let l = b.sum([&al(&at(&t.y))?, &ftri, &cell]);
                    let r = b.sum([&al(&at(&t.z))?, &al(&at(&t.x))?, &val(d, Var::Tri(i, at(&id)))?]);
                    Ok::<_, String>((l, r))
                })();
                tally.record("factorization", &show(&at(&id)), verdict(b, sides))?;
            }
            for g in &src.isos {
                let sides = (|| {
                    let us = uo(&at(&g.source))?;
                    let fiso = f.apply_morphism(0, &[us], &val(det_u, Var::Iso(i, at(&g.id)))?);
                    let l = b.add(&al(&at(&g.target))?, &fiso);
                    let r = b.add(&val(d, Var::Iso(i, at(&g.id)))?, &al(&at(&g.source))?);
                    Ok::<_, String>((l, r))
                })();
                tally.record("alpha-naturality", &show(&at(&g.id)), verdict(b, sides))?;
            }
        }
    }
    let mut report = tally.into_report("check-factorization");
    report.push(ReportItem::note(
        "scope",
        d.id.as_str(),
        "only this candidate (f, α) is checked; existence and uniqueness of universal pairs are not decided",
    ));
    Ok(report.finish())
}
