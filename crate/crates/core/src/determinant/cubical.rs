//! The cubical formulation: a determinant maps cubes of the sources to
//! cubes of the target, compatibly with faces and degeneracies.
//!
//! Cubes of a source presentation at this truncation are its objects,
//! battery triangles (1-cubes), triangle isos (morphisms of 1-cubes) and
//! certified nine-diagrams (2-cubes); every listed octahedron enters as the
//! 2-cube of [`octahedron_to_2cube`]. In several variables a triangle in
//! slot `i` and one in slot `j` span a 2-cube, and an iso in one slot times
//! a triangle in another is a morphism of 1-cubes.
//!
//! Degeneracies are matched up to an isomorphism `θ` of cubical functors.
//! `θ` is forced on tuples containing the zero object: `θ = -tri(0 → 0 → 0)`
//! there. Compatibility then says that trivial triangles are sent to
//! `tri(0 → 0 → 0)`, that the forced values agree between zero slots, and
//! that cubes through a zero object are `θ`-gauges of zero cubes.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::equations::{slot_equations, var_value, Eval, Tally};
use super::{show, with, DeterminantData};
use crate::algebra::Elem;
use crate::cubes::{validate_cube, Cube};
use crate::error::Result;
use crate::report::{Report, ReportItem, Status};
use crate::trianglecat::{check_verdier, is_trivial, octahedron_to_2cube, TriangPresentation, Tuple};

use super::equations::Var;

#[derive(Clone, Debug)]
struct Grid {
    id: String,
    rows: [String; 3],
    cols: [String; 3],
    objects: [[String; 3]; 3],
}

/// The 2-cubes and degenerate data of each source, computed once and
/// shared across determinants on the same sources.
#[derive(Clone, Debug)]
pub struct CubicalBattery {
    grids: Vec<Vec<Grid>>,
    zero_tri: Vec<Option<String>>,
    trivial: Vec<Vec<String>>,
    notes: Vec<ReportItem>,
}

impl CubicalBattery {
    pub fn new(sources: &[Arc<TriangPresentation>]) -> Result<Self> {
        let mut grids = vec![];
        let mut notes = vec![];
        for (slot, src) in sources.iter().enumerate() {
            let mut work = (**src).clone();
            let mut ids = vec![];
            for d in &src.nine_diagrams {
                if src.certificate(&d.id).is_none() {
                    notes.push(ReportItem::note("2-cube", format!("slot {slot} {}", d.id), "skipped: no Verdier certificate"));
                    continue;
                }
                if !check_verdier(src, &d.id)?.is_valid() {
                    notes.push(ReportItem::note("2-cube", format!("slot {slot} {}", d.id), "skipped: certificate does not check"));
                    continue;
                }
                ids.push(d.id.clone());
            }
            for o in &src.octahedra {
                ids.push(octahedron_to_2cube(&mut work, &o.id)?);
            }
            let mut seen = BTreeSet::new();
            let mut list = vec![];
            for id in ids {
                let d = work.nine_diagram(&id).expect("just listed").clone();
                if !seen.insert((d.rows.clone(), d.cols.clone())) {
                    continue;
                }
                if d.rows.iter().chain(&d.cols).any(|t| src.triangle(t).is_none()) {
                    notes.push(ReportItem::note("2-cube", format!("slot {slot} {id}"), "skipped: uses triangles the source does not list"));
                    continue;
                }
                let objects = work.grid(&d).expect("rows resolve");
                list.push(Grid { id, rows: d.rows, cols: d.cols, objects });
            }
            grids.push(list);
        }
        let zero_tri = sources.iter().map(|s| s.find_triangle(&s.zero, &s.zero, &s.zero).map(|t| t.id.clone())).collect();
        let trivial = sources
            .iter()
            .map(|s| s.triangles.iter().filter(|t| is_trivial(s, t)).map(|t| t.id.clone()).collect())
            .collect();
        Ok(Self { grids, zero_tri, trivial, notes })
    }

    pub fn grid_count(&self, slot: usize) -> usize {
        self.grids[slot].len()
    }
}

fn elem(d: &DeterminantData, v: &Var) -> std::result::Result<Elem, String> {
    var_value(d, v).ok_or_else(|| v.describe())
}

fn obj(d: &DeterminantData, t: &Tuple) -> std::result::Result<Elem, String> {
    d.obj.get(t).cloned().ok_or_else(|| format!("obj({})", show(t)))
}

fn cube_verdict(d: &DeterminantData, c: std::result::Result<Cube, String>) -> Eval {
    match c {
        Err(m) => Eval::Missing(m),
        Ok(c) => {
            let r = validate_cube(&d.target, &c);
            if r.status == Status::Valid {
                Eval::Holds
            } else {
                let why: Vec<String> = r.failures().map(|i| format!("{} {}: {}", i.check, i.location, i.detail)).collect();
                Eval::Fails(why.join("; "))
            }
        }
    }
}

/// `φ_y + f = f′ + φ_z + φ_x` for a morphism of 1-cubes.
fn morphism(d: &DeterminantData, phi: [&Var; 3], src: &Var, dst: &Var) -> Eval {
    let b = d.target.b();
    let get = || -> std::result::Result<(Elem, Elem), String> {
        let l = b.add(&elem(d, phi[1])?, &elem(d, src)?);
        let r = b.sum([&elem(d, dst)?, &elem(d, phi[2])?, &elem(d, phi[0])?]);
        Ok((l, r))
    };
    match get() {
        Err(m) => Eval::Missing(m),
        Ok((l, r)) if l == r => Eval::Holds,
        Ok((l, r)) => Eval::Fails(format!("{l} ≠ {r}")),
    }
}

fn equal(d: &DeterminantData, l: std::result::Result<Elem, String>, r: std::result::Result<Elem, String>) -> Eval {
    match (l, r) {
        (Err(m), _) | (_, Err(m)) => Eval::Missing(m),
        (Ok(l), Ok(r)) if d.target.b().is_zero(&d.target.b().sub(&l, &r)) => Eval::Holds,
        (Ok(l), Ok(r)) => Eval::Fails(format!("{l} ≠ {r}")),
    }
}

pub fn validate_cubical_determinant(d: &DeterminantData) -> Result<Report> {
    validate_cubical_with(&CubicalBattery::new(&d.sources)?, d)
}

pub fn validate_cubical_with(cb: &CubicalBattery, d: &DeterminantData) -> Result<Report> {
    let mut tally = Tally::new(d.partial);
    let n = d.arity();
    let a = d.target.a();
    let zeros: Vec<&str> = d.sources.iter().map(|s| s.zero.as_str()).collect();

    // 0-cubes: the zero lemma and isos between objects
    for t in d.object_tuples() {
        if !(0..n).any(|k| t[k] == zeros[k]) {
            continue;
        }
        match d.obj.get(&t) {
            None => tally.missing("zero-lemma", &show(&t), &format!("obj({})", show(&t)))?,
            Some(v) if a.is_zero(v) => tally.pass("zero-lemma"),
            Some(v) => tally.fail("zero-lemma", show(&t), format!("D(…,0,…) = {v} ≠ 0")),
        }
    }
    for e in slot_equations(d).into_iter().filter(|e| e.check.starts_with("iso-")) {
        let ev = e.evaluate(d);
        tally.record(e.check, &e.location, ev)?;
    }
    for i in 0..n {
        let src = d.sources[i].clone();
        let battery: BTreeSet<String> = d.battery(i).into_iter().collect();
        for ctx in d.slot_contexts(i) {
            let at = |x: &str| with(&ctx, i, x);
            for f in &src.isos {
                let loc = show(&at(&f.id));
                let ev = match (obj(d, &at(&f.source)), obj(d, &at(&f.target))) {
                    (Err(m), _) | (_, Err(m)) => Eval::Missing(m),
                    (Ok(u), Ok(v)) if u == v => Eval::Holds,
                    (Ok(u), Ok(v)) => Eval::Fails(format!("{u} ≠ {v}")),
                };
                tally.record("0-cube-morphism", &loc, ev)?;
            }
            // 1-cubes
            for id in d.battery(i) {
                let Some(t) = src.triangle(id.as_str()) else { continue };
                let cube = (|| {
                    Ok(Cube::one(obj(d, &at(&t.x))?, obj(d, &at(&t.y))?, obj(d, &at(&t.z))?, elem(d, &Var::Tri(i, at(&id)))?))
                })();
                tally.record("1-cube", &show(&at(&id)), cube_verdict(d, cube))?;
            }
            for phi in &src.triangle_isos {
                if !battery.contains(&phi.source) || !battery.contains(&phi.target) {
                    continue;
                }
                let v = |x: &str| Var::Iso(i, at(x));
                let ev = morphism(d, [&v(&phi.ix), &v(&phi.iy), &v(&phi.iz)], &Var::Tri(i, at(&phi.source)), &Var::Tri(i, at(&phi.target)));
                tally.record("1-cube-morphism", &show(&at(&phi.id)), ev)?;
            }
            // 2-cubes
            for g in &cb.grids[i] {
                if g.rows.iter().chain(&g.cols).any(|t| !battery.contains(t)) {
                    continue;
                }
                let cube = (|| {
                    let mut vertices = Vec::with_capacity(9);
                    for c in 0..3 {
                        for r in 0..3 {
                            vertices.push(obj(d, &at(&g.objects[r][c]))?);
                        }
                    }
                    let rows = g.rows.iter().map(|t| elem(d, &Var::Tri(i, at(t)))).collect::<std::result::Result<Vec<_>, _>>()?;
                    let cols = g.cols.iter().map(|t| elem(d, &Var::Tri(i, at(t)))).collect::<std::result::Result<Vec<_>, _>>()?;
                    Ok(Cube { n: 2, vertices, structure: vec![rows, cols] })
                })();
                tally.record("2-cube", &show(&at(&g.id)), cube_verdict(d, cube))?;
            }
        }
    }
    // products of cubes in two slots
    for p in d.pairs() {
        let (i, j) = (p.i, p.j);
        let (Some(ti), Some(tj)) = (d.sources[i].triangle(&p.tuple[i]), d.sources[j].triangle(&p.tuple[j])) else {
            continue;
        };
        let at = |u: &str, v: &str| with(&with(&p.tuple, i, u), j, v);
        let cube = (|| {
            let (oi, oj) = (ti.objects(), tj.objects());
            let mut vertices = Vec::with_capacity(9);
            for u in oi {
                for v in oj {
                    vertices.push(obj(d, &at(u, v))?);
                }
            }
            let f1 = oj.iter().map(|v| elem(d, &Var::Tri(i, at(&ti.id, v)))).collect::<std::result::Result<Vec<_>, _>>()?;
            let f2 = oi.iter().map(|u| elem(d, &Var::Tri(j, at(u, &tj.id)))).collect::<std::result::Result<Vec<_>, _>>()?;
            Ok(Cube { n: 2, vertices, structure: vec![f1, f2] })
        })();
        tally.record("pair-2-cube", &show(&p.tuple), cube_verdict(d, cube))?;
    }
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let (si, sj) = (d.sources[i].clone(), d.sources[j].clone());
            for ctx in crate::trianglecat::object_tuples_except(&d.sources, &[i, j]) {
                let at = |u: &str, v: &str| with(&with(&ctx, i, u), j, v);
                for f in si.isos.iter().filter(|f| !si.is_identity(&f.id)) {
                    for id in d.battery(j) {
                        let Some(t) = sj.triangle(&id) else { continue };
                        let v = |x: &str| Var::Iso(i, at(&f.id, x));
                        let ev = morphism(d, [&v(&t.x), &v(&t.y), &v(&t.z)], &Var::Tri(j, at(&f.source, &id)), &Var::Tri(j, at(&f.target, &id)));
                        tally.record("1-cube-morphism", &show(&at(&f.id, &id)), ev)?;
                    }
                }
            }
        }
    }
    degeneracies(cb, d, &mut tally)?;
    let mut report = tally.into_report("check-cubical-det");
    report.extend(cb.notes.iter().cloned());
    Ok(report.finish())
}

fn degeneracies(cb: &CubicalBattery, d: &DeterminantData, tally: &mut Tally) -> Result<()> {
    let n = d.arity();
    let b = d.target.b();
    let zeros: Vec<&str> = d.sources.iter().map(|s| s.zero.as_str()).collect();
    for i in 0..n {
        let Some(z) = cb.zero_tri[i].as_deref() else {
            tally.note("degeneracy", format!("slot {i}"), "source lists no triangle 0 → 0 → 0; degeneracies not checked");
            return Ok(());
        };
        let battery: BTreeSet<String> = d.battery(i).into_iter().collect();
        for ctx in d.slot_contexts(i) {
            let reference = elem(d, &Var::Tri(i, with(&ctx, i, z)));
            for t in cb.trivial[i].iter().filter(|t| battery.contains(*t)) {
                let ev = equal(d, elem(d, &Var::Tri(i, with(&ctx, i, t))), reference.clone());
                tally.record("degeneracy", &show(&with(&ctx, i, t)), ev)?;
            }
        }
    }
    if n < 2 {
        return Ok(());
    }
    // θ on tuples through a zero object, read off at slot k
    let theta = |t: &Tuple, k: usize| -> std::result::Result<Elem, String> {
        let z = cb.zero_tri[k].as_deref().expect("checked above");
        Ok(b.neg(&elem(d, &Var::Tri(k, with(t, k, z)))?))
    };
    for t in d.object_tuples() {
        let zs: Vec<usize> = (0..n).filter(|&k| t[k] == zeros[k]).collect();
        for w in zs.windows(2) {
            let ev = equal(d, theta(&t, w[0]), theta(&t, w[1]));
            tally.record("degeneracy", &format!("θ at {}", show(&t)), ev)?;
        }
    }
    for i in 0..n {
        let src = d.sources[i].clone();
        for ctx in d.slot_contexts(i) {
            let Some(k) = (0..n).find(|&k| k != i && ctx[k] == zeros[k]) else { continue };
            let at = |x: &str| with(&ctx, i, x);
            for id in d.battery(i) {
                let Some(t) = src.triangle(&id) else { continue };
                let gauge = (|| Ok(b.sub(&theta(&at(&t.y), k)?, &b.add(&theta(&at(&t.z), k)?, &theta(&at(&t.x), k)?))))();
                let ev = equal(d, elem(d, &Var::Tri(i, at(&id))), gauge);
                tally.record("degeneracy", &show(&at(&id)), ev)?;
            }
            for f in &src.isos {
                let gauge = (|| Ok(b.sub(&theta(&at(&f.target), k)?, &theta(&at(&f.source), k)?)))();
                let ev = equal(d, elem(d, &Var::Iso(i, at(&f.id))), gauge);
                tally.record("degeneracy", &show(&at(&f.id)), ev)?;
            }
        }
    }
    Ok(())
}

/// Runs both formulations. The report is valid iff their verdicts agree;
/// a split verdict names the items only one side rejects.
pub fn cross_check_definitions(d: &DeterminantData) -> Report {
    match CubicalBattery::new(&d.sources) {
        Ok(cb) => cross_check_with(&cb, d),
        Err(e) => Report::error("cross-check", e.to_string()),
    }
}

pub fn cross_check_with(cb: &CubicalBattery, d: &DeterminantData) -> Report {
    let mut report = Report::new("cross-check");
    let ax = super::validate_multideterminant(d);
    let cu = validate_cubical_with(cb, d);
    let (ax, cu) = match (ax, cu) {
        (Ok(a), Ok(c)) => (a, c),
        (Err(e), _) | (_, Err(e)) => return Report::error("cross-check", e.to_string()),
    };
    let (va, vc) = (ax.status != Status::Invalid, cu.status != Status::Invalid);
    report.push(ReportItem::note("axiomatic", d.id.as_str(), ax.status.to_string()));
    report.push(ReportItem::note("cubical", d.id.as_str(), cu.status.to_string()));
    if va == vc {
        let verdict = if va { "consistent-pass" } else { "consistent-fail" };
        report.push(ReportItem::pass("consistency", d.id.as_str(), verdict));
    } else {
        let (side, failing) = if va { ("cubical", &cu) } else { ("axiomatic", &ax) };
        let items: Vec<String> = failing.failures().take(5).map(|i| format!("{} @ {}", i.check, i.location)).collect();
        report.push(ReportItem::fail(
            "consistency",
            d.id.as_str(),
            format!("split verdict, only the {side} side fails ({}); a bug or a battery gap", items.join(", ")),
        ));
    }
    report.finish()
}
