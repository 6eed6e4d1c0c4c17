//! The axioms as linear equations in `B`.
//!
//! All transcriptions live here. Each diagram of the definition is read
//! off as "sum of the cells along one path = sum along the other", with the
//! cells of the target being `tri`/`iso` values and the symmetry `c`
//! evaluated on `obj` values. Associativity cells vanish in the skeletal
//! model, and `λ_{a,b,c,d}` reduces to `c(b, c)`.
//!
//! | check | lhs | rhs |
//! |---|---|---|
//! | naturality (`φ : Δ → Δ′`) | `iso(φ_y) + tri(Δ)` | `tri(Δ′) + iso(φ_z) + iso(φ_x)` |
//! | commutativity (`x ⊕ y`) | `tri(Δ₂)` | `tri(Δ₁) + c(x, y)` |
//! | octahedron | `tri(d2) + tri(d4)` | `tri(d1) + tri(d3)` |
//! | two-triangles | `tri(Δᵢ; zⱼ) + tri(Δᵢ; xⱼ) + tri(Δⱼ; yᵢ)` | `c(xᵢzⱼ, zᵢxⱼ) + tri(Δⱼ; zᵢ) + tri(Δⱼ; xᵢ) + tri(Δᵢ; yⱼ)` |
//! | triangle-function (`f : a → b`) | `iso(f; y) + tri(Δ; a)` | `tri(Δ; b) + iso(f; z) + iso(f; x)` |
//! | iso-identity | `iso(1)` | `0` |
//! | iso-composition (`g∘f`) | `iso(g∘f)` | `iso(g) + iso(f)` |

use std::collections::BTreeMap;

use super::{show, with, DeterminantData};
use crate::algebra::Elem;
use crate::error::{Error, Result};
use crate::report::{Report, ReportItem};
use crate::trianglecat::Tuple;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Tri(usize, Tuple),
    Iso(usize, Tuple),
}

impl Var {
    pub fn describe(&self) -> String {
        match self {
            Var::Tri(i, t) => format!("tri[{i}]({})", show(t)),
            Var::Iso(i, t) => format!("iso[{i}]({})", show(t)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Equation {
    pub check: &'static str,
    pub location: String,
    pub lhs: Vec<Var>,
    pub rhs: Vec<Var>,
    /// `c(obj u, obj v)` terms on the right-hand side.
    pub sym: Vec<(Tuple, Tuple)>,
}

/// `Σ obj(lhs) = Σ obj(rhs)` in `A`.
#[derive(Clone, Debug)]
pub struct ObjEquation {
    pub check: &'static str,
    pub location: String,
    pub lhs: Vec<Tuple>,
    pub rhs: Vec<Tuple>,
}

pub(crate) enum Eval {
    Holds,
    Fails(String),
    Missing(String),
}

pub(crate) fn var_value(d: &DeterminantData, v: &Var) -> Option<Elem> {
    match v {
        Var::Tri(i, t) => d.tri.get(&(*i, t.clone())).cloned(),
        Var::Iso(i, t) => d.iso.get(&(*i, t.clone())).cloned().or_else(|| {
            // unlisted identities are sent to the identity
            d.sources[*i].is_identity(&t[*i]).then(|| d.target.b().zero())
        }),
    }
}

impl Equation {
    /// `(lhs, rhs)` values, or the first missing datum.
    pub(crate) fn sides(&self, d: &DeterminantData) -> std::result::Result<(Elem, Elem), String> {
        let b = d.target.b();
        let sum = |vars: &[Var]| -> std::result::Result<Elem, String> {
            let mut acc = b.zero();
            for v in vars {
                let x = var_value(d, v).ok_or_else(|| v.describe())?;
                acc = b.add(&acc, &x);
            }
            Ok(acc)
        };
        let l = sum(&self.lhs)?;
        let mut r = sum(&self.rhs)?;
        for (u, v) in &self.sym {
            let ou = d.obj.get(u).ok_or_else(|| format!("obj({})", show(u)))?;
            let ov = d.obj.get(v).ok_or_else(|| format!("obj({})", show(v)))?;
            r = b.add(&r, &d.target.symmetry(ou, ov));
        }
        Ok((l, r))
    }

    pub(crate) fn evaluate(&self, d: &DeterminantData) -> Eval {
        match self.sides(d) {
            Err(m) => Eval::Missing(m),
            Ok((l, r)) if d.target.b().is_zero(&d.target.b().sub(&l, &r)) => Eval::Holds,
            Ok((l, r)) => Eval::Fails(format!("{l} ≠ {r}")),
        }
    }

    pub fn mentions(&self, v: &Var) -> bool {
        self.lhs.contains(v) || self.rhs.contains(v)
    }
}

impl ObjEquation {
    pub(crate) fn evaluate(&self, d: &DeterminantData) -> Eval {
        let a = d.target.a();
        let sum = |ts: &[Tuple]| -> std::result::Result<Elem, String> {
            let mut acc = a.zero();
            for t in ts {
                acc = a.add(&acc, d.obj.get(t).ok_or_else(|| format!("obj({})", show(t)))?);
            }
            Ok(acc)
        };
        match (sum(&self.lhs), sum(&self.rhs)) {
            (Err(m), _) | (_, Err(m)) => Eval::Missing(m),
            (Ok(l), Ok(r)) if l == r => Eval::Holds,
            (Ok(l), Ok(r)) => Eval::Fails(format!("{l} ≠ {r}")),
        }
    }
}

/// Pass counts per check plus itemized failures.
pub(crate) struct Tally {
    partial: bool,
    counts: BTreeMap<String, (usize, usize)>,
    items: Vec<ReportItem>,
}

impl Tally {
    pub(crate) fn new(partial: bool) -> Self {
        Self { partial, counts: BTreeMap::new(), items: vec![] }
    }

    pub(crate) fn pass(&mut self, check: &str) {
        self.counts.entry(check.to_string()).or_default().0 += 1;
    }

    pub(crate) fn fail(&mut self, check: &str, location: impl Into<String>, detail: impl Into<String>) {
        self.counts.entry(check.to_string()).or_default();
        self.items.push(ReportItem::fail(check, location, detail));
    }

    pub(crate) fn note(&mut self, check: &str, location: impl Into<String>, detail: impl Into<String>) {
        self.items.push(ReportItem::note(check, location, detail));
    }

    /// Untestable for partial data, `MissingDatum` otherwise.
    pub(crate) fn missing(&mut self, check: &str, location: &str, what: &str) -> Result<()> {
        if !self.partial {
            return Err(Error::MissingDatum(format!("{what} needed by {check} at {location}")));
        }
        self.counts.entry(check.to_string()).or_default().1 += 1;
        Ok(())
    }

    pub(crate) fn record(&mut self, check: &str, location: &str, e: Eval) -> Result<()> {
        match e {
            Eval::Holds => self.pass(check),
            Eval::Fails(m) => self.fail(check, location, m),
            Eval::Missing(m) => self.missing(check, location, &m)?,
        }
        Ok(())
    }

    pub(crate) fn into_report(self, command: &str) -> Report {
        let mut report = Report::new(command);
        report.extend(self.items);
        for (check, (ok, skipped)) in self.counts {
            if ok > 0 {
                report.push(ReportItem::pass(check.as_str(), "battery", format!("{ok} equations hold")));
            }
            if skipped > 0 {
                report.push(ReportItem::untestable(check.as_str(), "battery", format!("{skipped} equations leave the data")));
            }
        }
        report.finish()
    }
}

/// Object-level conditions: additivity on battery triangles and equal
/// values across listed isos.
pub fn obj_equations(d: &DeterminantData) -> Vec<ObjEquation> {
    let mut out = vec![];
    for i in 0..d.arity() {
        let src = d.sources[i].clone();
        let battery = d.battery(i);
        for ctx in d.slot_contexts(i) {
            let at = |x: &str| with(&ctx, i, x);
            for id in &battery {
                let Some(t) = src.triangle(id) else { continue };
                out.push(ObjEquation {
                    check: "additivity",
                    location: show(&at(id)),
                    lhs: vec![at(&t.y)],
                    rhs: vec![at(&t.x), at(&t.z)],
                });
            }
            for f in &src.isos {
                out.push(ObjEquation {
                    check: "iso-objects",
                    location: show(&at(&f.id)),
                    lhs: vec![at(&f.source)],
                    rhs: vec![at(&f.target)],
                });
            }
        }
    }
    out
}

/// Single-slot axioms: naturality, commutativity, octahedron and
/// functoriality on isos, in every slot and context.
pub fn slot_equations(d: &DeterminantData) -> Vec<Equation> {
    let mut out = vec![];
    for i in 0..d.arity() {
        let src = d.sources[i].clone();
        let battery: std::collections::BTreeSet<String> = d.battery(i).into_iter().collect();
        for ctx in d.slot_contexts(i) {
            let at = |x: &str| with(&ctx, i, x);
            let tri = |x: &str| Var::Tri(i, at(x));
            let iso = |x: &str| Var::Iso(i, at(x));
            for phi in &src.triangle_isos {
                if !battery.contains(&phi.source) || !battery.contains(&phi.target) {
                    continue;
                }
                out.push(Equation {
                    check: "naturality",
                    location: show(&at(&phi.id)),
                    lhs: vec![iso(&phi.iy), tri(&phi.source)],
                    rhs: vec![tri(&phi.target), iso(&phi.iz), iso(&phi.ix)],
                    sym: vec![],
                });
            }
            for s in &src.sums {
                if !battery.contains(&s.delta1) || !battery.contains(&s.delta2) {
                    continue;
                }
                out.push(Equation {
                    check: "commutativity",
                    location: show(&at(&format!("{} ⊕ {}", s.x, s.y))),
                    lhs: vec![tri(&s.delta2)],
                    rhs: vec![tri(&s.delta1)],
                    sym: vec![(at(&s.x), at(&s.y))],
                });
            }
            for o in &src.octahedra {
                if o.triangles().iter().any(|t| !battery.contains(*t)) {
                    continue;
                }
                out.push(Equation {
                    check: "octahedron",
                    location: show(&at(&o.id)),
                    lhs: vec![tri(&o.d2), tri(&o.d4)],
                    rhs: vec![tri(&o.d1), tri(&o.d3)],
                    sym: vec![],
                });
            }
            for id in src.identities.values() {
                out.push(Equation {
                    check: "iso-identity",
                    location: show(&at(id)),
                    lhs: vec![iso(id)],
                    rhs: vec![],
                    sym: vec![],
                });
            }
            for c in &src.compositions {
                out.push(Equation {
                    check: "iso-composition",
                    location: show(&at(&format!("{}∘{}", c.second, c.first))),
                    lhs: vec![iso(&c.result)],
                    rhs: vec![iso(&c.second), iso(&c.first)],
                    sym: vec![],
                });
            }
        }
    }
    out
}

/// Cross-slot axioms: two-triangles on the pair battery and
/// triangle-function for every non-identity iso against every battery
/// triangle of another slot.
pub fn cross_equations(d: &DeterminantData) -> Vec<Equation> {
    let mut out = vec![];
    for p in d.pairs() {
        let (i, j) = (p.i, p.j);
        let (Some(ti), Some(tj)) = (d.sources[i].triangle(&p.tuple[i]), d.sources[j].triangle(&p.tuple[j])) else {
            continue;
        };
        let at = |a: &str, b: &str| with(&with(&p.tuple, i, a), j, b);
        let (di, dj) = (ti.id.as_str(), tj.id.as_str());
        out.push(Equation {
            check: "two-triangles",
            location: show(&p.tuple),
            lhs: vec![Var::Tri(i, at(di, &tj.z)), Var::Tri(i, at(di, &tj.x)), Var::Tri(j, at(&ti.y, dj))],
            rhs: vec![Var::Tri(j, at(&ti.z, dj)), Var::Tri(j, at(&ti.x, dj)), Var::Tri(i, at(di, &tj.y))],
            sym: vec![(at(&ti.x, &tj.z), at(&ti.z, &tj.x))],
        });
    }
    let n = d.arity();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let (si, sj) = (d.sources[i].clone(), d.sources[j].clone());
            let battery = d.battery(j);
            for ctx in crate::trianglecat::object_tuples_except(&d.sources, &[i, j]) {
                for f in si.isos.iter().filter(|f| !si.is_identity(&f.id)) {
                    for id in &battery {
                        let Some(t) = sj.triangle(id) else { continue };
                        let at = |a: &str, b: &str| with(&with(&ctx, i, a), j, b);
                        out.push(Equation {
                            check: "triangle-function",
                            location: show(&at(&f.id, id)),
                            lhs: vec![Var::Iso(i, at(&f.id, &t.y)), Var::Tri(j, at(&f.source, id))],
                            rhs: vec![Var::Tri(j, at(&f.target, id)), Var::Iso(i, at(&f.id, &t.z)), Var::Iso(i, at(&f.id, &t.x))],
                            sym: vec![],
                        });
                    }
                }
            }
        }
    }
    out
}

/// Every `B`-equation of the axiomatic definition.
pub fn axiom_equations(d: &DeterminantData) -> Vec<Equation> {
    let mut eqs = slot_equations(d);
    eqs.extend(cross_equations(d));
    eqs
}

fn battery_coverage(d: &DeterminantData, tally: &mut Tally) -> Result<()> {
    for i in 0..d.arity() {
        for id in d.battery(i) {
            if d.sources[i].triangle(&id).is_none() {
                return Err(Error::UnresolvedReference(format!("battery triangle {id} in slot {i}")));
            }
            for ctx in d.slot_contexts(i) {
                let key = with(&ctx, i, &id);
                if !d.tri.contains_key(&(i, key.clone())) {
                    tally.missing("tri-entry", &show(&key), &format!("tri[{i}]({})", show(&key)))?;
                }
            }
        }
    }
    Ok(())
}

fn run(d: &DeterminantData, command: &str, eqs: &[Equation]) -> Result<Report> {
    let mut tally = Tally::new(d.partial);
    battery_coverage(d, &mut tally)?;
    for e in obj_equations(d) {
        let ev = e.evaluate(d);
        tally.record(e.check, &e.location, ev)?;
    }
    for e in eqs {
        let ev = e.evaluate(d);
        tally.record(e.check, &e.location, ev)?;
    }
    let mut report = tally.into_report(command);
    report.push(ReportItem::note("scope", d.id.as_str(), "verified over the listed battery only"));
    Ok(report.finish())
}

/// Single-variable axioms: naturality, commutativity, octahedron.
pub fn validate_determinant(d: &DeterminantData) -> Result<Report> {
    if d.arity() != 1 {
        return Err(Error::MismatchedSignature(format!("{} has {} variables, expected 1", d.id, d.arity())));
    }
    run(d, "check-det", &slot_equations(d))
}

/// The single-variable axioms in each slot plus two-triangles and
/// triangle-function.
pub fn validate_multideterminant(d: &DeterminantData) -> Result<Report> {
    run(d, "check-multidet", &axiom_equations(d))
}
