//! Verdier structures on nine-diagrams.
//!
//! For a diagram with rows `x′→y′→z′`, `x→y→z`, `x″→y″→z″` a certificate
//! supplies an object `A` and octahedra
//!
//! ```text
//! v1 = (x′→x→x″,  x′→y→A,  x→y→z,      x″→A→z)
//! v2 = (x′→y′→z′, x′→y→A,  y′→y→y″,    z′→A→y″)
//! v3 = (x″→A→z,   x″→y″→z″, A→y″→Σz′,  z→z″→Σz′)
//! ```
//!
//! where the last triangle of `v3` is the rotated third column.

use crate::error::{Error, Result};
use crate::report::{Report, ReportItem};

use super::presentation::{octahedron_incidences, rotate, NineDiagram, Octahedron, Triangle, TriangPresentation, VerdierCertificate};

struct Matcher<'r> {
    report: &'r mut Report,
    loc: String,
    label_gaps: usize,
    labels_checked: usize,
}

impl Matcher<'_> {
    fn fail(&mut self, what: &str, detail: String) {
        self.report.push(ReportItem::fail("verdier", format!("{} {what}", self.loc), detail));
    }

    fn objects(&mut self, what: &str, t: &Triangle, want: [&str; 3]) {
        if t.objects() != want {
            self.fail(
                what,
                format!("{} is {} → {} → {}, expected {} → {} → {}", t.id, t.x, t.y, t.z, want[0], want[1], want[2]),
            );
        }
    }

    fn label(&mut self, what: &str, a: Option<&str>, b: Option<&str>) {
        match (a, b) {
            (Some(a), Some(b)) => {
                self.labels_checked += 1;
                if a != b {
                    self.fail(what, format!("label {a} vs {b}"));
                }
            }
            _ => self.label_gaps += 1,
        }
    }

    /// `t` must be the triangle `want` (same id, or same objects and
    /// labels).
    fn same(&mut self, what: &str, t: &Triangle, want: &Triangle) {
        if t.id == want.id {
            return;
        }
        self.objects(what, t, want.objects());
        self.label(what, t.f.as_deref(), want.f.as_deref());
        self.label(what, t.g.as_deref(), want.g.as_deref());
        self.label(what, t.h.as_deref(), want.h.as_deref());
    }
}

fn resolve<'t>(t: &'t TriangPresentation, id: &str) -> Result<&'t Triangle> {
    t.triangle(id).ok_or_else(|| Error::UnresolvedReference(format!("triangle {id}")))
}

fn octahedron_triangles<'t>(t: &'t TriangPresentation, o: &Octahedron) -> Result<[&'t Triangle; 4]> {
    Ok([resolve(t, &o.d1)?, resolve(t, &o.d2)?, resolve(t, &o.d3)?, resolve(t, &o.d4)?])
}

/// Checks the certificate attached to a nine-diagram: existence of the three
/// octahedra, the shared object `A`, and every edge identification, on
/// labels where both sides carry one and on objects otherwise.
pub fn check_verdier(t: &TriangPresentation, diagram: &str) -> Result<Report> {
    let d = t
        .nine_diagram(diagram)
        .ok_or_else(|| Error::UnresolvedReference(format!("nine-diagram {diagram}")))?;
    let cert = t
        .certificate(diagram)
        .ok_or_else(|| Error::MissingCertificate(format!("no Verdier certificate for {diagram}")))?;
    let mut report = Report::new("check-verdier");
    check_certificate(t, d, cert, &mut report)?;
    Ok(report.finish())
}

fn check_certificate(t: &TriangPresentation, d: &NineDiagram, cert: &VerdierCertificate, report: &mut Report) -> Result<()> {
    let rows = [resolve(t, &d.rows[0])?, resolve(t, &d.rows[1])?, resolve(t, &d.rows[2])?];
    let cols = [resolve(t, &d.cols[0])?, resolve(t, &d.cols[1])?, resolve(t, &d.cols[2])?];
    let g = |r: usize, c: usize| rows[r].objects()[c];
    for r in 0..3 {
        for c in 0..3 {
            if g(r, c) != cols[c].objects()[r] {
                report.push(ReportItem::fail(
                    "verdier",
                    format!("{} grid", d.id),
                    format!("cell ({r},{c}): row gives {}, column gives {}", g(r, c), cols[c].objects()[r]),
                ));
            }
        }
    }
    let a = cert.a.as_str();
    if !t.has_object(a) {
        report.push(ReportItem::fail("verdier", format!("{} A", d.id), format!("unknown object {a}")));
    }
    let mut octs = Vec::new();
    for (name, id) in [("v1", &cert.v1), ("v2", &cert.v2), ("v3", &cert.v3)] {
        match t.octahedron(id) {
            Some(o) => octs.push(octahedron_triangles(t, o)?),
            None => report.push(ReportItem::fail("verdier", format!("{} {name}", d.id), format!("octahedron {id} is not listed"))),
        }
    }
    if octs.len() < 3 {
        return Ok(());
    }
    for (k, o) in octs.iter().enumerate() {
        for (what, l, r) in octahedron_incidences(*o) {
            if l != r {
                report.push(ReportItem::fail("verdier", format!("{} v{}", d.id, k + 1), format!("{what} fails: {l} vs {r}")));
            }
        }
    }
    let [v1, v2, v3] = [octs[0], octs[1], octs[2]];
    let mut m = Matcher { report, loc: d.id.clone(), label_gaps: 0, labels_checked: 0 };

    m.same("v1.d1 = column 1", v1[0], cols[0]);
    m.objects("v1.d2", v1[1], [g(0, 0), g(1, 1), a]);
    m.same("v1.d3 = row 2", v1[2], rows[1]);
    m.objects("v1.d4", v1[3], [g(2, 0), a, g(1, 2)]);

    m.same("v2.d1 = row 1", v2[0], rows[0]);
    m.objects("v2.d2", v2[1], [g(0, 0), g(1, 1), a]);
    m.same("v2.d3 = column 2", v2[2], cols[1]);
    m.objects("v2.d4", v2[3], [g(0, 2), a, g(2, 1)]);

    m.same("v3.d1 = v1.d4", v3[0], v1[3]);
    m.same("v3.d2 = row 3", v3[1], rows[2]);
    match t.shift_of(g(0, 2)) {
        Some(s) => m.objects("v3.d3", v3[2], [a, g(2, 1), s]),
        None => m.fail("v3.d3", format!("Σ{} undefined", g(0, 2))),
    }
    match rotate(t, cols[2]) {
        Some(rc) => {
            m.objects("v3.d4 = rotated column 3", v3[3], rc.objects());
            m.label("v3.d4 = rotated column 3", v3[3].f.as_deref(), rc.f.as_deref());
            m.label("v3.d4 = rotated column 3", v3[3].g.as_deref(), rc.g.as_deref());
        }
        None => m.fail("v3.d4", format!("Σ{} undefined", cols[2].x)),
    }

    m.label("alpha shared by v1.d2 and v2.d2", v1[1].g.as_deref(), v2[1].g.as_deref());
    m.label("gamma shared by v2.d4 and v3.d3", v2[3].g.as_deref(), v3[2].f.as_deref());
    m.label("delta shared by v2.d4 and v3.d3", v2[3].h.as_deref(), v3[2].g.as_deref());

    let (gaps, checked) = (m.label_gaps, m.labels_checked);
    if gaps > 0 {
        report.push(ReportItem::note(
            "verdier-labels",
            d.id.as_str(),
            format!("{gaps} identifications checked on objects only (unlabelled morphisms)"),
        ));
    }
    report.push(ReportItem::pass("verdier", d.id.as_str(), format!("A = {a}, {checked} labels compared")));
    Ok(())
}

/// Finds a listed triangle with these objects whose labels agree where both
/// are given, or adds one.
pub(crate) fn ensure_triangle(t: &mut TriangPresentation, want: Triangle) -> String {
    let compatible = |a: &Option<String>, b: &Option<String>| match (a, b) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };
    if let Some(found) = t.triangles.iter().find(|x| {
        x.objects() == want.objects() && compatible(&x.f, &want.f) && compatible(&x.g, &want.g) && compatible(&x.h, &want.h)
    }) {
        return found.id.clone();
    }
    let id = fresh_id(want.id.clone(), |c| t.triangle(c).is_some());
    t.triangles.push(Triangle { id: id.clone(), ..want });
    id
}

pub(crate) fn ensure_octahedron(t: &mut TriangPresentation, id: String, tris: [&str; 4]) -> String {
    if let Some(o) = t.octahedra.iter().find(|o| o.triangles() == tris) {
        return o.id.clone();
    }
    let id = fresh_id(id, |c| t.octahedron(c).is_some());
    let [d1, d2, d3, d4] = tris.map(str::to_string);
    t.octahedra.push(Octahedron { id: id.clone(), d1, d2, d3, d4 });
    id
}

fn fresh_id(base: String, taken: impl Fn(&str) -> bool) -> String {
    if !taken(&base) {
        return base;
    }
    (2..).map(|k| format!("{base}#{k}")).find(|c| !taken(c)).expect("unbounded")
}

fn identity_label(t: &TriangPresentation, x: &str) -> String {
    if x == t.zero {
        return "0".into();
    }
    t.identities.get(x).cloned().unwrap_or_else(|| format!("1_{x}"))
}

/// `x = x → 0`.
pub(crate) fn trivial_right(t: &TriangPresentation, x: &str) -> Triangle {
    let z = t.zero.clone();
    Triangle {
        id: format!("triv1({x})"),
        x: x.into(),
        y: x.into(),
        z,
        f: Some(identity_label(t, x)),
        g: Some("0".into()),
        h: Some("0".into()),
    }
}

/// `0 → x = x`.
pub(crate) fn trivial_left(t: &TriangPresentation, x: &str) -> Triangle {
    let z = t.zero.clone();
    Triangle {
        id: format!("triv0({x})"),
        x: z,
        y: x.into(),
        z: x.into(),
        f: Some("0".into()),
        g: Some(identity_label(t, x)),
        h: Some("0".into()),
    }
}

/// Writes an octahedron as a 2-cube: the grid
///
/// ```text
/// x → y  → z′
/// x → z  → y′
/// 0 → x′ → x′
/// ```
///
/// with columns `x=x→0`, `d3`, `d4` and `A = y′`, certified by the
/// octahedron itself and two degenerate ones. Registers everything in `t`
/// and returns the diagram id.
pub fn octahedron_to_2cube(t: &mut TriangPresentation, octahedron: &str) -> Result<String> {
    let o = t
        .octahedron(octahedron)
        .cloned()
        .ok_or_else(|| Error::UnresolvedReference(format!("octahedron {octahedron}")))?;
    let [d1, d2, d3, d4] = octahedron_triangles(t, &o)?.map(Clone::clone);
    let diagram = format!("{}/2cube", o.id);
    if t.nine_diagram(&diagram).is_some() && t.certificate(&diagram).is_some() {
        return Ok(diagram);
    }
    let (x, xp, yp) = (d1.x.clone(), d3.z.clone(), d2.z.clone());
    let c1 = ensure_triangle(t, trivial_right(t, &x));
    let r3 = ensure_triangle(t, trivial_left(t, &xp));
    let p = ensure_triangle(t, trivial_left(t, &yp));
    let rot4 = rotate(t, &d4).ok_or_else(|| Error::Invalid(format!("Σ{} undefined", d4.x)))?;
    let rot4 = ensure_triangle(t, rot4);
    let v1 = ensure_octahedron(t, format!("{}/v1", o.id), [&c1, &d2.id, &d2.id, &p]);
    let v3 = ensure_octahedron(t, format!("{}/v3", o.id), [&p, &r3, &rot4, &rot4]);
    t.nine_diagrams.retain(|d| d.id != diagram);
    t.certificates.retain(|c| c.diagram != diagram);
    t.nine_diagrams.push(NineDiagram {
        id: diagram.clone(),
        rows: [d1.id.clone(), d2.id.clone(), r3],
        cols: [c1, d3.id.clone(), d4.id.clone()],
        anticommutative_corner: true,
    });
    t.certificates.push(VerdierCertificate { diagram: diagram.clone(), a: yp, v1, v2: o.id.clone(), v3 });
    Ok(diagram)
}

/// The 2-cube expressing the commutativity of a sum `x ⊕ y`:
///
/// ```text
/// 0 → x   → x
/// y → x⊕y → x      (delta2)
/// y → y   → 0
/// ```
///
/// with middle column `delta1`, `A = x⊕y`, and the three octahedra of the
/// standard Verdier structure. Registers everything and returns the
/// diagram id.
pub fn commutativity_2cube(t: &mut TriangPresentation, sum: usize) -> Result<String> {
    let s = t.sums.get(sum).cloned().ok_or_else(|| Error::UnresolvedReference(format!("sum entry {sum}")))?;
    let delta1 = resolve(t, &s.delta1)?.clone();
    let delta2 = resolve(t, &s.delta2)?.clone();
    let diagram = format!("comm({},{})", s.x, s.y);
    if t.nine_diagram(&diagram).is_some() && t.certificate(&diagram).is_some() {
        return Ok(diagram);
    }
    let r1 = ensure_triangle(t, trivial_left(t, &s.x));
    let r3 = ensure_triangle(t, trivial_right(t, &s.y));
    let c1 = ensure_triangle(t, trivial_left(t, &s.y));
    let c3t = trivial_right(t, &s.x);
    let c3 = ensure_triangle(t, c3t.clone());
    let p = ensure_triangle(t, trivial_left(t, &s.sum));
    let u = rotate(t, &delta1).ok_or_else(|| Error::Invalid(format!("Σ{} undefined", s.x)))?;
    let u = ensure_triangle(t, u);
    let c3t = t.triangle(&c3).cloned().unwrap_or(c3t);
    let cone = rotate(t, &c3t).ok_or_else(|| Error::Invalid(format!("Σ{} undefined", s.x)))?;
    let cone = ensure_triangle(t, cone);
    let v1 = ensure_octahedron(t, format!("{diagram}/v1"), [&c1, &p, &delta2.id, &delta2.id]);
    let v2 = ensure_octahedron(t, format!("{diagram}/v2"), [&r1, &p, &delta1.id, &delta1.id]);
    let v3 = ensure_octahedron(t, format!("{diagram}/v3"), [&delta2.id, &r3, &u, &cone]);
    t.nine_diagrams.retain(|d| d.id != diagram);
    t.certificates.retain(|c| c.diagram != diagram);
    t.nine_diagrams.push(NineDiagram {
        id: diagram.clone(),
        rows: [r1, delta2.id.clone(), r3],
        cols: [c1, delta1.id.clone(), c3],
        anticommutative_corner: true,
    });
    t.certificates.push(VerdierCertificate { diagram: diagram.clone(), a: s.sum.clone(), v1, v2, v3 });
    Ok(diagram)
}

/// Registers the degenerate 2-cube obtained from `tri` by inserting a
/// trivial direction, with its Verdier structure. `direction` 1 puts the
/// copies of `tri` in columns, 2 in rows; `beta = -1` places the zero line
/// first and `beta = 1` last.
pub fn degenerate_2cube(t: &mut TriangPresentation, tri: &str, direction: u8, beta: i8) -> Result<String> {
    let d = resolve(t, tri)?.clone();
    let diagram = format!("s{direction}{}({})", if beta < 0 { "-" } else { "+" }, d.id);
    if t.nine_diagram(&diagram).is_some() && t.certificate(&diagram).is_some() {
        return Ok(diagram);
    }
    let (x, y, z) = (d.x.clone(), d.y.clone(), d.z.clone());
    let zero = t.zero.clone();
    let t0 = |t: &mut TriangPresentation, o: &str| ensure_triangle(t, trivial_left(t, o));
    let t1 = |t: &mut TriangPresentation, o: &str| ensure_triangle(t, trivial_right(t, o));
    let d0 = t0(t, &zero);
    let (rows, cols, a, octs) = match (direction, beta) {
        (2, -1) => {
            let (tx, ty, tz) = (t0(t, &x), t0(t, &y), t0(t, &z));
            let ry = t1(t, &y);
            let rz = t1(t, &z);
            ([d0.clone(), d.id.clone(), d.id.clone()], [tx.clone(), ty.clone(), tz], y.clone(), [
                [tx, ty.clone(), d.id.clone(), d.id.clone()],
                [d0, ty.clone(), ty.clone(), ty],
                [d.id.clone(), d.id.clone(), ry, rz],
            ])
        }
        (2, 1) => {
            let (sx, sy, sz) = (t1(t, &x), t1(t, &y), t1(t, &z));
            let tz = t0(t, &z);
            let sz_t = t.triangle(&sz).cloned().expect("just ensured");
            let cone = rotate(t, &sz_t).ok_or_else(|| Error::Invalid(format!("Σ{z} undefined")))?;
            let cone = ensure_triangle(t, cone);
            ([d.id.clone(), d.id.clone(), d0.clone()], [sx.clone(), sy.clone(), sz.clone()], z.clone(), [
                [sx, d.id.clone(), d.id.clone(), tz.clone()],
                [d.id.clone(), d.id.clone(), sy, sz],
                [tz, d0, cone.clone(), cone],
            ])
        }
        (1, -1) => {
            let (tx, ty, tz) = (t0(t, &x), t0(t, &y), t0(t, &z));
            let rot = rotate(t, &d).ok_or_else(|| Error::Invalid(format!("Σ{x} undefined")))?;
            let rot = ensure_triangle(t, rot);
            ([tx.clone(), ty.clone(), tz.clone()], [d0.clone(), d.id.clone(), d.id.clone()], y.clone(), [
                [d0, ty.clone(), ty.clone(), ty.clone()],
                [tx, ty.clone(), d.id.clone(), d.id.clone()],
                [ty, tz, rot.clone(), rot],
            ])
        }
        (1, 1) => {
            let (sx, sy, sz) = (t1(t, &x), t1(t, &y), t1(t, &z));
            let tz = t0(t, &z);
            ([sx.clone(), sy.clone(), sz.clone()], [d.id.clone(), d.id.clone(), d0.clone()], z.clone(), [
                [d.id.clone(), d.id.clone(), sy, sz.clone()],
                [sx, d.id.clone(), d.id.clone(), tz],
                [sz.clone(), sz.clone(), sz, d0],
            ])
        }
        _ => return Err(Error::DimensionOutOfRange(format!("degeneracy ({direction}, {beta})"))),
    };
    let [v1, v2, v3] = [0, 1, 2].map(|k| {
        let o = &octs[k];
        ensure_octahedron(t, format!("{diagram}/v{}", k + 1), [&o[0], &o[1], &o[2], &o[3]])
    });
    t.nine_diagrams.retain(|x| x.id != diagram);
    t.certificates.retain(|c| c.diagram != diagram);
    t.nine_diagrams.push(NineDiagram { id: diagram.clone(), rows, cols, anticommutative_corner: true });
    t.certificates.push(VerdierCertificate { diagram: diagram.clone(), a, v1, v2, v3 });
    Ok(diagram)
}
