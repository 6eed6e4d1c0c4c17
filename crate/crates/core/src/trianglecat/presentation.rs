use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::report::{Report, ReportItem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoMorphism {
    pub id: String,
    pub source: String,
    pub target: String,
}

/// `result = second ∘ first`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composition {
    pub first: String,
    pub second: String,
    pub result: String,
}

/// A sum entry `x ⊕ y` with its two canonical triangles
/// `delta1 : x → x⊕y → y` and `delta2 : y → x⊕y → x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumEntry {
    pub x: String,
    pub y: String,
    pub sum: String,
    pub delta1: String,
    pub delta2: String,
}

/// A distinguished triangle `x →f y →g z →h Σx`. Morphism labels are
/// optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    pub id: String,
    pub x: String,
    pub y: String,
    pub z: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
}

impl Triangle {
    pub fn objects(&self) -> [&str; 3] {
        [&self.x, &self.y, &self.z]
    }
}

/// An isomorphism of triangles `source → target` with components on
/// `x`, `y`, `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleIso {
    pub id: String,
    pub source: String,
    pub target: String,
    pub ix: String,
    pub iy: String,
    pub iz: String,
}

/// Four triangles in the layout
///
/// ```text
/// d1: x → y → z′     d2: x → z → y′
/// d3: y → z → x′     d4: z′ → y′ → x′
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Octahedron {
    pub id: String,
    pub d1: String,
    pub d2: String,
    pub d3: String,
    pub d4: String,
}

impl Octahedron {
    pub fn triangles(&self) -> [&str; 4] {
        [&self.d1, &self.d2, &self.d3, &self.d4]
    }
}

/// A 3×3 diagram given by its three row triangles (top to bottom) and
/// three column triangles (left to right).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NineDiagram {
    pub id: String,
    pub rows: [String; 3],
    pub cols: [String; 3],
    /// The corner square `z″ → Σx″ → Σx′` vs `z″ → Σz′ → Σx′` is marked
    /// anticommutative.
    #[serde(default = "yes")]
    pub anticommutative_corner: bool,
}

fn yes() -> bool {
    true
}

/// Mediating object `a` and three octahedra for a nine-diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdierCertificate {
    pub diagram: String,
    pub a: String,
    pub v1: String,
    pub v2: String,
    pub v3: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangPresentation {
    pub id: String,
    pub objects: Vec<String>,
    pub zero: String,
    pub shift: BTreeMap<String, String>,
    #[serde(default)]
    pub isos: Vec<IsoMorphism>,
    #[serde(default)]
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub inverses: BTreeMap<String, String>,
    #[serde(default)]
    pub compositions: Vec<Composition>,
    #[serde(default)]
    pub sums: Vec<SumEntry>,
    #[serde(default)]
    pub triangles: Vec<Triangle>,
    #[serde(default)]
    pub triangle_isos: Vec<TriangleIso>,
    #[serde(default)]
    pub octahedra: Vec<Octahedron>,
    #[serde(default)]
    pub nine_diagrams: Vec<NineDiagram>,
    #[serde(default)]
    pub certificates: Vec<VerdierCertificate>,
}

impl TriangPresentation {
    pub fn has_object(&self, x: &str) -> bool {
        self.objects.iter().any(|o| o == x)
    }

    pub fn shift_of(&self, x: &str) -> Option<&str> {
        self.shift.get(x).map(String::as_str)
    }

    pub fn triangle(&self, id: &str) -> Option<&Triangle> {
        self.triangles.iter().find(|t| t.id == id)
    }

    pub fn iso(&self, id: &str) -> Option<&IsoMorphism> {
        self.isos.iter().find(|f| f.id == id)
    }

    pub fn octahedron(&self, id: &str) -> Option<&Octahedron> {
        self.octahedra.iter().find(|o| o.id == id)
    }

    pub fn nine_diagram(&self, id: &str) -> Option<&NineDiagram> {
        self.nine_diagrams.iter().find(|d| d.id == id)
    }

    pub fn certificate(&self, diagram: &str) -> Option<&VerdierCertificate> {
        self.certificates.iter().find(|c| c.diagram == diagram)
    }

    /// First listed triangle with the given objects.
    pub fn find_triangle(&self, x: &str, y: &str, z: &str) -> Option<&Triangle> {
        self.triangles.iter().find(|t| t.x == x && t.y == y && t.z == z)
    }

    pub fn is_identity(&self, iso: &str) -> bool {
        self.identities.values().any(|i| i == iso)
    }

    /// Object grid `g[r][c]` of a nine-diagram, read off its rows.
    pub fn grid(&self, d: &NineDiagram) -> Option<[[String; 3]; 3]> {
        let mut g: [[String; 3]; 3] = Default::default();
        for (r, id) in d.rows.iter().enumerate() {
            let t = self.triangle(id)?;
            g[r] = [t.x.clone(), t.y.clone(), t.z.clone()];
        }
        Some(g)
    }

    /// Lookup tables for the many id-based checks.
    pub fn index(&self) -> PresentationIndex<'_> {
        PresentationIndex::new(self)
    }
}

pub struct PresentationIndex<'a> {
    pub objects: BTreeSet<&'a str>,
    pub isos: BTreeMap<&'a str, &'a IsoMorphism>,
    pub triangles: BTreeMap<&'a str, &'a Triangle>,
    pub octahedra: BTreeMap<&'a str, &'a Octahedron>,
    pub compositions: BTreeMap<(&'a str, &'a str), &'a str>,
    pub by_objects: BTreeMap<(&'a str, &'a str, &'a str), Vec<&'a Triangle>>,
}

impl<'a> PresentationIndex<'a> {
    fn new(t: &'a TriangPresentation) -> Self {
        let mut by_objects: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for tri in &t.triangles {
            by_objects.entry((tri.x.as_str(), tri.y.as_str(), tri.z.as_str())).or_default().push(tri);
        }
        Self {
            objects: t.objects.iter().map(String::as_str).collect(),
            isos: t.isos.iter().map(|f| (f.id.as_str(), f)).collect(),
            triangles: t.triangles.iter().map(|x| (x.id.as_str(), x)).collect(),
            octahedra: t.octahedra.iter().map(|o| (o.id.as_str(), o)).collect(),
            compositions: t
                .compositions
                .iter()
                .map(|c| ((c.first.as_str(), c.second.as_str()), c.result.as_str()))
                .collect(),
            by_objects,
        }
    }

    pub fn find(&self, x: &str, y: &str, z: &str) -> Option<&'a Triangle> {
        self.by_objects.get(&(x, y, z)).and_then(|v| v.first().copied())
    }
}

/// Label of `-Σf` in a rotated triangle.
pub fn shifted_label(f: &str) -> String {
    if f == "0" {
        return f.into();
    }
    format!("-S({f})")
}

/// `x →f y →g z →h Σx` rotates to `y →g z →h Σx →(-Σf) Σy`; `None` when
/// `Σx` is not defined.
pub fn rotate(t: &TriangPresentation, tri: &Triangle) -> Option<Triangle> {
    let sx = t.shift_of(&tri.x)?;
    Some(Triangle {
        id: format!("rot({})", tri.id),
        x: tri.y.clone(),
        y: tri.z.clone(),
        z: sx.to_string(),
        f: tri.g.clone(),
        g: tri.h.clone(),
        h: tri.f.as_deref().map(shifted_label),
    })
}

/// The object sharing the octahedron layout requires, as
/// `(description, left, right)` triples.
pub fn octahedron_incidences(d: [&Triangle; 4]) -> [(&'static str, &str, &str); 6] {
    let [d1, d2, d3, d4] = d;
    [
        ("d1.x = d2.x", &d1.x, &d2.x),
        ("d1.y = d3.x", &d1.y, &d3.x),
        ("d2.y = d3.y", &d2.y, &d3.y),
        ("d1.z = d4.x", &d1.z, &d4.x),
        ("d2.z = d4.y", &d2.z, &d4.y),
        ("d3.z = d4.z", &d3.z, &d4.z),
    ]
}

fn check_unique<'a>(report: &mut Report, kind: &str, ids: impl Iterator<Item = &'a str>) {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            report.push(ReportItem::fail("unique-ids", format!("{kind} {id}"), "duplicate id"));
        }
    }
}

/// Checks the supplied data for internal consistency. Verdier certificates
/// are checked with [`super::check_verdier`].
pub fn validate_presentation(t: &TriangPresentation) -> Report {
    let mut report = Report::new("validate-presentation");
    let ix = t.index();
    let obj = |report: &mut Report, check: &str, loc: &str, x: &str| -> bool {
        if ix.objects.contains(x) {
            true
        } else {
            report.push(ReportItem::fail(check, loc, format!("unknown object {x}")));
            false
        }
    };

    check_unique(&mut report, "object", t.objects.iter().map(String::as_str));
    check_unique(&mut report, "iso", t.isos.iter().map(|f| f.id.as_str()));
    check_unique(&mut report, "triangle", t.triangles.iter().map(|x| x.id.as_str()));
    check_unique(&mut report, "triangle-iso", t.triangle_isos.iter().map(|x| x.id.as_str()));
    check_unique(&mut report, "octahedron", t.octahedra.iter().map(|x| x.id.as_str()));
    check_unique(&mut report, "nine-diagram", t.nine_diagrams.iter().map(|x| x.id.as_str()));

    // zero and shift
    obj(&mut report, "zero", "zero", &t.zero);
    let mut images = BTreeSet::new();
    for x in &t.objects {
        match t.shift.get(x) {
            None => report.push(ReportItem::fail("shift", x.as_str(), "Σ undefined")),
            Some(sx) => {
                obj(&mut report, "shift", x, sx);
                if !images.insert(sx.as_str()) {
                    report.push(ReportItem::fail("shift", x.as_str(), format!("Σ not injective at {sx}")));
                }
            }
        }
    }
    for k in t.shift.keys() {
        if !ix.objects.contains(k.as_str()) {
            report.push(ReportItem::fail("shift", k.as_str(), "Σ defined on unknown object"));
        }
    }
    if t.shift.get(&t.zero).is_some_and(|s| *s != t.zero) {
        report.push(ReportItem::fail("shift", t.zero.as_str(), "Σ0 ≠ 0"));
    }
    report.push(ReportItem::pass("shift", "objects", format!("{} objects", t.objects.len())));

    // isomorphism groupoid
    for f in &t.isos {
        obj(&mut report, "iso-endpoints", &f.id, &f.source);
        obj(&mut report, "iso-endpoints", &f.id, &f.target);
    }
    for (x, id) in &t.identities {
        match ix.isos.get(id.as_str()) {
            None => report.push(ReportItem::fail("identities", x.as_str(), format!("unknown iso {id}"))),
            Some(f) if f.source != *x || f.target != *x => {
                report.push(ReportItem::fail("identities", x.as_str(), format!("{id} is not an endomorphism of {x}")))
            }
            _ => {}
        }
    }
    for c in &t.compositions {
        let loc = format!("{}∘{}", c.second, c.first);
        let (Some(f), Some(g), Some(h)) =
            (ix.isos.get(c.first.as_str()), ix.isos.get(c.second.as_str()), ix.isos.get(c.result.as_str()))
        else {
            report.push(ReportItem::fail("composition", loc, "dangling iso reference"));
            continue;
        };
        if f.target != g.source {
            report.push(ReportItem::fail("composition", loc, format!("{} ends at {} but {} starts at {}", f.id, f.target, g.id, g.source)));
        } else if h.source != f.source || h.target != g.target {
            report.push(ReportItem::fail(
                "composition",
                loc,
                format!("result {} : {} → {} should be {} → {}", h.id, h.source, h.target, f.source, g.target),
            ));
        }
        // identity laws on listed composites
        for (id_side, other) in [(&c.first, &c.second), (&c.second, &c.first)] {
            if t.is_identity(id_side) && c.result != *other {
                report.push(ReportItem::fail("identity-law", format!("{}∘{}", c.second, c.first), format!("composite with an identity is {} not {other}", c.result)));
            }
        }
    }
    for (f, g) in &t.compositions.iter().map(|c| (&c.first, &c.second)).collect::<Vec<_>>() {
        // associativity: (h∘g)∘f = h∘(g∘f) whenever both sides are listed
        let Some(gf) = ix.compositions.get(&(f.as_str(), g.as_str())) else { continue };
        for ((g2, h), hg) in &ix.compositions {
            if *g2 != g.as_str() {
                continue;
            }
            let (Some(l), Some(r)) = (ix.compositions.get(&(f.as_str(), *hg)), ix.compositions.get(&(*gf, *h))) else {
                continue;
            };
            if l != r {
                report.push(ReportItem::fail(
                    "associativity",
                    format!("{h}∘{g}∘{f}"),
                    format!("({h}∘{g})∘{f} = {l} but {h}∘({g}∘{f}) = {r}"),
                ));
            }
        }
    }
    for (f, g) in &t.inverses {
        let (Some(fi), Some(gi)) = (ix.isos.get(f.as_str()), ix.isos.get(g.as_str())) else {
            report.push(ReportItem::fail("inverses", f.as_str(), "dangling iso reference"));
            continue;
        };
        if fi.source != gi.target || fi.target != gi.source {
            report.push(ReportItem::fail("inverses", f.as_str(), format!("{g} does not reverse {f}")));
            continue;
        }
        for (a, b, at) in [(f, g, &fi.source), (g, f, &fi.target)] {
            if let Some(r) = ix.compositions.get(&(a.as_str(), b.as_str())) {
                if t.identities.get(at).map(String::as_str) != Some(*r) {
                    report.push(ReportItem::fail("inverses", f.as_str(), format!("{b}∘{a} = {r} is not the identity of {at}")));
                }
            }
        }
    }
    report.push(ReportItem::pass("iso-groupoid", "isos", format!("{} isos, {} composites", t.isos.len(), t.compositions.len())));

    // triangles
    for tri in &t.triangles {
        for x in tri.objects() {
            obj(&mut report, "triangle-objects", &tri.id, x);
        }
    }
    report.push(ReportItem::pass("triangle-objects", "triangles", format!("{} triangles", t.triangles.len())));

    // sums
    for s in &t.sums {
        let loc = format!("{} ⊕ {}", s.x, s.y);
        for x in [&s.x, &s.y, &s.sum] {
            obj(&mut report, "sums", &loc, x);
        }
        for (id, want) in [(&s.delta1, [&s.x, &s.sum, &s.y]), (&s.delta2, [&s.y, &s.sum, &s.x])] {
            match ix.triangles.get(id.as_str()) {
                None => report.push(ReportItem::fail("sums", loc.as_str(), format!("unknown triangle {id}"))),
                Some(tri) if tri.objects() != want.map(String::as_str) => report.push(ReportItem::fail(
                    "sums",
                    loc.as_str(),
                    format!("{id} is {} → {} → {}, expected {} → {} → {}", tri.x, tri.y, tri.z, want[0], want[1], want[2]),
                )),
                _ => {}
            }
        }
    }
    report.push(ReportItem::pass("sums", "sums", format!("{} entries", t.sums.len())));

    // triangle isomorphisms
    for ti in &t.triangle_isos {
        let (Some(a), Some(b)) = (ix.triangles.get(ti.source.as_str()), ix.triangles.get(ti.target.as_str())) else {
            report.push(ReportItem::fail("triangle-iso", ti.id.as_str(), "dangling triangle reference"));
            continue;
        };
        for (name, comp, s, tt) in [("x", &ti.ix, &a.x, &b.x), ("y", &ti.iy, &a.y, &b.y), ("z", &ti.iz, &a.z, &b.z)] {
            match ix.isos.get(comp.as_str()) {
                None => report.push(ReportItem::fail("triangle-iso", ti.id.as_str(), format!("unknown iso {comp}"))),
                Some(f) if f.source != *s || f.target != *tt => report.push(ReportItem::fail(
                    "triangle-iso",
                    ti.id.as_str(),
                    format!("{name}-component {comp} : {} → {} should be {s} → {tt}", f.source, f.target),
                )),
                _ => {}
            }
        }
    }
    report.push(ReportItem::pass("triangle-iso", "triangle isos", format!("{} listed", t.triangle_isos.len())));

    // octahedra
    for o in &t.octahedra {
        let tris: Option<Vec<&Triangle>> = o.triangles().iter().map(|id| ix.triangles.get(id).copied()).collect();
        let Some(tris) = tris else {
            report.push(ReportItem::fail("octahedron", o.id.as_str(), "dangling triangle reference"));
            continue;
        };
        for (what, l, r) in octahedron_incidences([tris[0], tris[1], tris[2], tris[3]]) {
            if l != r {
                report.push(ReportItem::fail("octahedron", o.id.as_str(), format!("{what} fails: {l} vs {r}")));
            }
        }
    }
    report.push(ReportItem::pass("octahedron", "octahedra", format!("{} listed", t.octahedra.len())));

    // nine-diagrams
    for d in &t.nine_diagrams {
        let rows: Option<Vec<&Triangle>> = d.rows.iter().map(|id| ix.triangles.get(id.as_str()).copied()).collect();
        let cols: Option<Vec<&Triangle>> = d.cols.iter().map(|id| ix.triangles.get(id.as_str()).copied()).collect();
        let (Some(rows), Some(cols)) = (rows, cols) else {
            report.push(ReportItem::fail("nine-diagram", d.id.as_str(), "dangling triangle reference"));
            continue;
        };
        for r in 0..3 {
            for c in 0..3 {
                let a = rows[r].objects()[c];
                let b = cols[c].objects()[r];
                if a != b {
                    report.push(ReportItem::fail(
                        "nine-diagram",
                        d.id.as_str(),
                        format!("cell ({r},{c}): row gives {a}, column gives {b}"),
                    ));
                }
            }
        }
        if !d.anticommutative_corner {
            report.push(ReportItem::note("nine-diagram", d.id.as_str(), "anticommutative corner not attested"));
        }
    }
    report.push(ReportItem::pass("nine-diagram", "nine-diagrams", format!("{} listed", t.nine_diagrams.len())));

    // certificates
    let mut certified = BTreeSet::new();
    for c in &t.certificates {
        if !certified.insert(c.diagram.as_str()) {
            report.push(ReportItem::fail("unique-ids", format!("certificate {}", c.diagram), "duplicate certificate"));
        }
        if t.nine_diagram(&c.diagram).is_none() {
            report.push(ReportItem::fail("verdier", c.diagram.as_str(), "certificate for unknown nine-diagram"));
            continue;
        }
        match super::check_verdier(t, &c.diagram) {
            Ok(r) => {
                for item in r.items.into_iter().filter(|i| i.verdict == crate::report::Verdict::Fail) {
                    report.push(ReportItem::fail("verdier", item.location, item.detail));
                }
            }
            Err(e) => report.push(ReportItem::fail("verdier", c.diagram.as_str(), e.to_string())),
        }
    }
    report.push(ReportItem::pass("verdier", "certificates", format!("{} listed", t.certificates.len())));
    report.finish()
}
