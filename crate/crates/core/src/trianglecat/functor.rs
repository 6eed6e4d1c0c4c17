use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::{Report, ReportItem};

use super::builtin::{all_dims, dims_name, dims_tensor, parse_dims, Dims, GradedLines};
use super::presentation::{Triangle, TriangPresentation};
use super::verdier::{check_verdier, degenerate_2cube};

/// Tuple of ids, one per slot: objects everywhere except at the slot(s)
/// holding a morphism or triangle.
pub type Tuple = Vec<String>;

/// A pair of triangles in slots `i < j`, objects elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairKey {
    pub i: usize,
    pub j: usize,
    pub tuple: Tuple,
}

/// A functor `T₁ × … × Tₙ → T` given on a finite battery.
#[derive(Clone, Debug)]
pub struct TriFunctorData {
    pub id: String,
    pub sources: Vec<Arc<TriangPresentation>>,
    pub target: Arc<TriangPresentation>,
    /// Objects outside the map are out of window; items touching them are
    /// untestable.
    pub objects: BTreeMap<Tuple, String>,
    pub isos: BTreeMap<(usize, Tuple), String>,
    pub triangles: BTreeMap<(usize, Tuple), String>,
    pub verdier: BTreeMap<PairKey, String>,
    /// Per-slot triangle battery; `None` means every listed triangle.
    pub battery: Option<Vec<Vec<String>>>,
    /// Pairs required to carry a Verdier structure; `None` means every
    /// pair of battery triangles.
    pub pair_battery: Option<BTreeSet<PairKey>>,
    /// Whether the sign square of a biexact functor has been attested by
    /// whoever supplied the data. It cannot be expressed without signs on
    /// morphisms and is reported, never assumed.
    pub anticommutativity_attested: bool,
}

impl TriFunctorData {
    pub fn arity(&self) -> usize {
        self.sources.len()
    }

    pub fn battery(&self, slot: usize) -> Vec<String> {
        match &self.battery {
            Some(b) => b[slot].clone(),
            None => self.sources[slot].triangles.iter().map(|t| t.id.clone()).collect(),
        }
    }

    /// All object tuples over the sources.
    pub fn object_tuples(&self) -> Vec<Tuple> {
        object_tuples(&self.sources)
    }

    /// Object tuples with slot `i` left empty.
    pub fn slot_contexts(&self, i: usize) -> Vec<Tuple> {
        slot_contexts(&self.sources, i)
    }

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
                            let mut tuple = ctx.clone();
                            tuple[i] = a.clone();
                            tuple[j] = b.clone();
                            out.push(PairKey { i, j, tuple });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn object(&self, tuple: &[String]) -> Option<&str> {
        self.objects.get(tuple).map(String::as_str)
    }

    pub fn triangle_image(&self, slot: usize, tuple: &[String]) -> Option<&str> {
        self.triangles.get(&(slot, tuple.to_vec())).map(String::as_str)
    }

    /// Identity functor of a presentation.
    pub fn identity(t: Arc<TriangPresentation>) -> Self {
        let one = |x: &String| vec![x.clone()];
        Self {
            id: format!("id({})", t.id),
            objects: t.objects.iter().map(|x| (one(x), x.clone())).collect(),
            isos: t.isos.iter().map(|f| ((0, one(&f.id)), f.id.clone())).collect(),
            triangles: t.triangles.iter().map(|d| ((0, one(&d.id)), d.id.clone())).collect(),
            verdier: BTreeMap::new(),
            battery: None,
            pair_battery: None,
            anticommutativity_attested: true,
            sources: vec![t.clone()],
            target: t,
        }
    }

    /// The functor sending everything to zero in `target`, which must list
    /// a triangle `0 → 0 → 0`, an identity on `0` and the degenerate
    /// nine-diagram on it.
    pub fn zero(sources: Vec<Arc<TriangPresentation>>, target: Arc<TriangPresentation>) -> Result<Self> {
        let z = target.zero.clone();
        let zt = target
            .find_triangle(&z, &z, &z)
            .ok_or_else(|| Error::MissingDatum(format!("{} lists no triangle 0 → 0 → 0", target.id)))?
            .id
            .clone();
        let zi = target
            .identities
            .get(&z)
            .ok_or_else(|| Error::MissingDatum(format!("{} lists no identity of 0", target.id)))?
            .clone();
        let grid = target
            .nine_diagrams
            .iter()
            .find(|d| d.rows.iter().chain(&d.cols).all(|r| *r == zt) && target.certificate(&d.id).is_some())
            .map(|d| d.id.clone());
        let mut f = Self {
            id: "zero".into(),
            objects: BTreeMap::new(),
            isos: BTreeMap::new(),
            triangles: BTreeMap::new(),
            verdier: BTreeMap::new(),
            battery: None,
            pair_battery: None,
            anticommutativity_attested: true,
            sources,
            target,
        };
        for t in f.object_tuples() {
            f.objects.insert(t, z.clone());
        }
        for i in 0..f.arity() {
            let src = f.sources[i].clone();
            for ctx in f.slot_contexts(i) {
                for iso in &src.isos {
                    let mut t = ctx.clone();
                    t[i] = iso.id.clone();
                    f.isos.insert((i, t), zi.clone());
                }
                for tri in &src.triangles {
                    let mut t = ctx.clone();
                    t[i] = tri.id.clone();
                    f.triangles.insert((i, t), zt.clone());
                }
            }
        }
        if let Some(grid) = grid {
            for p in f.pairs() {
                f.verdier.insert(p, grid.clone());
            }
        }
        Ok(f)
    }
}

pub(crate) fn object_tuples(sources: &[Arc<TriangPresentation>]) -> Vec<Tuple> {
    object_tuples_except(sources, &[])
}

pub(crate) fn slot_contexts(sources: &[Arc<TriangPresentation>], i: usize) -> Vec<Tuple> {
    object_tuples_except(sources, &[i])
}

/// Cartesian product of object lists, with the given slots left empty.
pub(crate) fn object_tuples_except(sources: &[Arc<TriangPresentation>], skip: &[usize]) -> Vec<Tuple> {
    let mut out = vec![vec![]];
    for (k, s) in sources.iter().enumerate() {
        let choices: Vec<String> = if skip.contains(&k) { vec![String::new()] } else { s.objects.clone() };
        out = out
            .into_iter()
            .flat_map(|t: Tuple| {
                choices.iter().map(move |c| {
                    let mut t = t.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
    }
    out
}

fn with(tuple: &[String], slot: usize, value: &str) -> Tuple {
    let mut t = tuple.to_vec();
    t[slot] = value.to_string();
    t
}

/// Checks that every battery triangle (in each slot, at every tuple of
/// objects elsewhere) is sent to a listed target triangle on the image
/// objects, that isos go to isos between image objects, and that `F`
/// commutes with `Σ` on objects.
pub fn check_multiexact_tri_functor(f: &TriFunctorData) -> Report {
    let mut report = Report::new("check-multiexact");
    let target = &f.target;
    let tix = target.index();
    if f.objects.values().any(|o| !tix.objects.contains(o.as_str())) {
        for (k, o) in f.objects.iter().filter(|(_, o)| !tix.objects.contains(o.as_str())) {
            report.push(ReportItem::fail("objects", format!("{k:?}"), format!("image {o} is not a target object")));
        }
    }
    let (mut tri_ok, mut tri_skip, mut iso_ok, mut shift_ok) = (0usize, 0usize, 0usize, 0usize);
    for i in 0..f.arity() {
        let src = &f.sources[i];
        let battery = f.battery(i);
        for ctx in f.slot_contexts(i) {
            for id in &battery {
                let Some(tri) = src.triangle(id) else {
                    report.push(ReportItem::fail("triangle-image", format!("slot {i} {id}"), "battery triangle not in source"));
                    continue;
                };
                let key = with(&ctx, i, id);
                let loc = format!("slot {i} {}", key.join(" ⊗ "));
                let images: Vec<Option<&str>> = tri.objects().iter().map(|x| f.object(&with(&ctx, i, x))).collect();
                if images.iter().any(Option::is_none) {
                    tri_skip += 1;
                    continue;
                }
                let want = [images[0].unwrap(), images[1].unwrap(), images[2].unwrap()];
                match f.triangle_image(i, &key) {
                    None => report.push(ReportItem::fail("triangle-image", loc, "no declared image")),
                    Some(img) => match tix.triangles.get(img) {
                        None => report.push(ReportItem::fail("triangle-image", loc, format!("image {img} is not a target triangle"))),
                        Some(t) if t.objects() != want => report.push(ReportItem::fail(
                            "triangle-image",
                            loc,
                            format!("image {img} is {} → {} → {}, objects map to {} → {} → {}", t.x, t.y, t.z, want[0], want[1], want[2]),
                        )),
                        Some(_) => tri_ok += 1,
                    },
                }
            }
            for iso in &src.isos {
                let key = with(&ctx, i, &iso.id);
                let (Some(s), Some(t)) = (f.object(&with(&ctx, i, &iso.source)), f.object(&with(&ctx, i, &iso.target))) else {
                    continue;
                };
                let loc = format!("slot {i} {}", key.join(" ⊗ "));
                match f.isos.get(&(i, key.clone())) {
                    None => report.push(ReportItem::fail("iso-image", loc, "no declared image")),
                    Some(img) => match tix.isos.get(img.as_str()) {
                        None => report.push(ReportItem::fail("iso-image", loc, format!("image {img} is not a target iso"))),
                        Some(g) if g.source != s || g.target != t => report.push(ReportItem::fail(
                            "iso-image",
                            loc,
                            format!("image {img} : {} → {}, expected {s} → {t}", g.source, g.target),
                        )),
                        Some(_) => {
                            if src.is_identity(&iso.id) && !target.is_identity(img) {
                                report.push(ReportItem::fail("iso-image", loc, format!("identity sent to non-identity {img}")));
                            } else {
                                iso_ok += 1;
                            }
                        }
                    },
                }
            }
        }
        // Σ in slot i
        for t in f.object_tuples() {
            let Some(sx) = src.shift_of(&t[i]) else { continue };
            let (Some(a), Some(b)) = (f.object(&with(&t, i, sx)), f.object(&t)) else { continue };
            let Some(sb) = target.shift_of(b) else {
                report.push(ReportItem::fail("shift", t.join(" ⊗ "), format!("Σ{b} undefined in target")));
                continue;
            };
            let witnessed = a == sb || target.isos.iter().any(|g| g.source == a && g.target == sb);
            if witnessed {
                shift_ok += 1;
            } else {
                report.push(ReportItem::fail(
                    "shift",
                    format!("slot {i} {}", t.join(" ⊗ ")),
                    format!("F(Σ…) = {a} but ΣF(…) = {sb}, no listed iso"),
                ));
            }
        }
    }
    report.push(ReportItem::pass("triangle-image", "battery", format!("{tri_ok} images checked")));
    if tri_skip > 0 {
        report.push(ReportItem::untestable("triangle-image", "battery", format!("{tri_skip} triangles leave the window")));
    }
    report.push(ReportItem::pass("iso-image", "battery", format!("{iso_ok} images checked")));
    report.push(ReportItem::pass("shift", "objects", format!("{shift_ok} tuples")));
    if f.arity() > 1 && !f.anticommutativity_attested {
        report.push(ReportItem::note("biexact-sign", f.id.as_str(), "anticommuting Σ² square not attested"));
    }
    report.finish()
}

/// For each required pair of triangles, the induced grid (rows `F(Δᵢ, ·)`,
/// columns `F(·, Δⱼ)`) must be a listed target nine-diagram whose
/// certificate passes [`check_verdier`].
pub fn check_functor_verdier_admission(f: &TriFunctorData) -> Report {
    let mut report = Report::new("check-verdier-admission");
    let (mut ok, mut skipped) = (0usize, 0usize);
    let mut verified: BTreeMap<String, bool> = BTreeMap::new();
    for p in f.pairs() {
        let loc = format!("slots {},{} {}", p.i, p.j, p.tuple.join(" ⊗ "));
        let (Some(ti), Some(tj)) = (f.sources[p.i].triangle(&p.tuple[p.i]), f.sources[p.j].triangle(&p.tuple[p.j])) else {
            report.push(ReportItem::fail("verdier-admission", loc, "pair references unknown triangles"));
            continue;
        };
        // expected rows and columns
        let rows: Vec<Option<&str>> =
            tj.objects().iter().map(|y| f.triangle_image(p.i, &with(&p.tuple, p.j, y))).collect();
        let cols: Vec<Option<&str>> =
            ti.objects().iter().map(|x| f.triangle_image(p.j, &with(&p.tuple, p.i, x))).collect();
        let in_window = |t: &Triangle, slot: usize, other: usize, fixed: &str| {
            t.objects().iter().all(|x| f.object(&with(&with(&p.tuple, slot, x), other, fixed)).is_some())
        };
        let all_in = tj.objects().iter().all(|y| in_window(ti, p.i, p.j, y));
        if !all_in {
            skipped += 1;
            continue;
        }
        let Some(diagram) = f.verdier.get(&p) else {
            report.push(ReportItem::fail("verdier-admission", loc, "no Verdier structure declared for this pair"));
            continue;
        };
        let Some(d) = f.target.nine_diagram(diagram) else {
            report.push(ReportItem::fail("verdier-admission", loc, format!("{diagram} is not a target nine-diagram")));
            continue;
        };
        let mut bad = vec![];
        for r in 0..3 {
            if rows[r] != Some(d.rows[r].as_str()) {
                bad.push(format!("row {} is {} not {:?}", r + 1, d.rows[r], rows[r]));
            }
            if cols[r] != Some(d.cols[r].as_str()) {
                bad.push(format!("column {} is {} not {:?}", r + 1, d.cols[r], cols[r]));
            }
        }
        if !bad.is_empty() {
            report.push(ReportItem::fail("verdier-admission", loc, format!("{diagram}: {}", bad.join("; "))));
            continue;
        }
        let good = *verified.entry(diagram.clone()).or_insert_with(|| {
            check_verdier(&f.target, diagram).map(|r| r.is_valid()).unwrap_or(false)
        });
        if good {
            ok += 1;
        } else {
            report.push(ReportItem::fail("verdier-admission", loc, format!("certificate of {diagram} does not check")));
        }
    }
    report.push(ReportItem::pass("verdier-admission", "pairs", format!("{ok} pairs certified")));
    if skipped > 0 {
        report.push(ReportItem::untestable("verdier-admission", "pairs", format!("{skipped} pairs leave the window")));
    }
    report.finish()
}

/// `graded-lines × graded-lines → graded-lines`, the degreewise tensor
/// product truncated to the window. Returns the target presentation
/// (extended by the triangles and certificates the functor needs) and the
/// functor, whose sources are the plain presentation.
///
/// Verdier structures are supplied for pairs with a trivial member. For two
/// nontrivial split triangles the induced grid identifies the centre with
/// two different sum decompositions, so in the strict skeletal model its
/// middle row and column are not the listed split triangles; those pairs
/// are left outside the pair battery.
pub fn graded_lines_tensor(cap: u8) -> (Arc<TriangPresentation>, TriFunctorData) {
    let mut fam = super::builtin::graded_lines_family(cap);
    let source = Arc::new(fam.t.clone());
    let dims = all_dims(cap);
    let mut objects = BTreeMap::new();
    for &a in &dims {
        for &b in &dims {
            let p = dims_tensor(a, b);
            if p[0] <= cap && p[1] <= cap {
                objects.insert(vec![dims_name(a), dims_name(b)], dims_name(p));
            }
        }
    }
    let recipes = recipes(&mut fam);
    let mut triangles = BTreeMap::new();
    let mut isos = BTreeMap::new();
    for &w in &dims {
        for (id, r) in &recipes {
            for slot in 0..2 {
                let Some(img) = r.tensor(w, cap) else { continue };
                let id_img = img.build(&mut fam);
                let key = if slot == 0 { vec![id.clone(), dims_name(w)] } else { vec![dims_name(w), id.clone()] };
                triangles.insert((slot, key), id_img);
            }
        }
        for iso in &source.isos {
            let (x, y) = iso_parts(&iso.id);
            let (xw, yw) = (dims_tensor(x, w), dims_tensor(y, w));
            let s = super::builtin::dims_add(xw, yw);
            if s[0] > cap || s[1] > cap {
                continue;
            }
            let img = fam.swap_iso(xw, yw);
            isos.insert((0, vec![iso.id.clone(), dims_name(w)]), img.clone());
            isos.insert((1, vec![dims_name(w), iso.id.clone()]), img);
        }
    }
    let trivial: BTreeSet<&str> = source
        .triangles
        .iter()
        .filter(|t| is_trivial(&source, t))
        .map(|t| t.id.as_str())
        .collect();
    let mut pair_battery = BTreeSet::new();
    let mut verdier = BTreeMap::new();
    for a in &source.triangles {
        for b in &source.triangles {
            if !trivial.contains(a.id.as_str()) && !trivial.contains(b.id.as_str()) {
                continue;
            }
            let key = PairKey { i: 0, j: 1, tuple: vec![a.id.clone(), b.id.clone()] };
            // grids are degenerate: one direction repeats a single triangle
            let (tri, dir, beta) = if trivial.contains(b.id.as_str()) {
                let beta = if b.x == source.zero { -1 } else { 1 };
                let at = if b.x == source.zero { &b.y } else { &b.x };
                (triangles.get(&(0, vec![a.id.clone(), at.clone()])), 2, beta)
            } else {
                let beta = if a.x == source.zero { -1 } else { 1 };
                let at = if a.x == source.zero { &a.y } else { &a.x };
                (triangles.get(&(1, vec![at.clone(), b.id.clone()])), 1, beta)
            };
            let Some(tri) = tri.cloned() else { continue };
            pair_battery.insert(key.clone());
            let id = degenerate_2cube(&mut fam.t, &tri, dir, beta).expect("images are listed");
            verdier.insert(key, id);
        }
    }
    let target = Arc::new(fam.t);
    let f = TriFunctorData {
        id: "tensor".into(),
        sources: vec![source.clone(), source],
        target: target.clone(),
        objects,
        isos,
        triangles,
        verdier,
        battery: None,
        pair_battery: Some(pair_battery),
        anticommutativity_attested: false,
    };
    (target, f)
}

/// `0 → x = x` or `x = x → 0`.
pub fn is_trivial(t: &TriangPresentation, tri: &Triangle) -> bool {
    let identity = |l: &Option<String>| match l {
        None => true,
        Some(l) => l == "0" || t.is_identity(l),
    };
    (tri.x == t.zero && tri.y == tri.z && identity(&tri.g)) || (tri.z == t.zero && tri.x == tri.y && identity(&tri.f))
}

/// How a graded-lines triangle was built, so it can be tensored.
#[derive(Clone, Copy, Debug)]
enum Recipe {
    Split1(Dims, Dims),
    Split2(Dims, Dims),
    Cone(Dims),
    Swap(Dims, Dims),
    Rot1(Dims, Dims),
}

impl Recipe {
    fn tensor(self, w: Dims, cap: u8) -> Option<Recipe> {
        let t = |x: Dims| dims_tensor(x, w);
        let r = match self {
            Recipe::Split1(x, y) => Recipe::Split1(t(x), t(y)),
            Recipe::Split2(x, y) => Recipe::Split2(t(x), t(y)),
            Recipe::Cone(x) => Recipe::Cone(t(x)),
            Recipe::Swap(x, y) => Recipe::Swap(t(x), t(y)),
            Recipe::Rot1(x, y) => Recipe::Rot1(t(x), t(y)),
        };
        let fits = |v: Dims| v[0] <= cap && v[1] <= cap;
        let ok = match r {
            Recipe::Split1(x, y) | Recipe::Split2(x, y) | Recipe::Swap(x, y) | Recipe::Rot1(x, y) => {
                fits(super::builtin::dims_add(x, y))
            }
            Recipe::Cone(x) => fits(x),
        };
        ok.then_some(r)
    }

    fn build(self, g: &mut GradedLines) -> String {
        match self {
            Recipe::Split1(x, y) => g.split1(x, y),
            Recipe::Split2(x, y) => g.split2(x, y),
            Recipe::Cone(x) => g.cone(x),
            Recipe::Swap(x, y) => g.swap_triangle(x, y),
            Recipe::Rot1(x, y) => g.rotated_split1(x, y),
        }
    }
}

fn recipes(g: &mut GradedLines) -> BTreeMap<String, Recipe> {
    let dims = all_dims(g.cap);
    let mut out = BTreeMap::new();
    let cap = g.cap;
    let fits = |v: Dims| v[0] <= cap && v[1] <= cap;
    // later entries win, so list the most specific recipes last
    for &x in &dims {
        out.insert(g.cone(x), Recipe::Cone(x));
    }
    for &x in &dims {
        for &y in &dims {
            if !fits(super::builtin::dims_add(x, y)) {
                continue;
            }
            out.insert(g.rotated_split1(x, y), Recipe::Rot1(x, y));
            out.insert(g.swap_triangle(x, y), Recipe::Swap(x, y));
            out.insert(g.split2(x, y), Recipe::Split2(x, y));
            out.insert(g.split1(x, y), Recipe::Split1(x, y));
        }
    }
    out
}

/// Summands of a swap iso (or `(x, 0)` for an identity).
fn iso_parts(id: &str) -> (Dims, Dims) {
    if let Some(rest) = id.strip_prefix("sw(").and_then(|r| r.strip_suffix(')')) {
        let cut = rest.find("],").expect("swap id") + 1;
        let x = parse_dims(&rest[..cut]).expect("swap id");
        let y = parse_dims(&rest[cut + 1..]).expect("swap id");
        (x, y)
    } else {
        let x = parse_dims(id.trim_start_matches("id")).expect("identity id");
        (x, [0, 0])
    }
}
