//! `n`-cubes in a skeletal Picard groupoid.
//!
//! Vertices are indexed by `{-1,0,1}^n`, flattened in base 3 with the first
//! coordinate most significant and `-1 < 0 < 1`. The structure iso
//! `f_i(r) : S(..1..) + S(..-1..) → S(..0..)` in direction `i` is stored for
//! every residual index `r ∈ {-1,0,1}^{n-1}` in the same flattened order.
//! Directions are 0-based in the API; reports print them 1-based.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Elem;
use crate::error::{Error, Result};
use crate::picard::PicardPresentation;
use crate::report::{Report, ReportItem};

pub type CubeIndex = Vec<i8>;

pub fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

pub fn flat_index(coords: &[i8]) -> usize {
    coords.iter().fold(0, |acc, &a| acc * 3 + (a + 1) as usize)
}

pub fn coords_of(mut idx: usize, n: usize) -> CubeIndex {
    let mut out = vec![0i8; n];
    for k in (0..n).rev() {
        out[k] = (idx % 3) as i8 - 1;
        idx /= 3;
    }
    out
}

pub fn all_indices(n: usize) -> impl Iterator<Item = CubeIndex> {
    (0..pow3(n)).map(move |i| coords_of(i, n))
}

fn insert(v: &[i8], pos: usize, a: i8) -> CubeIndex {
    let mut out = v.to_vec();
    out.insert(pos, a);
    out
}

fn remove(v: &[i8], pos: usize) -> CubeIndex {
    let mut out = v.to_vec();
    out.remove(pos);
    out
}

fn fmt_index(v: &[i8]) -> String {
    let parts: Vec<String> = v.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cube {
    pub n: usize,
    /// `3^n` vertex values in `π₀`.
    pub vertices: Vec<Elem>,
    /// `structure[i]` holds `3^{n-1}` values in `π₁`.
    pub structure: Vec<Vec<Elem>>,
}

impl Cube {
    pub fn point(x: Elem) -> Self {
        Self { n: 0, vertices: vec![x], structure: vec![] }
    }

    /// The 1-cube `[x|y|z]` with `f : z + x → y`.
    pub fn one(x: Elem, y: Elem, z: Elem, f: Elem) -> Self {
        Self { n: 1, vertices: vec![x, y, z], structure: vec![vec![f]] }
    }

    pub fn zero(p: &PicardPresentation, n: usize) -> Self {
        let structure = if n == 0 { vec![] } else { vec![vec![p.b().zero(); pow3(n - 1)]; n] };
        Self { n, vertices: vec![p.a().zero(); pow3(n)], structure }
    }

    /// Discrete cube from its `2^n` corners, listed in lexicographic order
    /// of `{-1,1}^n` (first coordinate most significant).
    pub fn from_corners(p: &PicardPresentation, n: usize, corners: &[Elem]) -> Result<Self> {
        if corners.len() != 1 << n {
            return Err(Error::MismatchedShape(format!("{n}-cube needs {} corners, got {}", 1 << n, corners.len())));
        }
        let a = p.a();
        let mut vertices = Vec::with_capacity(pow3(n));
        for v in all_indices(n) {
            // a zero coordinate sums over both corner values
            let mut acc = a.zero();
            for (k, c) in corners.iter().enumerate() {
                let hits = v.iter().enumerate().all(|(d, &x)| {
                    let bit = (k >> (n - 1 - d)) & 1;
                    let corner = if bit == 0 { -1 } else { 1 };
                    x == 0 || x == corner
                });
                if hits {
                    acc = a.add(&acc, c);
                }
            }
            vertices.push(acc);
        }
        let structure = if n == 0 { vec![] } else { vec![vec![p.b().zero(); pow3(n - 1)]; n] };
        Ok(Self { n, vertices, structure })
    }

    pub fn vertex(&self, coords: &[i8]) -> &Elem {
        &self.vertices[flat_index(coords)]
    }

    pub fn f(&self, i: usize, residual: &[i8]) -> &Elem {
        &self.structure[i][flat_index(residual)]
    }

    /// Corner values in the order of [`Cube::from_corners`].
    pub fn corners(&self) -> Vec<Elem> {
        (0..1usize << self.n)
            .map(|k| {
                let c: Vec<i8> = (0..self.n).map(|d| if (k >> (self.n - 1 - d)) & 1 == 0 { -1 } else { 1 }).collect();
                self.vertex(&c).clone()
            })
            .collect()
    }

    /// Assembles the `n`-cube that is the 1-cube `hi + lo → mid` of `(n-1)`-cubes
    /// with components `f1`.
    pub fn stack(hi: &Cube, mid: &Cube, lo: &Cube, f1: Vec<Elem>) -> Result<Self> {
        let m = hi.n;
        if mid.n != m || lo.n != m || f1.len() != pow3(m) {
            return Err(Error::MismatchedShape("stacked cubes must share a dimension".into()));
        }
        let layer = |a: i8| match a {
            -1 => lo,
            0 => mid,
            _ => hi,
        };
        let n = m + 1;
        let vertices = all_indices(n).map(|v| layer(v[0]).vertex(&v[1..]).clone()).collect();
        let mut structure = vec![f1];
        for i in 1..n {
            structure.push(all_indices(m).map(|r| layer(r[0]).f(i - 1, &r[1..]).clone()).collect());
        }
        Ok(Self { n, vertices, structure })
    }

    /// Image under the cube isomorphism with vertex components `phi`.
    pub fn gauge(&self, p: &PicardPresentation, phi: &[Elem]) -> Cube {
        let b = p.b();
        let mut out = self.clone();
        for i in 0..self.n {
            for (k, r) in all_indices(self.n - 1).enumerate() {
                let at = |a: i8| &phi[flat_index(&insert(&r, i, a))];
                out.structure[i][k] = b.sub(&b.add(&self.structure[i][k], at(0)), &b.add(at(1), at(-1)));
            }
        }
        out
    }

    fn check_shape(&self, p: &PicardPresentation) -> Result<()> {
        let ok = self.vertices.len() == pow3(self.n)
            && self.structure.len() == self.n
            && self.structure.iter().all(|s| s.len() == pow3(self.n.saturating_sub(1)))
            && self.vertices.iter().all(|v| v.len() == p.a().ngens())
            && self.structure.iter().flatten().all(|f| f.len() == p.b().ngens());
        if ok {
            Ok(())
        } else {
            Err(Error::MismatchedShape(format!("malformed {}-cube tables", self.n)))
        }
    }

    /// Canonical form: every entry reduced.
    pub fn reduced(&self, p: &PicardPresentation) -> Cube {
        Cube {
            n: self.n,
            vertices: self.vertices.iter().map(|v| p.a().reduce(v.clone())).collect(),
            structure: self.structure.iter().map(|s| s.iter().map(|f| p.b().reduce(f.clone())).collect()).collect(),
        }
    }
}

/// Path sums of the pentagon for directions `i < j` at `rest`; the `λ` term sits on the second path.
fn pentagon_sides(p: &PicardPresentation, s: &Cube, i: usize, j: usize, rest: &[i8]) -> (Elem, Elem) {
    let b = p.b();
    let full = |ai: i8, aj: i8| insert(&insert(rest, i, ai), j, aj);
    let fi = |aj: i8| s.f(i, &remove(&full(0, aj), i)).clone();
    let fj = |ai: i8| s.f(j, &remove(&full(ai, 0), j)).clone();
    let lam = p.symmetry(s.vertex(&full(-1, 1)), s.vertex(&full(1, -1)));
    let top = b.sum(&[fi(1), fi(-1), fj(0)]);
    let bottom = b.sum(&[lam, fj(1), fj(-1), fi(0)]);
    (top, bottom)
}

pub fn validate_cube(p: &PicardPresentation, s: &Cube) -> Report {
    let mut report = Report::new("check-cube");
    if let Err(e) = s.check_shape(p) {
        return Report::error("check-cube", e.to_string());
    }
    let a = p.a();
    let b = p.b();
    for (k, v) in s.vertices.iter().enumerate() {
        if !a.contains(v) {
            report.push(ReportItem::fail("entry", fmt_index(&coords_of(k, s.n)), format!("{v} not reduced in {a}")));
        }
    }
    let mut sums = 0;
    for i in 0..s.n {
        for r in all_indices(s.n - 1) {
            let at = |x: i8| s.vertex(&insert(&r, i, x));
            let lhs = a.add(at(1), at(-1));
            if lhs == *at(0) {
                sums += 1;
            } else {
                report.push(ReportItem::fail(
                    "sum-constraint",
                    format!("direction {} at {}", i + 1, fmt_index(&r)),
                    format!("S(1) + S(-1) = {lhs} ≠ S(0) = {}", at(0)),
                ));
            }
        }
    }
    let mut pentagons = 0;
    for i in 0..s.n {
        for j in i + 1..s.n {
            for rest in all_indices(s.n - 2) {
                let (top, bottom) = pentagon_sides(p, s, i, j, &rest);
                if b.is_zero(&b.sub(&top, &bottom)) {
                    pentagons += 1;
                } else {
                    report.push(ReportItem::fail(
                        "pentagon",
                        format!("directions ({},{}) at {}", i + 1, j + 1, fmt_index(&rest)),
                        format!("{top} ≠ {bottom}"),
                    ));
                }
            }
        }
    }
    if sums > 0 {
        report.push(ReportItem::pass("sum-constraint", format!("{}-cube", s.n), format!("{sums} cells hold")));
    }
    if pentagons > 0 {
        report.push(ReportItem::pass("pentagon", format!("{}-cube", s.n), format!("{pentagons} cells hold")));
    }
    report.finish()
}

// Flat indices hold base-3 digits, most significant first; digit = coordinate + 1.

fn ins_digit(idx: usize, len: usize, pos: usize, d: usize) -> usize {
    let p = pow3(len - pos);
    (idx / p * 3 + d) * p + idx % p
}

fn del_digit(idx: usize, len: usize, pos: usize) -> usize {
    let p = pow3(len - 1 - pos);
    idx / (p * 3) * p + idx % p
}

fn digit(idx: usize, len: usize, pos: usize) -> usize {
    idx / pow3(len - 1 - pos) % 3
}

/// `∂_j^α`, with `j` 0-based.
pub fn face(s: &Cube, j: usize, alpha: i8) -> Result<Cube> {
    if s.n == 0 || j >= s.n {
        return Err(Error::DimensionOutOfRange(format!("face {} of a {}-cube", j + 1, s.n)));
    }
    let (n, m) = (s.n, s.n - 1);
    let da = (alpha + 1) as usize;
    let vertices = (0..pow3(m)).map(|b| s.vertices[ins_digit(b, m, j, da)].clone()).collect();
    let structure = (0..m)
        .map(|i2| {
            let i = if i2 < j { i2 } else { i2 + 1 };
            (0..pow3(m - 1))
                .map(|r| {
                    let full = ins_digit(ins_digit(r, m - 1, i2, 1), m, j, da);
                    s.structure[i][del_digit(full, n, i)].clone()
                })
                .collect()
        })
        .collect();
    Ok(Cube { n: m, vertices, structure })
}

/// `s^j_β`, with `j` 0-based in `0..=n`.
pub fn degeneracy(p: &PicardPresentation, s: &Cube, j: usize, beta: i8) -> Result<Cube> {
    if j > s.n || !(beta == 1 || beta == -1) {
        return Err(Error::DimensionOutOfRange(format!("degeneracy s^{}_{beta} of a {}-cube", j + 1, s.n)));
    }
    let m = s.n + 1;
    let db = (beta + 1) as usize;
    let a0 = p.a().zero();
    let b0 = p.b().zero();
    let vertices =
        (0..pow3(m)).map(|v| if digit(v, m, j) == db { a0.clone() } else { s.vertices[del_digit(v, m, j)].clone() }).collect();
    let structure = (0..m)
        .map(|i| {
            (0..pow3(m - 1))
                .map(|r| {
                    let full = ins_digit(r, m - 1, i, 1);
                    if i == j || digit(full, m, j) == db {
                        b0.clone()
                    } else {
                        let i0 = if i < j { i } else { i - 1 };
                        s.structure[i0][del_digit(del_digit(full, m, j), m - 1, i0)].clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(Cube { n: m, vertices, structure })
}

/// Vertexwise sum, with structure isos `(f_i + g_i) ∘ λ`.
pub fn add_cubes(p: &PicardPresentation, s: &Cube, t: &Cube) -> Result<Cube> {
    if s.n != t.n {
        return Err(Error::MismatchedShape(format!("cannot add a {}-cube and a {}-cube", s.n, t.n)));
    }
    s.check_shape(p)?;
    t.check_shape(p)?;
    let a = p.a();
    let b = p.b();
    let vertices = s.vertices.iter().zip(&t.vertices).map(|(x, y)| a.add(x, y)).collect();
    let structure = (0..s.n)
        .map(|i| {
            all_indices(s.n - 1)
                .map(|r| {
                    let lam = p.symmetry(t.vertex(&insert(&r, i, 1)), s.vertex(&insert(&r, i, -1)));
                    b.sum(&[s.f(i, &r).clone(), t.f(i, &r).clone(), lam])
                })
                .collect()
        })
        .collect();
    Ok(Cube { n: s.n, vertices, structure })
}

/// Checks that `f_j` defines an isomorphism of cubes `∂_j^1 S + ∂_j^{-1} S → ∂_j^0 S`,
/// and that the deviation of the structure isos from the naive sum is the `λ` term.
pub fn face_additivity_check(p: &PicardPresentation, s: &Cube, j: usize) -> Result<Report> {
    let mut report = Report::new("face-additivity");
    let hi = face(s, j, 1)?;
    let lo = face(s, j, -1)?;
    let mid = face(s, j, 0)?;
    let sum = add_cubes(p, &hi, &lo)?;
    if sum.vertices.iter().zip(&mid.vertices).any(|(x, y)| !p.a().is_zero(&p.a().sub(x, y))) {
        report.push(ReportItem::fail("vertex-table", format!("direction {}", j + 1), "∂¹ + ∂⁻¹ and ∂⁰ differ"));
        return Ok(report.finish());
    }
    let b = p.b();
    let phi = &s.structure[j];
    let m = mid.n;
    for i in 0..m {
        for r in all_indices(m.saturating_sub(1)) {
            let at = |a: i8| &phi[flat_index(&insert(&r, i, a))];
            let naive = b.add(hi.f(i, &r), lo.f(i, &r));
            let discrepancy = b.sub(&b.sub(&b.add(mid.f(i, &r), &b.add(at(1), at(-1))), at(0)), &naive);
            let expected = p.symmetry(lo.vertex(&insert(&r, i, 1)), hi.vertex(&insert(&r, i, -1)));
            if !b.is_zero(&b.sub(&discrepancy, &expected)) {
                report.push(ReportItem::fail(
                    "lambda-discrepancy",
                    format!("face direction {} at {}", i + 1, fmt_index(&r)),
                    format!("discrepancy {discrepancy}, λ term {expected}"),
                ));
            }
        }
    }
    report.push(ReportItem::pass("face-additivity", format!("direction {}", j + 1), format!("{}-cube", s.n)));
    Ok(report.finish())
}

type Decomposition = (Elem, Vec<usize>);

fn decompositions(p: &PicardPresentation, s: &Cube, v: &[i8]) -> Vec<Decomposition> {
    let zeros: Vec<usize> = (0..v.len()).filter(|&d| v[d] == 0).collect();
    if zeros.is_empty() {
        return vec![(p.b().zero(), vec![flat_index(v)])];
    }
    let b = p.b();
    let mut out = vec![];
    for d in zeros {
        let f = s.f(d, &remove(v, d));
        let mut hi = v.to_vec();
        hi[d] = 1;
        let mut lo = v.to_vec();
        lo[d] = -1;
        let his = decompositions(p, s, &hi);
        let los = decompositions(p, s, &lo);
        for (x, lx) in &his {
            for (y, ly) in &los {
                let mut leaves = lx.clone();
                leaves.extend(ly);
                out.push((b.sum(&[f.clone(), x.clone(), y.clone()]), leaves));
            }
        }
    }
    out
}

/// Evaluates every full decomposition of the central vertex into corners
/// (each node split along any of its zero coordinates), transports each onto
/// the reference leaf order `1..n` through the symmetry, and compares the
/// resulting isos.
pub fn check_higher_coherence(p: &PicardPresentation, s: &Cube) -> Result<Report> {
    if !(1..=4).contains(&s.n) {
        return Err(Error::DimensionOutOfRange(format!("higher coherence is checked for 1 ≤ n ≤ 4, got {}", s.n)));
    }
    s.check_shape(p)?;
    let mut report = Report::new("check-higher-coherence");
    let valid = validate_cube(p, s);
    if !valid.is_valid() {
        report.push(ReportItem::note("precondition", "", "cube does not validate; mismatches below are expected"));
    }
    let b = p.b();
    let center = vec![0i8; s.n];
    let trees = decompositions(p, s, &center);
    let reference = &trees[0].1;
    let mut pos = vec![usize::MAX; s.vertices.len()];
    for (k, &leaf) in reference.iter().enumerate() {
        pos[leaf] = k;
    }
    let transported: Vec<Elem> = trees
        .iter()
        .map(|(value, leaves)| {
            let mut perm = b.zero();
            for x in 0..leaves.len() {
                for y in x + 1..leaves.len() {
                    if pos[leaves[x]] > pos[leaves[y]] {
                        perm = b.add(&perm, &p.symmetry(&s.vertices[leaves[x]], &s.vertices[leaves[y]]));
                    }
                }
            }
            b.sub(value, &perm)
        })
        .collect();
    let mut mismatches = 0;
    for (k, t) in transported.iter().enumerate().skip(1) {
        if !b.is_zero(&b.sub(t, &transported[0])) {
            mismatches += 1;
            if mismatches <= 20 {
                report.push(ReportItem::fail("decomposition", format!("tree {k}"), format!("{t} ≠ {}", transported[0])));
            }
        }
    }
    if mismatches > 20 {
        report.push(ReportItem::fail("decomposition", "", format!("{mismatches} mismatching trees in total")));
    }
    report.push(ReportItem::pass("decomposition", format!("{}-cube", s.n), format!("{} trees", trees.len())));
    Ok(report.finish())
}

/// Uniformly random `n`-cube: `hi`, `lo` random `(n-1)`-cubes and a random
/// isomorphism `hi + lo → mid`. Free coordinates are drawn from `[-bound, bound]`.
pub fn random_cube<R: Rng + ?Sized>(p: &PicardPresentation, n: usize, rng: &mut R, bound: i64) -> Cube {
    if n == 0 {
        return Cube::point(p.a().random_element(rng, bound));
    }
    let hi = random_cube(p, n - 1, rng, bound);
    let lo = random_cube(p, n - 1, rng, bound);
    let phi: Vec<Elem> = (0..pow3(n - 1)).map(|_| p.b().random_element(rng, bound)).collect();
    let mid = add_cubes(p, &hi, &lo).expect("same dimension").gauge(p, &phi);
    Cube::stack(&hi, &mid, &lo, phi).expect("same dimension")
}

/// Number of `n`-cubes of a finite presentation, saturating.
pub fn cube_count(p: &PicardPresentation, n: usize) -> Option<u128> {
    let a = p.a().order()? as u128;
    let b = p.b().order()? as u128;
    let mut c = a;
    for k in 0..n {
        c = c.checked_mul(c)?.checked_mul(b.checked_pow(pow3(k) as u32)?)?;
    }
    Some(c)
}

/// Every `n`-cube of a finite presentation, or `BudgetExceeded` above `cap`.
pub fn enumerate_all_cubes(p: &PicardPresentation, n: usize, cap: u128) -> Result<Vec<Cube>> {
    match cube_count(p, n) {
        Some(c) if c <= cap => {}
        Some(c) => return Err(Error::BudgetExceeded(format!("{c} {n}-cubes exceed cap {cap}"))),
        None => return Err(Error::BudgetExceeded(format!("{n}-cubes of an infinite or huge presentation"))),
    }
    if n == 0 {
        return Ok(p.a().elements().unwrap_or_default().into_iter().map(Cube::point).collect());
    }
    let lower = enumerate_all_cubes(p, n - 1, cap)?;
    let bs = p.b().elements().unwrap_or_default();
    let slots = pow3(n - 1);
    let mut out = vec![];
    for hi in &lower {
        for lo in &lower {
            let sum = add_cubes(p, hi, lo)?;
            for code in 0..bs.len().pow(slots as u32) {
                let mut c = code;
                let phi: Vec<Elem> = (0..slots)
                    .map(|_| {
                        let e = bs[c % bs.len()].clone();
                        c /= bs.len();
                        e
                    })
                    .collect();
                out.push(Cube::stack(hi, &sum.gauge(p, &phi), lo, phi)?);
            }
        }
    }
    Ok(out)
}

/// Cubes of dimension `n`: exhaustive when at most `budget`, else `budget`
/// random samples.
pub fn cube_supply<R: Rng + ?Sized>(p: &PicardPresentation, n: usize, budget: usize, rng: &mut R) -> (Vec<Cube>, bool) {
    if let Ok(all) = enumerate_all_cubes(p, n, budget as u128) {
        return (all, true);
    }
    ((0..budget).map(|_| random_cube(p, n, rng, 3)).collect(), false)
}

/// Face/degeneracy relations on cubes of dimension `≤ 3`.
pub fn check_cubical_relations<R: Rng + ?Sized>(p: &PicardPresentation, budget: usize, rng: &mut R) -> Result<Report> {
    let mut report = Report::new("check-cubical-relations");
    let mut checked = [0usize; 4];
    let fail = |report: &mut Report, rel: &str, loc: String| {
        report.push(ReportItem::fail(rel, loc, "relation violated"));
    };
    for n in 0..=3 {
        let (cubes, exhaustive) = cube_supply(p, n, budget, rng);
        report.push(ReportItem::note(
            "supply",
            format!("n={n}"),
            format!("{} {} cubes", cubes.len(), if exhaustive { "(all)" } else { "sampled" }),
        ));
        for (ci, s) in cubes.iter().enumerate() {
            let loc = |what: String| format!("{n}-cube #{ci}: {what}");
            // ∂_i^α ∂_j^β = ∂_{j-1}^β ∂_i^α, i < j
            for j in 0..n {
                for i in 0..j {
                    for alpha in [-1, 0, 1] {
                        for beta in [-1, 0, 1] {
                            checked[0] += 1;
                            let l = face(&face(s, j, beta)?, i, alpha)?;
                            let r = face(&face(s, i, alpha)?, j - 1, beta)?;
                            if l != r {
                                fail(&mut report, "face-face", loc(format!("i={} j={} α={alpha} β={beta}", i + 1, j + 1)));
                            }
                        }
                    }
                }
            }
            // s^j_β s^i_α = s^i_α s^{j-1}_β, i < j
            for j in 0..=n + 1 {
                for i in 0..j {
                    for alpha in [-1, 1] {
                        for beta in [-1, 1] {
                            checked[1] += 1;
                            let l = degeneracy(p, &degeneracy(p, s, i, alpha)?, j, beta)?;
                            let r = degeneracy(p, &degeneracy(p, s, j - 1, beta)?, i, alpha)?;
                            if l != r {
                                fail(&mut report, "degeneracy-degeneracy", loc(format!("i={} j={} α={alpha} β={beta}", i + 1, j + 1)));
                            }
                        }
                    }
                }
            }
            // ∂_i^α s^j_β in its four cases
            for j in 0..=n {
                for beta in [-1, 1] {
                    let d = degeneracy(p, s, j, beta)?;
                    if !validate_cube(p, &d).is_valid() {
                        fail(&mut report, "degeneracy-valid", loc(format!("s^{}_{beta}", j + 1)));
                    }
                    for i in 0..=n {
                        for alpha in [-1, 0, 1] {
                            checked[2] += 1;
                            let l = face(&d, i, alpha)?;
                            let r = if i < j {
                                degeneracy(p, &face(s, i, alpha)?, j - 1, beta)?
                            } else if i > j {
                                degeneracy(p, &face(s, i - 1, alpha)?, j, beta)?
                            } else if alpha != beta {
                                s.clone()
                            } else {
                                Cube::zero(p, n)
                            };
                            if l != r {
                                fail(&mut report, "face-degeneracy", loc(format!("i={} j={} α={alpha} β={beta}", i + 1, j + 1)));
                            }
                        }
                    }
                }
            }
            for j in 0..n {
                for alpha in [-1, 0, 1] {
                    checked[3] += 1;
                    if !validate_cube(p, &face(s, j, alpha)?).is_valid() {
                        fail(&mut report, "face-valid", loc(format!("∂_{}^{alpha}", j + 1)));
                    }
                }
            }
        }
    }
    report.push(ReportItem::pass("face-face", "n ≤ 3", format!("{} instances", checked[0])));
    report.push(ReportItem::pass("degeneracy-degeneracy", "n ≤ 3", format!("{} instances", checked[1])));
    report.push(ReportItem::pass("face-degeneracy", "n ≤ 3", format!("{} instances", checked[2])));
    report.push(ReportItem::pass("closure", "n ≤ 3", format!("{} faces validated", checked[3])));
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(k: i64) -> Elem {
        Elem(vec![k])
    }

    #[test]
    fn one_cube_examples() {
        let p = PicardPresentation::discrete("Z/2".parse().unwrap());
        let ok = Cube::one(e(1), e(0), e(1), Elem(vec![]));
        assert_eq!(validate_cube(&p, &ok).status, Status::Valid);
        let bad = Cube::one(e(1), e(1), e(1), Elem(vec![]));
        assert_eq!(validate_cube(&p, &bad).status, Status::Invalid);
    }

    #[test]
    fn all_units_square_half_valid() {
        let p = PicardPresentation::z_with_sign();
        let base = Cube::from_corners(&p, 2, &[e(1), e(1), e(1), e(1)]).unwrap();
        let mut valid = 0;
        for bits in 0..64u32 {
            let mut c = base.clone();
            for k in 0..6 {
                c.structure[k / 3][k % 3] = e(((bits >> k) & 1) as i64);
            }
            if validate_cube(&p, &c).is_valid() {
                valid += 1;
            }
        }
        assert_eq!(valid, 32);
        assert_eq!(validate_cube(&p, &base).status, Status::Invalid);
    }

    #[test]
    fn faces_and_degeneracies_of_low_cubes() {
        let p = PicardPresentation::discrete("Z/5".parse().unwrap());
        let c = Cube::one(e(1), e(3), e(2), Elem(vec![]));
        assert_eq!(face(&c, 0, 0).unwrap().vertices, vec![e(3)]);
        let x = Cube::point(e(4));
        assert_eq!(degeneracy(&p, &x, 0, 1).unwrap().vertices, vec![e(4), e(4), e(0)]);
        assert_eq!(degeneracy(&p, &x, 0, -1).unwrap().vertices, vec![e(0), e(4), e(4)]);
    }

    #[test]
    fn top_face_of_drawn_square() {
        // rows from top: b p a / s z r / d q c, coordinates (a_1, a_2)
        let p = PicardPresentation::discrete(crate::algebra::FgAbelianGroup::integers());
        let [a, b, c, d] = [e(1), e(10), e(100), e(1000)];
        let s = Cube::from_corners(&p, 2, &[d.clone(), b.clone(), c.clone(), a.clone()]).unwrap();
        let top = face(&s, 1, 1).unwrap();
        assert_eq!(top.vertices, vec![b.clone(), e(11), a.clone()]);
    }

    #[test]
    fn relations_discrete_z2_exhaustive() {
        let p = PicardPresentation::discrete("Z/2".parse().unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = check_cubical_relations(&p, 1 << 10, &mut rng).unwrap();
        assert_eq!(r.status, Status::Valid, "{r}");
    }

    #[test]
    fn relations_with_sign_sampled() {
        let p = PicardPresentation::z2_with_sign();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = check_cubical_relations(&p, 40, &mut rng).unwrap();
        assert_eq!(r.status, Status::Valid, "{r}");
    }

    #[test]
    fn enumeration_counts_and_validity() {
        let p = PicardPresentation::z2_with_sign();
        assert_eq!(cube_count(&p, 1), Some(8));
        assert_eq!(cube_count(&p, 2), Some(512));
        let all = enumerate_all_cubes(&p, 2, 1000).unwrap();
        assert_eq!(all.len(), 512);
        assert!(all.iter().all(|c| validate_cube(&p, c).is_valid()));
        let distinct: std::collections::BTreeSet<_> = all.iter().map(|c| format!("{c:?}")).collect();
        assert_eq!(distinct.len(), 512);
    }

    #[test]
    fn sums_validate_and_faces_add() {
        let p = PicardPresentation::z_with_sign();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let s = random_cube(&p, 2, &mut rng, 3);
            let t = random_cube(&p, 2, &mut rng, 3);
            let u = add_cubes(&p, &s, &t).unwrap();
            assert!(validate_cube(&p, &u).is_valid());
            assert_eq!(add_cubes(&p, &s, &Cube::zero(&p, 2)).unwrap().reduced(&p), s.reduced(&p));
            for j in 0..2 {
                assert!(face_additivity_check(&p, &s, j).unwrap().is_valid());
            }
        }
    }

    #[test]
    fn higher_coherence_holds_and_can_fail() {
        let p = PicardPresentation::z_with_sign();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2, 3, 4] {
            let s = random_cube(&p, n, &mut rng, 2);
            let r = check_higher_coherence(&p, &s).unwrap();
            assert_eq!(r.status, Status::Valid, "{r}");
        }
        let mut s = random_cube(&p, 3, &mut rng, 2);
        s.structure[0][4] = p.b().add(&s.structure[0][4], &e(1));
        assert!(!validate_cube(&p, &s).is_valid());
        assert_eq!(check_higher_coherence(&p, &s).unwrap().status, Status::Invalid);
    }
}
