//! Multiexact functors between skeletal Picard groupoids.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::PicardPresentation;
use crate::algebra::{Elem, FgAbelianGroup};
use crate::error::{Error, Result};
use crate::report::{Report, ReportItem};

/// Monoidal structure cell `μ_k(x; y, y′) : F(…,y,…) + F(…,y′,…) → F(…,y+y′,…)`
/// for slot `k`. The first argument is the full object tuple; its entry at
/// slot `k` is ignored.
#[derive(Clone)]
pub struct CellFn(Arc<dyn Fn(&[Elem], &Elem, &Elem) -> Elem + Send + Sync>);

impl CellFn {
    pub fn new(f: impl Fn(&[Elem], &Elem, &Elem) -> Elem + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn zero(target_b: &FgAbelianGroup) -> Self {
        let z = target_b.zero();
        Self::new(move |_, _, _| z.clone())
    }

    /// Finite lookup table keyed by `(tuple with slot entry blanked, y, y′)`;
    /// missing keys evaluate to zero.
    pub fn table(slot: usize, target_b: &FgAbelianGroup, entries: BTreeMap<(Vec<Elem>, Elem, Elem), Elem>) -> Self {
        let z = target_b.zero();
        Self::new(move |at, y, y2| {
            let mut key = at.to_vec();
            if let Some(k) = key.get_mut(slot) {
                *k = Elem(vec![]);
            }
            entries.get(&(key, y.clone(), y2.clone())).cloned().unwrap_or_else(|| z.clone())
        })
    }

    pub fn eval(&self, at: &[Elem], y: &Elem, y2: &Elem) -> Elem {
        (self.0)(at, y, y2)
    }
}

impl fmt::Debug for CellFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CellFn(..)")
    }
}

/// `F : P_1 × … × P_n → Q`, multiadditive on objects.
#[derive(Clone, Debug)]
pub struct PicardFunctorData {
    pub sources: Vec<PicardPresentation>,
    pub target: PicardPresentation,
    /// Value on each tuple of source generators (one generator index per slot).
    pub objects: BTreeMap<Vec<usize>, Elem>,
    /// `morphisms[k]`: value of `F` on the `j`-th generator of `π₁(P_k)` with
    /// the other slots at the given generator tuple (slot `k` entry unused, set to 0).
    pub morphisms: Vec<BTreeMap<(Vec<usize>, usize), Elem>>,
    pub cells: Vec<CellFn>,
}

impl PicardFunctorData {
    pub fn arity(&self) -> usize {
        self.sources.len()
    }

    /// Multiadditive extension of the object table.
    pub fn apply(&self, xs: &[Elem]) -> Elem {
        let a = self.target.a();
        let mut acc = a.zero();
        for (gens, value) in &self.objects {
            let coeff: i64 = gens.iter().zip(xs).map(|(&g, x)| x.0[g]).product();
            if coeff != 0 {
                acc = a.add(&acc, &a.scale(coeff, value));
            }
        }
        acc
    }

    /// `F` on an automorphism `m ∈ π₁(P_slot)` with the other slots at `xs`.
    pub fn apply_morphism(&self, slot: usize, xs: &[Elem], m: &Elem) -> Elem {
        let b = self.target.b();
        let mut acc = b.zero();
        for ((gens, j), value) in &self.morphisms[slot] {
            let coeff: i64 = gens
                .iter()
                .zip(xs)
                .enumerate()
                .filter(|(k, _)| *k != slot)
                .map(|(_, (&g, x))| x.0[g])
                .product::<i64>()
                * m.0[*j];
            if coeff != 0 {
                acc = b.add(&acc, &b.scale(coeff, value));
            }
        }
        acc
    }

    pub fn identity(p: &PicardPresentation) -> Self {
        let objects = (0..p.a().ngens()).map(|i| (vec![i], p.a().generator(i))).collect();
        let morphisms = vec![(0..p.b().ngens()).map(|j| ((vec![0], j), p.b().generator(j))).collect()];
        Self { sources: vec![p.clone()], target: p.clone(), objects, morphisms, cells: vec![CellFn::zero(p.b())] }
    }

    /// The monoidal sum `P × P → P` as a functor out of the product groupoid,
    /// with structure cells given by `λ`.
    pub fn addition(p: &PicardPresentation) -> Self {
        let prod = p.product(p);
        let n = p.a().ngens();
        let m = p.b().ngens();
        let objects = (0..2 * n).map(|i| (vec![i], p.a().generator(i % n))).collect();
        let morphisms = vec![(0..2 * m).map(|j| ((vec![0], j), p.b().generator(j % m))).collect()];
        let q = p.clone();
        let cell = CellFn::new(move |_, u, v| {
            let (a, b) = split(&u.0, n);
            let (c, d) = split(&v.0, n);
            q.commutassoc(&a, &b, &c, &d)
        });
        Self { sources: vec![prod], target: p.clone(), objects, morphisms, cells: vec![cell] }
    }

    /// Integer multiplication `(x, y) ↦ xy` on `(Z, Z/2, xy)`.
    ///
    /// `λ` contributes `c(ad, bc) = abcd mod 2` to the biexactness square,
    /// absorbed by the first-slot cell `μ_1(y; x, x′) = xx′·y(y−1)/2 mod 2`.
    pub fn integer_product() -> Self {
        let p = PicardPresentation::z_with_sign();
        let b = p.b().clone();
        let objects = [(vec![0, 0], Elem(vec![1]))].into_iter().collect();
        let morphisms = vec![
            [((vec![0, 0], 0), Elem(vec![1]))].into_iter().collect(),
            [((vec![0, 0], 0), Elem(vec![1]))].into_iter().collect(),
        ];
        let b2 = b.clone();
        let first = CellFn::new(move |at, x, x2| {
            let y = at[1].0[0];
            b2.reduce(Elem(vec![x.0[0] * x2.0[0] * (y * (y - 1) / 2)]))
        });
        let second = CellFn::zero(&b);
        Self { sources: vec![p.clone(), p.clone()], target: p, objects, morphisms, cells: vec![first, second] }
    }

    pub fn validate_shape(&self) -> Result<()> {
        let n = self.arity();
        if self.morphisms.len() != n || self.cells.len() != n {
            return Err(Error::DimensionMismatch(format!("functor of arity {n} needs {n} morphism tables and cell maps")));
        }
        for (gens, v) in &self.objects {
            if gens.len() != n || gens.iter().zip(&self.sources).any(|(&g, s)| g >= s.a().ngens()) {
                return Err(Error::DimensionMismatch(format!("object table key {gens:?} out of range")));
            }
            if v.len() != self.target.a().ngens() {
                return Err(Error::DimensionMismatch(format!("object table value {v} not in target π₀")));
            }
        }
        for (k, table) in self.morphisms.iter().enumerate() {
            for ((gens, j), v) in table {
                if gens.len() != n || *j >= self.sources[k].b().ngens() || v.len() != self.target.b().ngens() {
                    return Err(Error::DimensionMismatch(format!("morphism table entry ({gens:?}, {j}) in slot {k} malformed")));
                }
            }
        }
        Ok(())
    }
}

fn split(v: &[i64], n: usize) -> (Elem, Elem) {
    (Elem(v[..n].to_vec()), Elem(v[n..].to_vec()))
}

impl PicardPresentation {
    /// Product groupoid: `π₀`, `π₁` direct sums, block-diagonal symmetry.
    pub fn product(&self, other: &Self) -> Self {
        let n1 = self.a().ngens();
        let n2 = other.a().ngens();
        let b = self.b().direct_sum(other.b());
        let m1 = self.b().ngens();
        let m2 = other.b().ngens();
        let mut table = vec![vec![b.zero(); n1 + n2]; n1 + n2];
        for i in 0..n1 {
            for j in 0..n1 {
                let mut v = self.symmetry[i][j].0.clone();
                v.extend(std::iter::repeat_n(0, m2));
                table[i][j] = Elem(v);
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                let mut v = vec![0; m1];
                v.extend_from_slice(&other.symmetry[i][j].0);
                table[n1 + i][n1 + j] = Elem(v);
            }
        }
        Self::new(self.a().direct_sum(other.a()), b, table).expect("product of valid presentations")
    }
}

/// Elements to quantify over: all of a finite group, or a bounded sample.
fn domain(g: &FgAbelianGroup, sample_bound: Option<i64>, what: &str) -> Result<Vec<Elem>> {
    match g.elements() {
        Some(e) => Ok(e),
        None => match sample_bound {
            Some(bound) => Ok(g.bounded_elements(bound)),
            None => Err(Error::InfiniteDomainWithoutSampleBudget(format!("{what} = {g} is infinite"))),
        },
    }
}

fn tuples(domains: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut out = vec![vec![]];
    for d in domains {
        out = out
            .into_iter()
            .flat_map(|t| {
                d.iter().map(move |e| {
                    let mut t = t.clone();
                    t.push(e.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Checks well-definedness on generators, per-slot monoidal coherence
/// (associativity, unit and symmetry of the cells) and, for every pair of
/// slots, the biexactness square involving `λ` of the target.
///
/// Infinite source groups are sampled over coordinates in
/// `[-sample_bound, sample_bound]`.
pub fn check_multiexact_picard_functor(f: &PicardFunctorData, sample_bound: Option<i64>) -> Result<Report> {
    f.validate_shape()?;
    let mut report = Report::new("check-multiexact");
    let tgt = &f.target;
    let ta = tgt.a();
    let tb = tgt.b();
    let n = f.arity();

    // well-definedness: d_i · F(..., e_i, ...) = 0
    for (gens, v) in &f.objects {
        for (k, &g) in gens.iter().enumerate() {
            let d = f.sources[k].a().generator_order(g) as i64;
            if d > 0 && !ta.is_zero(&ta.scale(d, v)) {
                report.push(ReportItem::fail("well-defined", format!("objects{gens:?}"), format!("order {d} of slot-{k} generator not respected")));
            }
        }
    }

    let domains: Vec<Vec<Elem>> = f
        .sources
        .iter()
        .enumerate()
        .map(|(k, s)| domain(s.a(), sample_bound, &format!("π₀ of source {k}")))
        .collect::<Result<_>>()?;

    let mut cells = 0usize;
    for k in 0..n {
        let others: Vec<Vec<Elem>> = (0..n)
            .map(|l| if l == k { vec![f.sources[k].a().zero()] } else { domains[l].clone() })
            .collect();
        let sa = f.sources[k].a();
        for base in tuples(&others) {
            let with = |y: &Elem| {
                let mut t = base.clone();
                t[k] = y.clone();
                t
            };
            let mu = |y: &Elem, y2: &Elem| f.cells[k].eval(&base, y, y2);
            let zero = sa.zero();
            for y in &domains[k] {
                for y2 in &domains[k] {
                    cells += 1;
                    // A-level additivity in slot k
                    let lhs = f.apply(&with(&sa.add(y, y2)));
                    let rhs = ta.add(&f.apply(&with(y)), &f.apply(&with(y2)));
                    if lhs != rhs {
                        report.push(ReportItem::fail("additivity", format!("slot {k} at {base:?} y={y} y′={y2}"), format!("{lhs} ≠ {rhs}")));
                    }
                    // symmetry: c(Fy, Fy′) + μ(y′, y) = μ(y, y′) + F(c(y, y′))
                    let l = tb.add(&tgt.symmetry(&f.apply(&with(y)), &f.apply(&with(y2))), &mu(y2, y));
                    let r = tb.add(&mu(y, y2), &f.apply_morphism(k, &base, &f.sources[k].symmetry(y, y2)));
                    if !tb.is_zero(&tb.sub(&l, &r)) {
                        report.push(ReportItem::fail("monoidal-symmetry", format!("slot {k} at {base:?} y={y} y′={y2}"), format!("{l} ≠ {r}")));
                    }
                    if y == &zero && !tb.is_zero(&mu(&zero, y2)) || y2 == &zero && !tb.is_zero(&mu(y, &zero)) {
                        report.push(ReportItem::fail("monoidal-unit", format!("slot {k} at {base:?} y={y} y′={y2}"), "cell at the unit is not the identity"));
                    }
                    for y3 in &domains[k] {
                        // μ(y,y′) + μ(y+y′,y″) = μ(y′,y″) + μ(y,y′+y″)
                        let l = tb.add(&mu(y, y2), &mu(&sa.add(y, y2), y3));
                        let r = tb.add(&mu(y2, y3), &mu(y, &sa.add(y2, y3)));
                        if !tb.is_zero(&tb.sub(&l, &r)) {
                            report.push(ReportItem::fail(
                                "monoidal-associativity",
                                format!("slot {k} at {base:?} y={y} y′={y2} y″={y3}"),
                                format!("{l} ≠ {r}"),
                            ));
                        }
                    }
                }
            }
        }
    }
    report.push(ReportItem::pass("monoidal-coherence", "all slots", format!("{cells} cell pairs")));

    let mut squares = 0usize;
    for k in 0..n {
        for l in k + 1..n {
            let others: Vec<Vec<Elem>> = (0..n)
                .map(|m| if m == k || m == l { vec![f.sources[m].a().zero()] } else { domains[m].clone() })
                .collect();
            for base in tuples(&others) {
                for a in &domains[k] {
                    for b in &domains[k] {
                        for c in &domains[l] {
                            for d in &domains[l] {
                                squares += 1;
                                if let Some(detail) = biexact_defect(f, k, l, &base, [a, b, c, d]) {
                                    report.push(ReportItem::fail(
                                        "biexact-square",
                                        format!("slots ({k},{l}) at {base:?} a={a} b={b} c={c} d={d}"),
                                        detail,
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    if n > 1 {
        report.push(ReportItem::pass("biexact-square", "all slot pairs", format!("{squares} squares")));
    }
    Ok(report.finish())
}

/// Path sums of the biexactness square for `F(a+b, c+d)`; `None` if they agree.
fn biexact_defect(f: &PicardFunctorData, k: usize, l: usize, base: &[Elem], [a, b, c, d]: [&Elem; 4]) -> Option<String> {
    let tgt = &f.target;
    let tb = tgt.b();
    let sa = f.sources[k].a();
    let sl = f.sources[l].a();
    let at = |x: &Elem, y: &Elem| {
        let mut t = base.to_vec();
        t[k] = x.clone();
        t[l] = y.clone();
        t
    };
    let mu_k = |y: &Elem, x1: &Elem, x2: &Elem| f.cells[k].eval(&at(&sa.zero(), y), x1, x2);
    let mu_l = |x: &Elem, y1: &Elem, y2: &Elem| f.cells[l].eval(&at(x, &sl.zero()), y1, y2);
    let lam = tgt.commutassoc(&f.apply(&at(a, c)), &f.apply(&at(a, d)), &f.apply(&at(b, c)), &f.apply(&at(b, d)));
    let top = tb.sum(&[
        tb.neg(&mu_k(&sl.add(c, d), a, b)),
        tb.neg(&mu_l(a, c, d)),
        tb.neg(&mu_l(b, c, d)),
        lam,
    ]);
    let bottom = tb.sum(&[tb.neg(&mu_l(&sa.add(a, b), c, d)), tb.neg(&mu_k(c, a, b)), tb.neg(&mu_k(d, a, b))]);
    if tb.is_zero(&tb.sub(&top, &bottom)) {
        None
    } else {
        Some(format!("top path {top} ≠ bottom path {bottom}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn identity_is_multiexact() {
        for p in [PicardPresentation::z2_with_sign(), PicardPresentation::discrete("Z/3".parse().unwrap())] {
            let r = check_multiexact_picard_functor(&PicardFunctorData::identity(&p), None).unwrap();
            assert_eq!(r.status, Status::Valid, "{r}");
        }
    }

    #[test]
    fn addition_with_lambda_cells_is_monoidal() {
        let p = PicardPresentation::z2_with_sign();
        let r = check_multiexact_picard_functor(&PicardFunctorData::addition(&p), None).unwrap();
        assert_eq!(r.status, Status::Valid, "{r}");
    }

    #[test]
    fn integer_product_needs_samples() {
        let f = PicardFunctorData::integer_product();
        assert!(matches!(check_multiexact_picard_functor(&f, None), Err(Error::InfiniteDomainWithoutSampleBudget(_))));
        let r = check_multiexact_picard_functor(&f, Some(3)).unwrap();
        assert_eq!(r.status, Status::Valid, "{r}");
    }

    #[test]
    fn product_with_zero_cells_fails_biexactness() {
        let mut f = PicardFunctorData::integer_product();
        f.cells[0] = CellFn::zero(f.target.b());
        let r = check_multiexact_picard_functor(&f, Some(1)).unwrap();
        assert_eq!(r.failed_checks().into_iter().collect::<Vec<_>>(), vec!["biexact-square".to_string()]);
    }
}
