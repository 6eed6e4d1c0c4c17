//! Skeletal Picard groupoids.
//!
//! Objects are elements of `A = π₀`, every object has automorphism group
//! `B = π₁`, composition and monoidal sum of morphisms are addition in `B`,
//! and the monoidal structure is strictly associative and unital. The
//! symmetry `c_{x,y}` is a biadditive antisymmetric pairing `A × A → B`
//! stored on generators.
//!
//! Every diagram of such a groupoid commutes iff the `B`-sums along its two
//! boundary paths agree, which is how all validators downstream evaluate
//! coherence conditions.

mod functor;

pub use functor::{check_multiexact_picard_functor, CellFn, PicardFunctorData};

use serde::{Deserialize, Serialize};

use crate::algebra::{Elem, FgAbelianGroup};
use crate::error::{Error, Result};
use crate::report::{Report, ReportItem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardPresentation {
    pub pi0: FgAbelianGroup,
    pub pi1: FgAbelianGroup,
    /// `symmetry[i][j] = c(e_i, e_j)` for generators of `π₀`.
    pub symmetry: Vec<Vec<Elem>>,
}

impl PicardPresentation {
    pub fn new(pi0: FgAbelianGroup, pi1: FgAbelianGroup, symmetry: Vec<Vec<Elem>>) -> Result<Self> {
        let n = pi0.ngens();
        if symmetry.len() != n || symmetry.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(format!("symmetry table must be {n}x{n}")));
        }
        for row in &symmetry {
            for e in row {
                if e.len() != pi1.ngens() {
                    return Err(Error::DimensionMismatch(format!(
                        "symmetry entry {e} does not live in {pi1}"
                    )));
                }
            }
        }
        let symmetry = symmetry.into_iter().map(|row| row.into_iter().map(|e| pi1.reduce(e)).collect()).collect();
        Ok(Self { pi0, pi1, symmetry })
    }

    /// Discrete groupoid on `A` (`π₁ = 0`).
    pub fn discrete(pi0: FgAbelianGroup) -> Self {
        let n = pi0.ngens();
        Self { pi0, pi1: FgAbelianGroup::trivial(), symmetry: vec![vec![Elem(vec![]); n]; n] }
    }

    /// Cyclic `π₀ = Z/m` (or `Z` for `m = 0`), cyclic `π₁ = Z/k`, and
    /// `c(e, e) = s`.
    pub fn cyclic(m: u64, k: u64, s: i64) -> Result<Self> {
        let pi0 = FgAbelianGroup::cyclic(m);
        let pi1 = FgAbelianGroup::cyclic(k);
        let entry = pi1.reduce(Elem(if pi1.ngens() == 0 { vec![] } else { vec![s] }));
        let table = vec![vec![entry; pi0.ngens()]; pi0.ngens()];
        Self::new(pi0, pi1, table)
    }

    /// `(Z, Z/2, c(x,y) = xy mod 2)`, the smallest model with nontrivial
    /// `k`-invariant; the natural target of Euler-type determinants.
    pub fn z_with_sign() -> Self {
        Self::cyclic(0, 2, 1).expect("static presentation")
    }

    /// `(Z/2, Z/2, c(x,y) = xy)`.
    pub fn z2_with_sign() -> Self {
        Self::cyclic(2, 2, 1).expect("static presentation")
    }

    pub fn a(&self) -> &FgAbelianGroup {
        &self.pi0
    }

    pub fn b(&self) -> &FgAbelianGroup {
        &self.pi1
    }

    pub fn is_finite(&self) -> bool {
        self.pi0.is_finite() && self.pi1.is_finite()
    }

    pub fn is_discrete(&self) -> bool {
        self.pi1.is_trivial()
    }

    /// Biadditive extension of the symmetry to all of `A × A`.
    pub fn symmetry(&self, x: &Elem, y: &Elem) -> Elem {
        let b = &self.pi1;
        let mut acc = b.zero();
        for (i, &xi) in x.0.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.0.iter().enumerate() {
                if yj != 0 {
                    acc = b.add(&acc, &b.scale(xi * yj, &self.symmetry[i][j]));
                }
            }
        }
        acc
    }

    /// `λ_{a,b,c,d} : (a+b)+(c+d) → (a+c)+(b+d)`. With strict associativity
    /// the composite reduces to the middle swap `c_{b,c}`.
    pub fn commutassoc(&self, _a: &Elem, b: &Elem, c: &Elem, _d: &Elem) -> Elem {
        self.symmetry(b, c)
    }

    /// `a ↦ c_{a,a}`, an element of order dividing 2.
    pub fn k_invariant(&self, a: &Elem) -> Elem {
        self.symmetry(a, a)
    }

    pub fn validate(&self) -> Report {
        validate_picard(self)
    }
}

/// Checks antisymmetry `c(e_i,e_j) + c(e_j,e_i) = 0` and order compatibility
/// `d_i·c(e_i,e_j) = d_j·c(e_i,e_j) = 0` on generators.
pub fn validate_picard(p: &PicardPresentation) -> Report {
    let mut report = Report::new("validate-picard");
    let a = &p.pi0;
    let b = &p.pi1;
    let n = a.ngens();
    let mut anti = 0;
    let mut order = 0;
    for i in 0..n {
        for j in 0..n {
            let cij = &p.symmetry[i][j];
            if !b.contains(cij) {
                report.push(ReportItem::fail("symmetry-entry", format!("c(e{i},e{j})"), format!("{cij} is not reduced in {b}")));
            }
            if i <= j {
                anti += 1;
                let s = b.add(cij, &p.symmetry[j][i]);
                if !b.is_zero(&s) {
                    report.push(ReportItem::fail(
                        "antisymmetry",
                        format!("c(e{i},e{j})"),
                        format!("c(e{i},e{j}) + c(e{j},e{i}) = {s} ≠ 0"),
                    ));
                }
            }
            order += 1;
            for (k, d) in [(i, a.generator_order(i)), (j, a.generator_order(j))] {
                let t = b.scale(d as i64, cij);
                if d > 0 && !b.is_zero(&t) {
                    report.push(ReportItem::fail(
                        "order-compatibility",
                        format!("c(e{i},e{j})"),
                        format!("{d}·c(e{i},e{j}) = {t} ≠ 0 (order of e{k})"),
                    ));
                }
            }
        }
    }
    report.push(ReportItem::pass("antisymmetry", "generators", format!("{anti} cells")));
    report.push(ReportItem::pass("order-compatibility", "generators", format!("{order} cells")));
    report.finish()
}

/// Evaluates both sides of the eight-input interchange coherence for `λ`
/// (the diagram obtained by decomposing the centre of a 3-cube) and returns
/// `(left path, right path)`.
pub fn interchange_paths(p: &PicardPresentation, v: &[Elem; 8]) -> (Elem, Elem) {
    let [a1, a2, b1, b2, c1, c2, d1, d2] = v;
    let a = &p.pi0;
    let b = &p.pi1;
    let s = |x: &Elem, y: &Elem| a.add(x, y);
    let lam = |w: &Elem, x: &Elem, y: &Elem, z: &Elem| p.commutassoc(w, x, y, z);
    let right = b.sum(&[
        lam(&s(a1, a2), &s(b1, b2), &s(c1, c2), &s(d1, d2)),
        lam(a1, a2, c1, c2),
        lam(b1, b2, d1, d2),
        lam(&s(a1, c1), &s(a2, c2), &s(b1, d1), &s(b2, d2)),
    ]);
    let left = b.sum(&[
        lam(a1, a2, b1, b2),
        lam(c1, c2, d1, d2),
        lam(&s(a1, b1), &s(a2, b2), &s(c1, d1), &s(c2, d2)),
        lam(a1, b1, c1, d1),
        lam(a2, b2, c2, d2),
    ]);
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn validate_examples() {
        let discrete = PicardPresentation::discrete("Z/2".parse().unwrap());
        assert_eq!(validate_picard(&discrete).status, Status::Valid);
        assert_eq!(validate_picard(&PicardPresentation::z_with_sign()).status, Status::Valid);
        let bad = PicardPresentation::cyclic(2, 3, 1).unwrap();
        let r = validate_picard(&bad);
        assert_eq!(r.status, Status::Invalid);
        assert!(r.failures().any(|i| i.check == "antisymmetry"));
    }

    #[test]
    fn order_violation_is_reported() {
        // Z/3 with c(e,e) = 1 in Z/2: antisymmetric but 3·1 ≠ 0
        let p = PicardPresentation::cyclic(3, 2, 1).unwrap();
        let r = validate_picard(&p);
        assert!(r.failures().any(|i| i.check == "order-compatibility"));
        assert!(!r.failures().any(|i| i.check == "antisymmetry"));
    }

    #[test]
    fn commutassoc_examples() {
        let p = PicardPresentation::z_with_sign();
        let e = |k: i64| Elem(vec![k]);
        assert_eq!(p.commutassoc(&e(0), &e(1), &e(1), &e(0)), Elem(vec![1]));
        assert_eq!(p.commutassoc(&e(3), &e(0), &e(5), &e(7)), Elem(vec![0]));
        assert_eq!(p.commutassoc(&e(3), &e(5), &e(0), &e(7)), Elem(vec![0]));
        let d = PicardPresentation::discrete("Z/4".parse().unwrap());
        assert!(d.commutassoc(&Elem(vec![1]), &Elem(vec![2]), &Elem(vec![3]), &Elem(vec![1])).is_empty());
    }

    #[test]
    fn k_invariant_examples() {
        let p = PicardPresentation::z_with_sign();
        assert_eq!(p.k_invariant(&Elem(vec![0])), Elem(vec![0]));
        assert_eq!(p.k_invariant(&Elem(vec![1])), Elem(vec![1]));
        assert_eq!(p.k_invariant(&Elem(vec![2])), Elem(vec![0]));
    }

    #[test]
    fn interchange_coherence_small_groups() {
        let p = PicardPresentation::z2_with_sign();
        let els = p.pi0.elements().unwrap();
        let b = p.b();
        for bits in 0u32..256 {
            let v: [Elem; 8] = std::array::from_fn(|k| els[((bits >> k) & 1) as usize].clone());
            let (l, r) = interchange_paths(&p, &v);
            assert!(b.is_zero(&b.sub(&l, &r)));
        }
    }
}
