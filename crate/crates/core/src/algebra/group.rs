//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of a [`FgAbelianGroup`], stored as reduced generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub Vec<i64>);

impl Elem {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` given by its list of factors, `0` meaning `Z`.
///
/// The factor list is kept exactly as supplied (no factor may be 1); use
/// [`FgAbelianGroup::canonical`] to compare groups up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    invariant_factors: Vec<u64>,
}

impl FgAbelianGroup {
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        if invariant_factors.contains(&1) {
            return Err(Error::InvalidGroup("invariant factor 1 is not allowed".into()));
        }
        Ok(Self { invariant_factors })
    }

    pub fn trivial() -> Self {
        Self { invariant_factors: vec![] }
    }

    pub fn integers() -> Self {
        Self { invariant_factors: vec![0] }
    }

    /// `Z/n`; `n == 1` gives the trivial group and `n == 0` gives `Z`.
    pub fn cyclic(n: u64) -> Self {
        if n == 1 {
            Self::trivial()
        } else {
            Self { invariant_factors: vec![n] }
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut f = self.invariant_factors.clone();
        f.extend_from_slice(&other.invariant_factors);
        Self { invariant_factors: f }
    }

    pub fn factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn ngens(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_finite(&self) -> bool {
        !self.invariant_factors.contains(&0)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Number of elements, `None` for infinite groups or on overflow.
    pub fn order(&self) -> Option<u64> {
        self.invariant_factors
            .iter()
            .try_fold(1u64, |acc, &d| if d == 0 { None } else { acc.checked_mul(d) })
    }

    /// Isomorphism-invariant form: torsion factors `d_1 | d_2 | ...` followed by
    /// one zero per free summand.
    pub fn canonical(&self) -> Self {
        let free = self.invariant_factors.iter().filter(|&&d| d == 0).count();
        // collect prime powers, then recombine into a divisibility chain
        let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &d in self.invariant_factors.iter().filter(|&&d| d > 1) {
            let mut n = d;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    let mut q = 1;
                    while n % p == 0 {
                        n /= p;
                        q *= p;
                    }
                    by_prime.entry(p).or_default().push(q);
                }
                p += 1;
            }
            if n > 1 {
                by_prime.entry(n).or_default().push(n);
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut chain = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable();
            let offset = len - powers.len();
            for (i, q) in powers.iter().enumerate() {
                chain[offset + i] *= q;
            }
        }
        let mut factors: Vec<u64> = chain.into_iter().filter(|&d| d > 1).collect();
        factors.extend(std::iter::repeat_n(0, free));
        Self { invariant_factors: factors }
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn zero(&self) -> Elem {
        Elem(vec![0; self.ngens()])
    }

    pub fn generator(&self, i: usize) -> Elem {
        let mut v = vec![0; self.ngens()];
        v[i] = 1;
        self.reduce(Elem(v))
    }

    pub fn reduce(&self, mut e: Elem) -> Elem {
        for (c, &d) in e.0.iter_mut().zip(&self.invariant_factors) {
            if d > 0 {
                *c = c.rem_euclid(d as i64);
            }
        }
        e
    }

    pub fn element(&self, coords: Vec<i64>) -> Result<Elem> {
        if coords.len() != self.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, group {} has {} generators",
                coords.len(),
                self,
                self.ngens()
            )));
        }
        Ok(self.reduce(Elem(coords)))
    }

    pub fn contains(&self, e: &Elem) -> bool {
        e.len() == self.ngens()
            && e.0
                .iter()
                .zip(&self.invariant_factors)
                .all(|(&c, &d)| d == 0 || (0..d as i64).contains(&c))
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(Elem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(Elem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect()))
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        self.reduce(Elem(a.0.iter().map(|x| -x).collect()))
    }

    pub fn scale(&self, k: i64, a: &Elem) -> Elem {
        self.reduce(Elem(a.0.iter().map(|x| k * x).collect()))
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Elem>) -> Elem {
        items.into_iter().fold(self.zero(), |acc, e| self.add(&acc, e))
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        self.reduce(a.clone()).0.iter().all(|&c| c == 0)
    }

    /// Order of the `i`-th generator (`0` for infinite order).
    pub fn generator_order(&self, i: usize) -> u64 {
        self.invariant_factors[i]
    }

    /// All elements in lexicographic coordinate order; `None` for infinite groups.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Elem(vec![])];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..d as i64).map(move |c| {
                        let mut v = e.0.clone();
                        v.push(c);
                        Elem(v)
                    })
                })
                .collect();
        }
        Some(out)
    }

    /// Uniform on finite factors, uniform in `[-bound, bound]` on free ones.
    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Elem {
        Elem(
            self.invariant_factors
                .iter()
                .map(|&d| if d == 0 { rng.gen_range(-bound..=bound) } else { rng.gen_range(0..d as i64) })
                .collect(),
        )
    }

    /// Position of a reduced element in [`Self::elements`] order.
    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        let mut idx = 0usize;
        for (&c, &d) in e.0.iter().zip(&self.invariant_factors) {
            if d == 0 {
                return None;
            }
            idx = idx * d as usize + c as usize;
        }
        Some(idx)
    }

    /// Elements with every coordinate bounded by `bound` in absolute value
    /// (full residue range for finite factors).
    pub fn bounded_elements(&self, bound: i64) -> Vec<Elem> {
        let mut out = vec![Elem(vec![])];
        for &d in &self.invariant_factors {
            let range: Vec<i64> = if d == 0 { (-bound..=bound).collect() } else { (0..d as i64).collect() };
            out = out
                .into_iter()
                .flat_map(|e| {
                    range.iter().map(move |&c| {
                        let mut v = e.0.clone();
                        v.push(c);
                        Elem(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        for (i, &d) in self.invariant_factors.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if d == 0 {
                write!(f, "Z")?;
            } else {
                write!(f, "Z/{d}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FgAbelianGroup {
    type Err = Error;

    /// Parses `0`, `Z`, `Z/4`, `Z/2+Z/2`, `Z/2xZ` and similar.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Self::trivial());
        }
        let mut factors = vec![];
        for part in s.split(['+', 'x', ',']) {
            let part = part.trim();
            if part == "Z" {
                factors.push(0);
            } else if let Some(n) = part.strip_prefix("Z/") {
                let n: u64 = n
                    .parse()
                    .map_err(|_| Error::InvalidGroup(format!("cannot parse factor `{part}`")))?;
                if n == 0 {
                    factors.push(0);
                } else if n > 1 {
                    factors.push(n);
                }
            } else {
                return Err(Error::InvalidGroup(format!("cannot parse factor `{part}`")));
            }
        }
        Self::new(factors)
    }
}

/// Outcome of checking that a coordinate matrix defines a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCheck {
    /// Source generators whose order is not respected by their image.
    pub violations: Vec<usize>,
}

impl HomCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `images[i]` (the image of source generator `i`) is killed by
/// the order of that generator.
pub fn group_hom_check(images: &[Elem], src: &FgAbelianGroup, dst: &FgAbelianGroup) -> Result<HomCheck> {
    if images.len() != src.ngens() {
        return Err(Error::DimensionMismatch(format!(
            "{} images supplied for {} source generators",
            images.len(),
            src.ngens()
        )));
    }
    let mut violations = vec![];
    for (i, img) in images.iter().enumerate() {
        if img.len() != dst.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "image of generator {i} has {} coordinates, target has {}",
                img.len(),
                dst.ngens()
            )));
        }
        let d = src.generator_order(i) as i64;
        if !dst.is_zero(&dst.scale(d, img)) {
            violations.push(i);
        }
    }
    Ok(HomCheck { violations })
}

/// Group homomorphism given by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    pub src: FgAbelianGroup,
    pub dst: FgAbelianGroup,
    pub images: Vec<Elem>,
}

impl GroupHom {
    pub fn new(src: FgAbelianGroup, dst: FgAbelianGroup, images: Vec<Elem>) -> Result<Self> {
        let check = group_hom_check(&images, &src, &dst)?;
        if !check.is_valid() {
            return Err(Error::InvalidGroup(format!(
                "generator orders not respected at {:?}",
                check.violations
            )));
        }
        let images = images.into_iter().map(|e| dst.reduce(e)).collect();
        Ok(Self { src, dst, images })
    }

    pub fn identity(g: &FgAbelianGroup) -> Self {
        Self { src: g.clone(), dst: g.clone(), images: (0..g.ngens()).map(|i| g.generator(i)).collect() }
    }

    pub fn apply(&self, e: &Elem) -> Elem {
        let mut acc = self.dst.zero();
        for (&k, img) in e.0.iter().zip(&self.images) {
            acc = self.dst.add(&acc, &self.dst.scale(k, img));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn factor_one_is_rejected() {
        assert!(FgAbelianGroup::new(vec![2, 1]).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(g("Z/2+Z").factors(), &[2, 0]);
        assert_eq!(g("0").ngens(), 0);
        assert_eq!(g("Z/2+Z/2").to_string(), "Z/2+Z/2");
    }

    #[test]
    fn canonical_form_merges_coprime_factors() {
        assert_eq!(g("Z/2+Z/3").canonical().factors(), &[6]);
        assert_eq!(g("Z/4+Z/2+Z").canonical().factors(), &[2, 4, 0]);
        assert!(g("Z/6").is_isomorphic(&g("Z/3+Z/2")));
        assert!(!g("Z/4").is_isomorphic(&g("Z/2+Z/2")));
    }

    #[test]
    fn reduction_and_arithmetic() {
        let z2z = g("Z/2+Z");
        let a = z2z.element(vec![3, -4]).unwrap();
        assert_eq!(a, Elem(vec![1, -4]));
        assert!(z2z.is_zero(&z2z.add(&a, &z2z.neg(&a))));
        assert_eq!(g("Z/3").elements().unwrap().len(), 3);
        assert!(g("Z").elements().is_none());
    }

    #[test]
    fn hom_check_examples() {
        let z2 = g("Z/2");
        let z4 = g("Z/4");
        let z = g("Z");
        assert!(group_hom_check(&[Elem(vec![1])], &z2, &z2).unwrap().is_valid());
        assert!(!group_hom_check(&[Elem(vec![1])], &z2, &z).unwrap().is_valid());
        assert!(group_hom_check(&[Elem(vec![1])], &z4, &z2).unwrap().is_valid());
        assert!(matches!(
            group_hom_check(&[], &z2, &z2),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
