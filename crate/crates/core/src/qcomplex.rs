//! The cubical `Q`-complex of a discrete Picard groupoid.
//!
//! Over a discrete base an `n`-cube is determined by its `2^n` corners, so
//! cubes are handled as corner tuples (lexicographic over `{-1,1}^n`, first
//! coordinate most significant). Corner entries are element indices of the
//! finite group `A`. A cube is degenerate when some direction has an all-zero
//! slice at `-1` or `1`; at level 0 the zero object `[0]` counts as degenerate.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use crate::algebra::{ChainComplexZ, Elem, FgAbelianGroup, GroupHom, IntMatrix};
use crate::cubes::{face, Cube};
use crate::error::{Error, Result};
use crate::picard::PicardPresentation;
use crate::report::{Report, ReportItem};

pub const DEFAULT_MAX_LEVEL: usize = 4;
/// Largest number of cubes enumerated at a single level by default.
pub const DEFAULT_CUBE_CAP: u64 = 1 << 17;

/// `∂_i^α` on a corner tuple of an `n`-cube, `i` 0-based.
pub fn corner_face<T: Clone>(corners: &[T], n: usize, i: usize, alpha: i8, add: impl Fn(&T, &T) -> T) -> Vec<T> {
    let bit = n - 1 - i;
    let low = (1usize << bit) - 1;
    (0..1usize << (n - 1))
        .map(|k| {
            // reinsert the removed coordinate at position `bit`
            let base = ((k & !low) << 1) | (k & low);
            let hi = base | (1 << bit);
            match alpha {
                -1 => corners[base].clone(),
                1 => corners[hi].clone(),
                _ => add(&corners[hi], &corners[base]),
            }
        })
        .collect()
}

/// `s^j_β` on a corner tuple of an `n`-cube, `j` 0-based in `0..=n`.
pub fn corner_degeneracy<T: Clone>(corners: &[T], n: usize, j: usize, beta: i8, zero: &T) -> Vec<T> {
    let m = n + 1;
    let bit = m - 1 - j;
    let low = (1usize << bit) - 1;
    (0..1usize << m)
        .map(|k| {
            let here = if (k >> bit) & 1 == 1 { 1 } else { -1 };
            if here == beta {
                zero.clone()
            } else {
                corners[((k >> 1) & !low) | (k & low)].clone()
            }
        })
        .collect()
}

/// Signed faces `(-1)^{i+α+1} ∂_i^α`, `i` counted from 1.
pub fn corner_boundary<T: Clone>(corners: &[T], n: usize, add: impl Fn(&T, &T) -> T + Copy) -> Vec<(i64, Vec<T>)> {
    let mut out = Vec::with_capacity(3 * n);
    for i in 0..n {
        for alpha in [-1i8, 0, 1] {
            let sign = if (i as i64 + 1 + alpha as i64 + 1).rem_euclid(2) == 0 { 1 } else { -1 };
            out.push((sign, corner_face(corners, n, i, alpha, add)));
        }
    }
    out
}

pub fn corner_is_degenerate<T: PartialEq>(corners: &[T], n: usize, zero: &T) -> bool {
    if n == 0 {
        return corners[0] == *zero;
    }
    (0..n).any(|i| {
        let bit = n - 1 - i;
        [0, 1].iter().any(|&side| (0..corners.len()).filter(|k| (k >> bit) & 1 == side).all(|k| corners[k] == *zero))
    })
}

/// Finite group with indexed elements and an addition table.
#[derive(Clone, Debug)]
pub struct DiscreteBase {
    pub group: FgAbelianGroup,
    pub elements: Vec<Elem>,
    table: Vec<Vec<u8>>,
}

impl DiscreteBase {
    pub fn new(group: FgAbelianGroup) -> Result<Self> {
        let elements = group
            .elements()
            .ok_or_else(|| Error::InvalidGroup(format!("{group} is infinite; the Q-complex needs a finite base")))?;
        if elements.len() > 255 {
            return Err(Error::ResourceLimit(format!("|{group}| = {} exceeds 255", elements.len())));
        }
        let table = elements
            .iter()
            .map(|x| elements.iter().map(|y| group.index_of(&group.add(x, y)).expect("finite") as u8).collect())
            .collect();
        Ok(Self { group, elements, table })
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn add(&self, x: &u8, y: &u8) -> u8 {
        self.table[*x as usize][*y as usize]
    }

    /// `|A|^{2^n}`, or `None` on overflow.
    pub fn count(&self, n: usize) -> Option<u64> {
        self.order().checked_pow(1u32.checked_shl(n as u32)?)
    }

    pub fn encode(&self, corners: &[u8]) -> u64 {
        corners.iter().fold(0u64, |acc, &c| acc * self.order() + c as u64)
    }

    pub fn decode(&self, n: usize, mut id: u64) -> Vec<u8> {
        let mut out = vec![0u8; 1 << n];
        for k in (0..out.len()).rev() {
            out[k] = (id % self.order()) as u8;
            id /= self.order();
        }
        out
    }

    pub fn is_degenerate(&self, corners: &[u8], n: usize) -> bool {
        corner_is_degenerate(corners, n, &0u8)
    }

    pub fn boundary(&self, corners: &[u8], n: usize) -> Vec<(i64, Vec<u8>)> {
        corner_boundary(corners, n, |x, y| self.add(x, y))
    }

    fn check_cap(&self, n: usize, cap: u64) -> Result<u64> {
        match self.count(n) {
            Some(c) if c <= cap => Ok(c),
            c => Err(Error::BudgetExceeded(format!(
                "level {n} over {} has {} cubes, cap is {cap}",
                self.group,
                c.map_or("more than 2^64".to_string(), |c| c.to_string())
            ))),
        }
    }
}

/// All `n`-cubes as corner tuples of group elements, in generator order.
pub fn enumerate_cubes(a: &FgAbelianGroup, n: usize, cap: u64) -> Result<Vec<Vec<Elem>>> {
    let base = DiscreteBase::new(a.clone())?;
    let count = base.check_cap(n, cap)?;
    Ok((0..count).map(|id| base.decode(n, id).iter().map(|&c| base.elements[c as usize].clone()).collect()).collect())
}

/// Generators and boundary matrices of the `Q′`-complex or its quotient by
/// degenerate cubes, levels `0..=max_level`.
#[derive(Clone, Debug)]
pub struct QComplex {
    pub base: DiscreteBase,
    pub quotient: bool,
    /// Cube ids per level, ascending.
    pub levels: Vec<Vec<u64>>,
    /// `boundaries[k-1] = ∂_k`.
    pub boundaries: Vec<IntMatrix>,
}

impl QComplex {
    pub fn build(a: &FgAbelianGroup, max_level: usize, cap: u64, quotient: bool) -> Result<Self> {
        let base = DiscreteBase::new(a.clone())?;
        let mut levels = vec![];
        for n in 0..=max_level {
            let count = base.check_cap(n, cap)?;
            levels.push((0..count).filter(|&id| !quotient || !base.is_degenerate(&base.decode(n, id), n)).collect::<Vec<_>>());
        }
        let mut boundaries = vec![];
        for n in 1..=max_level {
            boundaries.push(boundary_matrix_for(&base, &levels[n - 1], &levels[n], n, quotient)?);
        }
        Ok(Self { base, quotient, levels, boundaries })
    }

    pub fn boundary_matrix(&self, n: usize) -> Option<&IntMatrix> {
        n.checked_sub(1).and_then(|k| self.boundaries.get(k))
    }

    pub fn chain_complex(&self) -> Result<ChainComplexZ> {
        ChainComplexZ::new(self.levels.iter().map(Vec::len).collect(), self.boundaries.clone())
    }

    /// Checks `∂_{n-1} ∂_n = 0` as a matrix product for every level.
    pub fn check_square_zero(&self) -> Vec<(usize, bool)> {
        (2..self.levels.len())
            .map(|n| {
                let ok = self.boundaries[n - 2].mul(&self.boundaries[n - 1]).map(|m| m.is_zero()).unwrap_or(false);
                (n, ok)
            })
            .collect()
    }
}

fn boundary_matrix_for(base: &DiscreteBase, rows: &[u64], cols: &[u64], n: usize, quotient: bool) -> Result<IntMatrix> {
    let row_of: HashMap<u64, usize> = rows.iter().enumerate().map(|(k, &id)| (id, k)).collect();
    let mut triplets = vec![];
    for (c, &id) in cols.iter().enumerate() {
        for (sign, f) in base.boundary(&base.decode(n, id), n) {
            if quotient && base.is_degenerate(&f, n - 1) {
                continue;
            }
            let r = row_of[&base.encode(&f)];
            triplets.push((r, c, sign));
        }
    }
    IntMatrix::from_triplets(rows.len(), cols.len(), triplets)
}

/// `H_k` of the normalized `Q`-complex of `A`.
pub fn q_homology(a: &FgAbelianGroup, k: usize, cap: u64) -> Result<FgAbelianGroup> {
    let q = QComplex::build(a, k + 1, cap, true)?;
    q.chain_complex()?.homology_at(k)
}

/// Every degenerate `n`-cube, produced as `s^j_β` of an `(n-1)`-cube, has
/// boundary in the degenerate span: its non-degenerate faces cancel.
/// Returns the number of degenerate cubes checked and any offenders.
pub fn check_degenerate_span(base: &DiscreteBase, n: usize, cap: u64) -> Result<(u64, Vec<Vec<u8>>)> {
    if n == 0 {
        return Ok((1, vec![]));
    }
    let count = base.check_cap(n - 1, cap)?;
    let mut checked = 0;
    let mut bad = vec![];
    for id in 0..count {
        let t = base.decode(n - 1, id);
        for j in 0..n {
            for beta in [-1, 1] {
                let s = corner_degeneracy(&t, n - 1, j, beta, &0u8);
                checked += 1;
                let mut residue: HashMap<Vec<u8>, i64> = HashMap::new();
                for (sign, f) in base.boundary(&s, n) {
                    if !base.is_degenerate(&f, n - 1) {
                        *residue.entry(f).or_default() += sign;
                    }
                }
                if residue.values().any(|&v| v != 0) {
                    bad.push(s);
                }
            }
        }
    }
    Ok((checked, bad))
}

/// `∂∂` of a single cube as a formal sum of `(n-2)`-cubes; empty iff zero.
pub fn boundary_square<T: Clone + Ord>(corners: &[T], n: usize, add: impl Fn(&T, &T) -> T + Copy) -> BTreeMap<Vec<T>, i64> {
    let mut acc: BTreeMap<Vec<T>, i64> = BTreeMap::new();
    for (s1, f) in corner_boundary(corners, n, add) {
        for (s2, g) in corner_boundary(&f, n - 1, add) {
            *acc.entry(g).or_default() += s1 * s2;
        }
    }
    acc.retain(|_, v| *v != 0);
    acc
}

/// `∂∂` on the generic `n`-cube whose corners are the standard basis of
/// `Z^{2^n}`. Every cube over every `A` is the image of this one under the
/// homomorphism sending basis vectors to its corners, and faces commute with
/// such images, so an empty result proves `∂∂ = 0` at level `n` for all `A`.
pub fn generic_boundary_square(n: usize) -> BTreeMap<Vec<Vec<i64>>, i64> {
    let m = 1usize << n;
    let corners: Vec<Vec<i64>> = (0..m).map(|k| (0..m).map(|l| (k == l) as i64).collect()).collect();
    boundary_square(&corners, n, |x, y| x.iter().zip(y).map(|(a, b)| a + b).collect())
}

/// Samples `budget` `n`-cubes of `base` (all of them if fewer) and checks
/// `∂∂ = 0` cube by cube.
pub fn streaming_square_check<R: Rng + ?Sized>(base: &DiscreteBase, n: usize, budget: u64, rng: &mut R) -> (u64, Vec<Vec<u8>>, bool) {
    let total = base.count(n);
    let exhaustive = matches!(total, Some(t) if t <= budget);
    let mut bad = vec![];
    let mut checked = 0;
    let mut visit = |c: Vec<u8>| {
        checked += 1;
        if !boundary_square(&c, n, |x, y| base.add(x, y)).is_empty() {
            bad.push(c);
        }
    };
    if exhaustive {
        for id in 0..total.unwrap_or(0) {
            visit(base.decode(n, id));
        }
    } else {
        for _ in 0..budget {
            visit((0..1 << n).map(|_| rng.gen_range(0..base.order()) as u8).collect());
        }
    }
    (checked, bad, exhaustive)
}

/// A homomorphism `A → A′` acts on cubes cornerwise; checks that this commutes
/// with the normalized boundary on every generator up to `max_level`.
pub fn check_functoriality(hom: &GroupHom, max_level: usize, cap: u64) -> Result<Report> {
    let mut report = Report::new("q-functoriality");
    let src = QComplex::build(&hom.src, max_level, cap, true)?;
    let dst = DiscreteBase::new(hom.dst.clone())?;
    let image: Vec<u8> = src
        .base
        .elements
        .iter()
        .map(|e| dst.group.index_of(&hom.apply(e)).expect("finite target") as u8)
        .collect();
    let push = |c: &[u8]| -> Vec<u8> { c.iter().map(|&x| image[x as usize]).collect() };
    let normalized = |terms: Vec<(i64, Vec<u8>)>, base: &DiscreteBase, n: usize| {
        let mut acc: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
        for (s, c) in terms {
            if !base.is_degenerate(&c, n) {
                *acc.entry(c).or_default() += s;
            }
        }
        acc.retain(|_, v| *v != 0);
        acc
    };
    let mut checked = 0;
    for n in 1..=max_level {
        for &id in &src.levels[n] {
            checked += 1;
            let c = src.base.decode(n, id);
            let down_then_push = normalized(src.base.boundary(&c, n).into_iter().map(|(s, f)| (s, push(&f))).collect(), &dst, n - 1);
            let pc = push(&c);
            let push_then_down =
                if dst.is_degenerate(&pc, n) { BTreeMap::new() } else { normalized(dst.boundary(&pc, n), &dst, n - 1) };
            if down_then_push != push_then_down {
                report.push(ReportItem::fail("chain-map", format!("level {n} cube {c:?}"), "φ∂ ≠ ∂φ"));
            }
        }
    }
    report.push(ReportItem::pass("chain-map", format!("levels 1..={max_level}"), format!("{checked} generators")));
    Ok(report.finish())
}

/// `∂∂` on sampled cubes of a general finite presentation, computed with the
/// structured face maps. The residue lives in the free group on isomorphism
/// classes of `(n-2)`-cubes; a cube's class is determined by its corners
/// since gauge transformations can clear every structure iso.
pub fn sampled_boundary_square_check<R: Rng + ?Sized>(p: &PicardPresentation, n: usize, budget: usize, rng: &mut R) -> Result<Report> {
    let mut report = Report::new("sampled-boundary-square");
    if n < 2 {
        report.push(ReportItem::note("level", format!("n={n}"), "∂∂ is not defined below level 2"));
        return Ok(report.finish());
    }
    if n > 3 {
        return Err(Error::DimensionOutOfRange(format!("sampled check supports n ≤ 3, got {n}")));
    }
    let (cubes, exhaustive) = crate::cubes::cube_supply(p, n, budget, rng);
    for (k, s) in cubes.iter().enumerate() {
        let mut residue: BTreeMap<Vec<Elem>, i64> = BTreeMap::new();
        for i in 0..n {
            for alpha in [-1i8, 0, 1] {
                let s1 = if (i as i64 + alpha as i64).rem_euclid(2) == 0 { 1 } else { -1 };
                let f = face(s, i, alpha)?;
                for i2 in 0..n - 1 {
                    for beta in [-1i8, 0, 1] {
                        let s2 = if (i2 as i64 + beta as i64).rem_euclid(2) == 0 { 1 } else { -1 };
                        let g: Cube = face(&f, i2, beta)?.reduced(p);
                        *residue.entry(g.corners()).or_default() += s1 * s2;
                    }
                }
            }
        }
        residue.retain(|_, v| *v != 0);
        if !residue.is_empty() {
            report.push(ReportItem::fail("boundary-square", format!("cube #{k}"), format!("{} classes survive", residue.len())));
        }
    }
    report.push(ReportItem::pass(
        "boundary-square",
        format!("n={n}"),
        format!("{} {} cubes", cubes.len(), if exhaustive { "(all)" } else { "sampled" }),
    ));
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::invariant_factors;
    use num_traits::ToPrimitive;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(s: &str) -> FgAbelianGroup {
        s.parse().unwrap()
    }

    /// `Z[A] / ⟨[x] + [z] - [x+z], [0]⟩` directly.
    fn h0_oracle(a: &FgAbelianGroup) -> FgAbelianGroup {
        let els = a.elements().unwrap();
        let n = els.len();
        let mut triplets = vec![];
        let mut col = 0;
        for x in &els {
            for z in &els {
                let s = a.add(x, z);
                for (idx, sign) in [(a.index_of(x).unwrap(), 1), (a.index_of(z).unwrap(), 1), (a.index_of(&s).unwrap(), -1)] {
                    triplets.push((idx, col, sign));
                }
                col += 1;
            }
        }
        triplets.push((a.index_of(&a.zero()).unwrap(), col, 1));
        let m = IntMatrix::from_triplets(n, col + 1, triplets).unwrap();
        let f = invariant_factors(&m).unwrap();
        let mut factors: Vec<u64> = f.iter().map(|d| d.to_u64().unwrap()).filter(|&d| d != 1).collect();
        factors.extend(std::iter::repeat_n(0, n - f.len()));
        FgAbelianGroup::new(factors).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_cubes(&g("Z/2"), 1, 100).unwrap().len(), 4);
        assert_eq!(enumerate_cubes(&g("Z/2"), 3, 1000).unwrap().len(), 256);
        assert_eq!(enumerate_cubes(&FgAbelianGroup::trivial(), 3, 10).unwrap().len(), 1);
        assert!(matches!(enumerate_cubes(&g("Z/3"), 4, 1000), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn one_cube_boundary_signs() {
        let base = DiscreteBase::new(g("Z/5")).unwrap();
        // corners (x, z) = (1, 3): [1 | 4 | 3]
        let terms = base.boundary(&[1, 3], 1);
        let signed: Vec<(i64, u8)> = terms.iter().map(|(s, c)| (*s, c[0])).collect();
        assert_eq!(signed, vec![(-1, 1), (1, 4), (-1, 3)]);
    }

    #[test]
    fn square_zero_and_degenerate_span() {
        for a in ["Z/2", "Z/3", "Z/4", "Z/2+Z/2"] {
            let q = QComplex::build(&g(a), 3, 1 << 17, false).unwrap();
            assert!(q.check_square_zero().iter().all(|(_, ok)| *ok), "{a}");
            let base = DiscreteBase::new(g(a)).unwrap();
            for n in 1..=3 {
                assert!(check_degenerate_span(&base, n, 1 << 17).unwrap().1.is_empty());
            }
        }
        for n in 2..=5 {
            assert!(generic_boundary_square(n).is_empty());
        }
    }

    #[test]
    fn h0_matches_oracle() {
        for a in ["Z/2", "Z/3", "Z/4", "Z/2+Z/2", "Z/6"] {
            let a = g(a);
            let h = q_homology(&a, 0, 1 << 17).unwrap();
            assert!(h.is_isomorphic(&a), "{a}: {h}");
            assert!(h0_oracle(&a).is_isomorphic(&a));
        }
        assert!(q_homology(&FgAbelianGroup::trivial(), 0, 10).unwrap().is_trivial());
        assert!(q_homology(&FgAbelianGroup::trivial(), 2, 10).unwrap().is_trivial());
    }

    #[test]
    fn reduction_mod_two_is_a_chain_map() {
        let hom = GroupHom::new(g("Z/4"), g("Z/2"), vec![Elem(vec![1])]).unwrap();
        let r = check_functoriality(&hom, 3, 1 << 17).unwrap();
        assert!(r.is_valid(), "{r}");
    }

    #[test]
    fn general_cubes_square_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = PicardPresentation::z2_with_sign();
        assert!(sampled_boundary_square_check(&p, 3, 200, &mut rng).unwrap().is_valid());
        let d = PicardPresentation::discrete(g("Z/2"));
        assert!(sampled_boundary_square_check(&d, 2, 1000, &mut rng).unwrap().is_valid());
        let r = sampled_boundary_square_check(&d, 1, 10, &mut rng).unwrap();
        assert_eq!(r.status, crate::report::Status::Vacuous);
    }
}
