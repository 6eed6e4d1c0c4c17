//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Default cap on the bit length of any intermediate entry.
pub const DEFAULT_MAX_BITS: u64 = 1 << 16;

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<Snf> {
    smith_normal_form_bounded(m, DEFAULT_MAX_BITS)
}

pub fn smith_normal_form_bounded(m: &IntMatrix, max_bits: u64) -> Result<Snf> {
    let mut calc = DenseSnf::new(m.to_dense(), m.rows(), m.cols(), true, max_bits);
    calc.run()?;
    Ok(Snf {
        d: IntMatrix::from_dense(&calc.a, m.cols()),
        u: IntMatrix::from_dense(&calc.u, m.rows()),
        v: IntMatrix::from_dense(&calc.v, m.cols()),
    })
}

struct DenseSnf {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    track: bool,
    max_bits: u64,
}

impl DenseSnf {
    fn new(a: Vec<Vec<BigInt>>, rows: usize, cols: usize, track: bool, max_bits: u64) -> Self {
        let ident = |n: usize| -> Vec<Vec<BigInt>> {
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
                .collect()
        };
        let (u, v) = if track { (ident(rows), ident(cols)) } else { (vec![], vec![]) };
        Self { a, u, v, rows, cols, track, max_bits }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if self.track {
            self.u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if self.track {
            for row in &mut self.v {
                row.swap(i, j);
            }
        }
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) -> Result<()> {
        let (src, dst) = pick(&mut self.a, j, i);
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            if !s.is_zero() {
                *d += k * s;
                check_bits(d, self.max_bits)?;
            }
        }
        if self.track {
            let (src, dst) = pick(&mut self.u, j, i);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d += k * s;
                }
            }
        }
        Ok(())
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) -> Result<()> {
        for row in &mut self.a {
            if !row[j].is_zero() {
                let t = k * &row[j];
                row[i] += t;
                check_bits(&row[i], self.max_bits)?;
            }
        }
        if self.track {
            for row in &mut self.v {
                if !row[j].is_zero() {
                    let t = k * &row[j];
                    row[i] += t;
                }
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if self.track {
            for x in &mut self.u[i] {
                *x = -&*x;
            }
        }
    }

    fn run(&mut self) -> Result<()> {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = -self.a[i][t].div_floor(&self.a[t][t]);
                        self.add_row(i, t, &q)?;
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = -self.a[t][j].div_floor(&self.a[t][t]);
                        self.add_col(j, t, &q)?;
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    // bring the smallest leftover of row t / column t to the pivot
                    let mut best: Option<(BigInt, bool, usize)> = None;
                    for i in t + 1..self.rows {
                        let x = self.a[i][t].abs();
                        if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.0) {
                            best = Some((x, true, i));
                        }
                    }
                    for j in t + 1..self.cols {
                        let x = self.a[t][j].abs();
                        if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.0) {
                            best = Some((x, false, j));
                        }
                    }
                    if let Some((_, is_row, k)) = best {
                        if is_row {
                            self.swap_rows(t, k);
                        } else {
                            self.swap_cols(t, k);
                        }
                    }
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one())?,
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
        Ok(())
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.a[i][j].abs();
                if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.0) {
                    let one = x.is_one();
                    best = Some((x, i, j));
                    if one {
                        return best.map(|(_, i, j)| (i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

fn pick<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = v.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

fn check_bits(x: &BigInt, max_bits: u64) -> Result<()> {
    if x.bits() > max_bits {
        Err(Error::ResourceLimit(format!("SNF entry exceeded {max_bits} bits")))
    } else {
        Ok(())
    }
}

/// Nonzero invariant factors of `m` (the diagonal of its Smith form), in
/// divisibility order. Eliminates unit pivots sparsely before handing the
/// remainder to the dense algorithm; transforms are not tracked.
pub fn invariant_factors(m: &IntMatrix) -> Result<Vec<BigInt>> {
    let oriented = if m.rows() > m.cols() { m.transpose() } else { m.clone() };
    match sparse_unit_elimination(&oriented) {
        Some((units, rest)) => {
            let mut out = vec![BigInt::one(); units];
            out.extend(dense_factors(&rest)?);
            Ok(out)
        }
        None => dense_factors(&oriented),
    }
}

pub fn rank(m: &IntMatrix) -> Result<usize> {
    invariant_factors(m).map(|f| f.len())
}

fn dense_factors(m: &IntMatrix) -> Result<Vec<BigInt>> {
    let mut calc = DenseSnf::new(m.to_dense(), m.rows(), m.cols(), false, DEFAULT_MAX_BITS);
    calc.run()?;
    let n = m.rows().min(m.cols());
    Ok((0..n).map(|i| calc.a[i][i].clone()).filter(|x| !x.is_zero()).collect())
}

type SparseRow = Vec<(usize, i64)>;

/// Returns the number of unit pivots removed and the residual matrix, or
/// `None` if an entry left the `i64` range.
fn sparse_unit_elimination(m: &IntMatrix) -> Option<(usize, IntMatrix)> {
    let mut rows: Vec<SparseRow> = vec![vec![]; m.rows()];
    for j in 0..m.cols() {
        for (i, v) in m.column(j) {
            rows[*i].push((j, v.to_i64()?));
        }
    }
    let mut active: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    let mut units = 0usize;
    loop {
        // shortest active row holding a unit entry
        let mut choice: Option<(usize, usize, i64)> = None;
        for (r, row) in rows.iter().enumerate() {
            if !active[r] {
                continue;
            }
            if let Some(&(c, v)) = row.iter().find(|(_, v)| v.abs() == 1) {
                if choice.is_none_or(|(cr, _, _)| row.len() < rows[cr].len()) {
                    choice = Some((r, c, v));
                }
            }
        }
        let Some((r, c, p)) = choice else { break };
        active[r] = false;
        units += 1;
        let pivot_row = std::mem::take(&mut rows[r]);
        for r2 in 0..rows.len() {
            if !active[r2] {
                continue;
            }
            let Ok(k) = rows[r2].binary_search_by_key(&c, |(j, _)| *j) else { continue };
            let factor = rows[r2][k].1.checked_mul(p)?;
            rows[r2] = axpy(&rows[r2], &pivot_row, factor)?;
            if rows[r2].is_empty() {
                active[r2] = false;
            }
        }
    }
    let rest: Vec<&SparseRow> = rows.iter().enumerate().filter(|(i, r)| active[*i] && !r.is_empty()).map(|(_, r)| r).collect();
    let mut used: Vec<usize> = rest.iter().flat_map(|r| r.iter().map(|(j, _)| *j)).collect();
    used.sort_unstable();
    used.dedup();
    let mut triplets = vec![];
    for (i, row) in rest.iter().enumerate() {
        for (j, v) in row.iter() {
            let jj = used.binary_search(j).ok()?;
            triplets.push((i, jj, *v));
        }
    }
    IntMatrix::from_triplets(rest.len(), used.len(), triplets).ok().map(|m| (units, m))
}

/// `a - k * b` on sorted sparse rows.
fn axpy(a: &SparseRow, b: &SparseRow, k: i64) -> Option<SparseRow> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, b[j].1.checked_mul(k)?.checked_neg()?));
            j += 1;
        } else {
            let v = a[i].1.checked_sub(b[j].1.checked_mul(k)?)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn check(mat: &IntMatrix) -> Snf {
        let s = smith_normal_form(mat).unwrap();
        let prod = s.u.mul(mat).unwrap().mul(&s.v).unwrap();
        assert_eq!(prod, s.d);
        assert!(s.d.is_diagonal());
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let diag = s.d.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        s
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&m(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.d.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_and_identity() {
        let z = IntMatrix::zeros(2, 3);
        let s = check(&z);
        assert!(s.d.is_zero());
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(3));
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn sparse_path_matches_dense() {
        let mat = m(&[vec![1, 2, 3, 0], vec![0, 2, 0, 4], vec![3, 0, 6, 6]]);
        let dense = check(&mat).invariant_factors();
        assert_eq!(invariant_factors(&mat).unwrap(), dense);
    }

    #[test]
    fn bit_cap_is_enforced() {
        let mat = m(&[vec![1 << 40, 3], vec![5, 1 << 41]]);
        assert!(matches!(smith_normal_form_bounded(&mat, 8), Err(Error::ResourceLimit(_))));
    }
}
