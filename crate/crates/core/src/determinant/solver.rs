//! Sparse row echelon form over `Z/p`.

use std::collections::BTreeMap;

/// Sparse linear system `Σ a_k·v_k = r` over `Z/p`, kept in echelon form:
/// each stored row is keyed by its smallest variable.
#[derive(Clone, Debug)]
pub struct GfSystem {
    p: u64,
    pivots: BTreeMap<usize, (BTreeMap<usize, u64>, u64)>,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl GfSystem {
    /// `p` must be prime.
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        Self { p, pivots: BTreeMap::new() }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    /// Reduces a row against the stored pivots. Returns the residue.
    fn reduce(&self, mut row: BTreeMap<usize, u64>, mut rhs: u64) -> (BTreeMap<usize, u64>, u64) {
        let p = self.p;
        row.retain(|_, a| {
            *a %= p;
            *a != 0
        });
        rhs %= p;
        let mut cursor = 0;
        while let Some((&v, &a)) = row.range(cursor..).next() {
            let Some((prow, prhs)) = self.pivots.get(&v) else {
                cursor = v + 1;
                continue;
            };
            // pivot rows are normalized to leading coefficient 1
            for (&w, &b) in prow {
                let e = row.entry(w).or_insert(0);
                *e = (*e + p - a * b % p) % p;
                if *e == 0 {
                    row.remove(&w);
                }
            }
            rhs = (rhs + p - a * prhs % p) % p;
            cursor = v + 1;
        }
        (row, rhs)
    }

    /// Adds an equation. Returns `false` if it contradicts the system.
    pub fn add(&mut self, row: BTreeMap<usize, u64>, rhs: u64) -> bool {
        let (row, rhs) = self.reduce(row, rhs);
        let Some((&lead, &a)) = row.iter().next() else {
            return rhs == 0;
        };
        let inv = self.inv(a);
        let p = self.p;
        let row = row.into_iter().map(|(w, b)| (w, b * inv % p)).collect();
        self.pivots.insert(lead, (row, rhs * inv % p));
        true
    }

    /// Whether the equation already follows from the system.
    pub fn implies(&self, row: BTreeMap<usize, u64>, rhs: u64) -> bool {
        let (row, rhs) = self.reduce(row, rhs);
        row.is_empty() && rhs == 0
    }

    /// A solution on `nvars` variables with the free ones chosen by `free`.
    pub fn solve(&self, nvars: usize, mut free: impl FnMut(usize) -> u64) -> Vec<u64> {
        let p = self.p;
        let mut x = vec![0u64; nvars];
        for (v, slot) in x.iter_mut().enumerate() {
            if !self.pivots.contains_key(&v) {
                *slot = free(v) % p;
            }
        }
        for (&v, (row, rhs)) in self.pivots.iter().rev() {
            let mut acc = *rhs;
            for (&w, &b) in row.range(v + 1..) {
                acc = (acc + p - b * x[w] % p) % p;
            }
            x[v] = acc;
        }
        x
    }

    pub fn is_pivot(&self, v: usize) -> bool {
        self.pivots.contains_key(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_and_detects_contradiction() {
        let mut s = GfSystem::new(3);
        assert!(s.add([(0, 1), (1, 1)].into(), 2));
        assert!(s.add([(1, 2)].into(), 1));
        let x = s.solve(2, |_| 0);
        assert_eq!((x[0] + x[1]) % 3, 2);
        assert_eq!(2 * x[1] % 3, 1);
        assert!(s.implies([(0, 2), (1, 2)].into(), 1));
        assert!(!s.add([(0, 1)].into(), (x[0] + 1) % 3));
    }
}
