//! Chain complexes of finitely generated free abelian groups.

use num_traits::{ToPrimitive, Zero};

use super::group::FgAbelianGroup;
use super::matrix::IntMatrix;
use super::snf::invariant_factors;
use crate::error::{Error, Result};

/// `C_0 <- C_1 <- ... <- C_N` with `C_k = Z^{levels[k]}`.
///
/// `boundaries[k - 1]` is `∂_k : C_k -> C_{k-1}` as a `levels[k-1] x levels[k]`
/// matrix. The complex condition is verified on construction.
#[derive(Clone, Debug)]
pub struct ChainComplexZ {
    levels: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplexZ {
    pub fn new(levels: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::DimensionMismatch("complex needs at least one level".into()));
        }
        if boundaries.len() + 1 != levels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} levels need {} boundaries, got {}",
                levels.len(),
                levels.len() - 1,
                boundaries.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.rows() != levels[k] || d.cols() != levels[k + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "∂_{} is {}x{}, expected {}x{}",
                    k + 1,
                    d.rows(),
                    d.cols(),
                    levels[k],
                    levels[k + 1]
                )));
            }
        }
        let c = Self { levels, boundaries };
        for k in 2..c.levels.len() {
            c.check_square_zero(k)?;
        }
        Ok(c)
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    /// `∂_k`, or `None` outside `1..=top`.
    pub fn boundary(&self, k: usize) -> Option<&IntMatrix> {
        if k == 0 {
            None
        } else {
            self.boundaries.get(k - 1)
        }
    }

    /// Errors with `NotAComplex` unless `∂_{k-1} ∘ ∂_k = 0`.
    pub fn check_square_zero(&self, k: usize) -> Result<()> {
        if let (Some(lo), Some(hi)) = (self.boundary(k - 1), self.boundary(k)) {
            if !lo.mul(hi)?.is_zero() {
                return Err(Error::NotAComplex(format!("∂_{}∘∂_{} ≠ 0", k - 1, k)));
            }
        }
        Ok(())
    }

    /// `H_k = ker ∂_k / im ∂_{k+1}` in invariant-factor form.
    pub fn homology_at(&self, k: usize) -> Result<FgAbelianGroup> {
        if k > self.top() {
            return Err(Error::DimensionOutOfRange(format!("level {k} above top level {}", self.top())));
        }
        self.check_square_zero(k + 1)?;
        let n = self.levels[k];
        let rank_out = match self.boundary(k) {
            Some(d) => invariant_factors(d)?.len(),
            None => 0,
        };
        let incoming = match self.boundary(k + 1) {
            Some(d) => invariant_factors(d)?,
            None => vec![],
        };
        let free = n - rank_out - incoming.len();
        let mut factors: Vec<u64> = incoming
            .iter()
            .filter(|d| !d.is_zero() && *d != &1.into())
            .map(|d| d.to_u64().ok_or_else(|| Error::ResourceLimit(format!("torsion coefficient {d} too large"))))
            .collect::<Result<_>>()?;
        factors.extend(std::iter::repeat_n(0, free));
        FgAbelianGroup::new(factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_free_generator() {
        let c = ChainComplexZ::new(vec![1], vec![]).unwrap();
        assert_eq!(c.homology_at(0).unwrap().factors(), &[0]);
    }

    #[test]
    fn multiplication_by_two() {
        let d = IntMatrix::from_rows(&[vec![2]]).unwrap();
        let c = ChainComplexZ::new(vec![1, 1], vec![d]).unwrap();
        assert_eq!(c.homology_at(0).unwrap().factors(), &[2]);
        assert!(c.homology_at(1).unwrap().is_trivial());
    }

    #[test]
    fn non_complex_is_rejected() {
        let d1 = IntMatrix::from_rows(&[vec![1]]).unwrap();
        let d2 = IntMatrix::from_rows(&[vec![1]]).unwrap();
        assert!(matches!(ChainComplexZ::new(vec![1, 1, 1], vec![d1, d2]), Err(Error::NotAComplex(_))));
    }

    #[test]
    fn circle() {
        // two vertices, two edges forming a loop
        let d = IntMatrix::from_rows(&[vec![-1, 1], vec![1, -1]]).unwrap();
        let c = ChainComplexZ::new(vec![2, 2], vec![d]).unwrap();
        assert_eq!(c.homology_at(0).unwrap().factors(), &[0]);
        assert_eq!(c.homology_at(1).unwrap().factors(), &[0]);
    }
}
