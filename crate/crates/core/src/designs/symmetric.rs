use fixedbitset::FixedBitSet;

use super::{bitset_from, first_bad_pair, pencils_of, ValidationReport, Violation};
use crate::error::Result;

/// A `(v, k, λ)` symmetric design. Construction does not validate; call
/// [`SymmetricDesign::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricDesign {
    v: usize,
    k: usize,
    lambda: usize,
    blocks: Vec<FixedBitSet>,
}

impl SymmetricDesign {
    /// Builds from point lists. Fails only if an index is out of `0..v`.
    pub fn new(v: usize, k: usize, lambda: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| bitset_from(v, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bitsets(v, k, lambda, blocks))
    }

    pub(crate) fn from_bitsets(v: usize, k: usize, lambda: usize, blocks: Vec<FixedBitSet>) -> Self {
        SymmetricDesign {
            v,
            k,
            lambda,
            blocks,
        }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// `q = k - λ`.
    pub fn order(&self) -> i64 {
        self.k as i64 - self.lambda as i64
    }

    pub fn blocks(&self) -> &[FixedBitSet] {
        &self.blocks
    }

    pub fn block_points(&self, b: usize) -> Vec<usize> {
        self.blocks[b].ones().collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let (v, k, lambda) = (self.v, self.k, self.lambda);
        if self.blocks.len() != v {
            report.push(Violation::BlockCount {
                expected: v,
                found: self.blocks.len(),
            });
        }
        if let Some((block, b)) = self
            .blocks
            .iter()
            .enumerate()
            .find(|(_, b)| b.count_ones(..) != k)
        {
            report.push(Violation::BlockSize {
                block,
                size: b.count_ones(..),
                expected: k,
            });
        }
        let pencils = pencils_of(v, &self.blocks);
        if let Some((x, y, count, expected)) = first_bad_pair(&pencils, |_, _| lambda) {
            report.push(Violation::PointPair { x, y, count, expected });
        }
        if let Some((a, b, count, expected)) = first_bad_pair(&self.blocks, |_, _| lambda) {
            report.push(Violation::BlockPair { a, b, count, expected });
        }
        let q = self.order();
        if q >= 2 {
            let lower = 4 * q - 1;
            let upper = q * q + q + 1;
            report.order_bounds = Some((lower, v, upper));
            if !(lower <= v as i64 && v as i64 <= upper) {
                report.push(Violation::OrderBounds {
                    order: q,
                    v,
                    lower,
                    upper,
                });
            }
        }
        report
    }

    /// Swaps the roles of points and blocks: point `x` becomes the block
    /// of indices of blocks through `x`.
    pub fn dual(&self) -> Result<Self> {
        self.validate().into_result()?;
        Ok(SymmetricDesign {
            v: self.v,
            k: self.k,
            lambda: self.lambda,
            blocks: pencils_of(self.v, &self.blocks),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{hadamard_design, projective_plane};
    use crate::hadamard::hadamard_matrix;

    fn fano() -> SymmetricDesign {
        projective_plane(2).unwrap()
    }

    #[test]
    fn fano_is_valid_with_tight_order_bounds() {
        let r = fano().validate();
        assert!(r.is_valid(), "{:?}", r.violations);
        assert_eq!(r.order_bounds, Some((7, 7, 7)));
    }

    #[test]
    fn pg3_order_bounds() {
        let r = projective_plane(3).unwrap().validate();
        assert!(r.is_valid());
        assert_eq!(r.order_bounds, Some((11, 13, 13)));
    }

    #[test]
    fn perturbed_fano_reports_witness() {
        let d = fano();
        let mut blocks: Vec<Vec<usize>> = (0..7).map(|b| d.block_points(b)).collect();
        // move one point of block 0 to a point it misses
        let missing = (0..7).find(|x| !blocks[0].contains(x)).unwrap();
        blocks[0][0] = missing;
        blocks[0].sort_unstable();
        let bad = SymmetricDesign::new(7, 3, 1, &blocks).unwrap();
        let r = bad.validate();
        assert!(!r.is_valid());
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::PointPair { .. })));
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::BlockPair { .. })));
    }

    #[test]
    fn dual_is_involution_and_valid() {
        let d = fano();
        let dd = d.dual().unwrap();
        assert!(dd.validate().is_valid());
        assert_eq!((dd.v(), dd.k(), dd.lambda()), (7, 3, 1));
        assert_eq!(dd.dual().unwrap(), d);

        let h = hadamard_design(&hadamard_matrix(12).unwrap()).unwrap();
        assert_eq!(h.dual().unwrap().dual().unwrap(), h);
    }

    #[test]
    fn dual_rejects_invalid() {
        let bad = SymmetricDesign::new(3, 2, 1, &[vec![0, 1], vec![0, 1], vec![1, 2]]).unwrap();
        assert!(bad.dual().is_err());
    }

    #[test]
    fn out_of_range_point() {
        assert!(SymmetricDesign::new(3, 1, 0, &[vec![3]]).is_err());
    }
}
