use fixedbitset::FixedBitSet;

use super::{bitset_from, first_bad_pair, pencils_of, ValidationReport, Violation};
use crate::error::{Error, Result};

/// A transversal design `TD_λ[k; g]` on `v = k·g` points split into `k`
/// point classes of size `g`. Symmetry (`k = λg`, `λg²` blocks, dual also a
/// TD) is checked by [`TransversalDesign::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalDesign {
    g: usize,
    k: usize,
    lambda: usize,
    classes: Vec<Vec<usize>>,
    blocks: Vec<FixedBitSet>,
}

impl TransversalDesign {
    pub fn new(
        g: usize,
        k: usize,
        lambda: usize,
        classes: Vec<Vec<usize>>,
        blocks: &[Vec<usize>],
    ) -> Result<Self> {
        let v = k * g;
        if let Some(&bad) = classes.iter().flatten().find(|&&x| x >= v) {
            return Err(Error::Precondition(format!(
                "class point {bad} out of range 0..{v}"
            )));
        }
        let blocks = blocks
            .iter()
            .map(|b| bitset_from(v, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(g, k, lambda, classes, blocks))
    }

    pub(crate) fn from_parts(
        g: usize,
        k: usize,
        lambda: usize,
        mut classes: Vec<Vec<usize>>,
        blocks: Vec<FixedBitSet>,
    ) -> Self {
        for c in &mut classes {
            c.sort_unstable();
        }
        TransversalDesign {
            g,
            k,
            lambda,
            classes,
            blocks,
        }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Point count `k·g`.
    pub fn v(&self) -> usize {
        self.k * self.g
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn blocks(&self) -> &[FixedBitSet] {
        &self.blocks
    }

    pub fn block_points(&self, b: usize) -> Vec<usize> {
        self.blocks[b].ones().collect()
    }

    /// Class index of every point; `None` if the classes do not partition
    /// the points.
    pub fn class_of(&self) -> Option<Vec<usize>> {
        let v = self.v();
        let mut out = vec![usize::MAX; v];
        for (c, class) in self.classes.iter().enumerate() {
            for &x in class {
                if x >= v || out[x] != usize::MAX {
                    return None;
                }
                out[x] = c;
            }
        }
        out.iter().all(|&c| c != usize::MAX).then_some(out)
    }

    /// TD axioms only: class partition, transversality, pair counts.
    fn td_violations(&self, report: &mut ValidationReport) {
        let (g, k, lambda, v) = (self.g, self.k, self.lambda, self.v());
        if self.classes.len() != k || self.classes.iter().any(|c| c.len() != g) {
            report.push(Violation::ClassPartition {
                detail: format!("expected {k} classes of size {g}"),
            });
            return;
        }
        let Some(class_of) = self.class_of() else {
            report.push(Violation::ClassPartition {
                detail: "classes overlap or miss a point".into(),
            });
            return;
        };
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
        'outer: for (bi, block) in self.blocks.iter().enumerate() {
            let mut hits = vec![0usize; k];
            for x in block.ones() {
                hits[class_of[x]] += 1;
            }
            if let Some((class, &h)) = hits.iter().enumerate().find(|(_, &h)| h != 1) {
                report.push(Violation::NotTransversal {
                    block: bi,
                    class,
                    hits: h,
                });
                break 'outer;
            }
        }
        let pencils = pencils_of(v, &self.blocks);
        let expected = |x: usize, y: usize| {
            if class_of[x] == class_of[y] {
                0
            } else {
                lambda
            }
        };
        if let Some((x, y, count, expected)) = first_bad_pair(&pencils, expected) {
            report.push(Violation::PointPair { x, y, count, expected });
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        self.td_violations(&mut report);
        let (g, k, lambda) = (self.g, self.k, self.lambda);
        if k != lambda * g || self.blocks.len() != lambda * g * g {
            report.push(Violation::NotSymmetric {
                k,
                lambda,
                g,
                blocks: self.blocks.len(),
            });
        }
        if report.is_valid() {
            match self.dual_unchecked() {
                Err(detail) => report.push(Violation::Dual { detail }),
                Ok(dual) => {
                    let mut inner = ValidationReport::default();
                    dual.td_violations(&mut inner);
                    if let Some(v) = inner.violations.first() {
                        report.push(Violation::Dual {
                            detail: v.to_string(),
                        });
                    }
                }
            }
        }
        report
    }

    /// Groups blocks into parallel classes: blocks are in one class iff
    /// they are disjoint.
    pub fn parallel_classes(&self) -> std::result::Result<Vec<Vec<usize>>, String> {
        let nb = self.blocks.len();
        let v = self.v();
        let mut assigned = vec![false; nb];
        let mut classes = Vec::new();
        for b in 0..nb {
            if assigned[b] {
                continue;
            }
            assigned[b] = true;
            let mut class = vec![b];
            let mut covered = self.blocks[b].clone();
            for (c, done) in assigned.iter_mut().enumerate().skip(b + 1) {
                if !*done && self.blocks[c].is_disjoint(&covered) {
                    *done = true;
                    covered.union_with(&self.blocks[c]);
                    class.push(c);
                }
            }
            if covered.count_ones(..) != v {
                return Err(format!(
                    "blocks disjoint from block {b} do not cover the points"
                ));
            }
            classes.push(class);
        }
        Ok(classes)
    }

    fn dual_unchecked(&self) -> std::result::Result<Self, String> {
        let classes = self.parallel_classes()?;
        if classes.len() != self.k || classes.iter().any(|c| c.len() != self.g) {
            return Err(format!(
                "found {} parallel classes, expected {} of size {}",
                classes.len(),
                self.k,
                self.g
            ));
        }
        Ok(TransversalDesign::from_parts(
            self.g,
            self.k,
            self.lambda,
            classes,
            pencils_of(self.v(), &self.blocks),
        ))
    }

    /// Dual STD: blocks become points, point classes are the parallel
    /// classes of the blocks.
    pub fn dual(&self) -> Result<Self> {
        self.validate().into_result()?;
        self.dual_unchecked().map_err(Error::InvalidDesign)
    }
}
