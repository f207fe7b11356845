//! Semi-resolving sets for the points of a design: the two
//! characterizations, and the randomized and greedy constructions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::designs::Design;
use crate::error::{Error, Result};

use super::pencil::{PencilTable, Resolution};

/// Default number of sampled subsets before the randomized search gives up.
pub const DEFAULT_MAX_RETRIES: u64 = 100;

/// `⌈v ln v / order⌉`, natural logarithm.
pub fn sample_size(v: usize, order: usize) -> usize {
    let v = v as f64;
    (v * v.ln() / order as f64).ceil() as usize
}

/// The expectation-bound sample size `⌈v ln v / (k - λ)⌉` for designs where
/// it is guaranteed not to exceed `v`: symmetric designs of order at least
/// 2, and STD_λ[λg; g] with `g >= 2` outside `(λ, g) ∈ {(1,2), (1,3), (2,2)}`.
pub fn paper_sample_size(d: &Design) -> Result<usize> {
    match d {
        Design::Symmetric(sd) => {
            if sd.order() < 2 {
                return Err(Error::Precondition(format!(
                    "order k - lambda must be at least 2, got {}",
                    sd.order()
                )));
            }
        }
        Design::Transversal(t) => {
            let (lambda, g) = (t.lambda(), t.g());
            if lambda < 1 {
                return Err(Error::Precondition("lambda must be at least 1".into()));
            }
            if g < 2 {
                return Err(Error::Precondition(format!("g must be at least 2, got {g}")));
            }
            if matches!((lambda, g), (1, 2) | (1, 3) | (2, 2)) {
                return Err(Error::Precondition(format!(
                    "(lambda, g) = ({lambda}, {g}) is one of the excluded pairs (1,2), (1,3), (2,2)"
                )));
            }
        }
    }
    let s = sample_size(d.num_points(), d.order() as usize);
    debug_assert!(s <= d.num_points());
    Ok(s)
}

/// Generator for trial `trial` under `seed`: ChaCha8 seeded from `seed`,
/// on stream `trial`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform `s`-subset of `0..n` by a partial Fisher–Yates shuffle, sorted.
pub fn sample_subset<R: Rng>(rng: &mut R, n: usize, s: usize) -> Vec<usize> {
    assert!(s <= n, "cannot sample {s} of {n}");
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..s {
        let j = rng.random_range(i..n);
        idx.swap(i, j);
    }
    idx.truncate(s);
    idx.sort_unstable();
    idx
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RandomizedOutcome {
    pub set: Vec<usize>,
    /// 1-based index of the successful trial.
    pub trials: u64,
}

pub(crate) fn randomized_on(
    table: &PencilTable,
    s: usize,
    seed: u64,
    max_retries: u64,
) -> Result<RandomizedOutcome> {
    let n = table.num_blocks();
    if s == 0 || s > n {
        return Err(Error::Precondition(format!("need 1 <= s <= {n}, got s = {s}")));
    }
    let mut best = u64::MAX;
    for t in 0..max_retries {
        let set = sample_subset(&mut trial_rng(seed, t), n, s);
        if table.is_semi_resolving(&set).is_resolved() {
            return Ok(RandomizedOutcome { set, trials: t + 1 });
        }
        best = best.min(table.unresolved_pairs(&set));
    }
    Err(Error::RetriesExhausted {
        trials: max_retries,
        best_unresolved: if max_retries == 0 { 0 } else { best },
    })
}

/// Picks the block separating the most still-unseparated point pairs,
/// lowest index on ties, until all pairs are separated. Unseparated pairs
/// are tracked as the classes of the partition induced by the chosen blocks.
pub(crate) fn greedy_on(table: &PencilTable) -> Result<Vec<usize>> {
    if let Some((x, y)) = table.first_inseparable() {
        return Err(Error::Unseparable(x, y));
    }
    let v = table.num_points();
    let nb = table.num_blocks();
    let mut members = vec![Vec::new(); nb];
    for x in 0..v {
        for b in table.pencil(x).ones() {
            members[b].push(x);
        }
    }
    let mut class = vec![0usize; v];
    let mut num_classes = usize::from(v > 0);
    let mut chosen = vec![false; nb];
    let mut picked = Vec::new();
    while num_classes < v {
        let mut size = vec![0u64; num_classes];
        for &c in &class {
            size[c] += 1;
        }
        let mut best = (0u64, usize::MAX);
        let mut inside = vec![0u64; num_classes];
        for b in (0..nb).filter(|&b| !chosen[b]) {
            inside.iter_mut().for_each(|c| *c = 0);
            for &x in &members[b] {
                inside[class[x]] += 1;
            }
            let gain: u64 = inside.iter().zip(&size).map(|(&i, &s)| i * (s - i)).sum();
            if gain > best.0 {
                best = (gain, b);
            }
        }
        let (gain, b) = best;
        debug_assert!(gain > 0, "separable pairs always have a separating block");
        chosen[b] = true;
        picked.push(b);
        // refine: (old class, inside b) -> new dense id
        let mut remap = vec![[usize::MAX; 2]; num_classes];
        let mut next = 0;
        let mut in_b = vec![false; v];
        for &x in &members[b] {
            in_b[x] = true;
        }
        for x in 0..v {
            let slot = &mut remap[class[x]][in_b[x] as usize];
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
            class[x] = *slot;
        }
        num_classes = next;
    }
    picked.sort_unstable();
    Ok(picked)
}

/// Pencil-route check that `blocks` semi-resolves the points of `d`.
pub fn is_semi_resolving(d: &Design, blocks: &[usize]) -> Result<Resolution> {
    d.validate().into_result()?;
    if let Some(&b) = blocks.iter().find(|&&b| b >= d.num_blocks()) {
        return Err(Error::Precondition(format!("block {b} out of range")));
    }
    Ok(PencilTable::for_points(d).is_semi_resolving(blocks))
}

/// Samples uniform `s`-subsets of blocks until one semi-resolves the points.
pub fn randomized_semi_resolving(
    d: &Design,
    s: usize,
    seed: u64,
    max_retries: u64,
) -> Result<RandomizedOutcome> {
    d.validate().into_result()?;
    randomized_on(&PencilTable::for_points(d), s, seed, max_retries)
}

pub fn greedy_semi_resolving(d: &Design) -> Result<Vec<usize>> {
    d.validate().into_result()?;
    greedy_on(&PencilTable::for_points(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{biaffine_plane, projective_plane, SymmetricDesign};

    #[test]
    fn sample_sizes() {
        let fano: Design = projective_plane(2).unwrap().into();
        assert_eq!(paper_sample_size(&fano).unwrap(), 7);
        let pg3: Design = projective_plane(3).unwrap().into();
        assert_eq!(paper_sample_size(&pg3).unwrap(), 12);
        for q in [2, 3] {
            let std: Design = biaffine_plane(q).unwrap().into();
            assert!(matches!(paper_sample_size(&std), Err(Error::Precondition(_))));
        }
        let b4: Design = biaffine_plane(4).unwrap().into();
        // ⌈16 ln 16 / 3⌉ = ⌈14.79⌉
        assert_eq!(paper_sample_size(&b4).unwrap(), 15);
    }

    #[test]
    fn subsets_are_uniform_shaped_and_reproducible() {
        let a = sample_subset(&mut trial_rng(7, 3), 20, 5);
        let b = sample_subset(&mut trial_rng(7, 3), 20, 5);
        let c = sample_subset(&mut trial_rng(7, 4), 20, 5);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 5);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(sample_subset(&mut trial_rng(0, 0), 6, 6), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn fano_full_sample_succeeds_first_trial() {
        let fano: Design = projective_plane(2).unwrap().into();
        let out = randomized_semi_resolving(&fano, 7, 0, 100).unwrap();
        assert_eq!(out.trials, 1);
        assert_eq!(out.set.len(), 7);
    }

    #[test]
    fn pg3_default_size_succeeds_first_trial_for_every_seed() {
        let pg3: Design = projective_plane(3).unwrap().into();
        for seed in 0..50 {
            let out = randomized_semi_resolving(&pg3, 12, seed, 1).unwrap();
            assert_eq!(out.trials, 1);
        }
    }

    #[test]
    fn bad_sizes_and_exhaustion() {
        let fano: Design = projective_plane(2).unwrap().into();
        assert!(randomized_semi_resolving(&fano, 0, 0, 10).is_err());
        assert!(randomized_semi_resolving(&fano, 8, 0, 10).is_err());
        // no 2-subset of Fano blocks separates all points
        match randomized_semi_resolving(&fano, 2, 0, 10) {
            Err(Error::RetriesExhausted { trials, best_unresolved }) => {
                assert_eq!(trials, 10);
                assert!(best_unresolved > 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn greedy_is_valid() {
        for q in [2, 3, 4, 5] {
            let d: Design = projective_plane(q).unwrap().into();
            let s = greedy_semi_resolving(&d).unwrap();
            assert!(is_semi_resolving(&d, &s).unwrap().is_resolved());
            assert!(s.len() <= paper_sample_size(&d).unwrap());
        }
    }

    #[test]
    fn greedy_rejects_duplicated_point() {
        // points 0 and 1 lie on exactly the same blocks
        let d: Design = SymmetricDesign::new(3, 2, 1, &[vec![0, 1], vec![0, 1], vec![2]])
            .unwrap()
            .into();
        assert!(greedy_semi_resolving(&d).is_err());
        let table = PencilTable::for_points(&d);
        assert_eq!(greedy_on(&table), Err(Error::Unseparable(0, 1)));
    }
}
