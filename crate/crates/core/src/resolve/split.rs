use serde::Serialize;

use crate::designs::Design;
use crate::error::{Error, Result};
use crate::incidence::{incidence_graph, IncidenceGraph};

use super::check::is_resolving;
use super::hitting::{min_semi_on, DEFAULT_EXACT_LIMIT};
use super::pencil::PencilTable;
use super::semi::{greedy_on, paper_sample_size, randomized_on, sample_size};

/// How each side's semi-resolving set is found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Method {
    /// `size: None` uses the expectation-bound sample size on each side.
    Randomized {
        seed: u64,
        max_retries: u64,
        size: Option<usize>,
    },
    Greedy,
    Exact { budget: u64 },
}

/// `S_X ∪ S_B`: `points` semi-resolve the blocks, `blocks` semi-resolve the
/// points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitResolvingSet {
    pub points: Vec<usize>,
    pub blocks: Vec<usize>,
}

impl SplitResolvingSet {
    pub fn len(&self) -> usize {
        self.points.len() + self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Incidence-graph vertex indices (points first, then `v + b`).
    pub fn vertices(&self, g: &IncidenceGraph) -> Vec<usize> {
        self.points
            .iter()
            .copied()
            .chain(self.blocks.iter().map(|&b| g.block_vertex(b)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitReport {
    pub set: SplitResolvingSet,
    /// `2·⌈v ln v / (k - λ)⌉` when `k > λ`.
    pub paper_bound: Option<usize>,
    /// Trials used per side by the randomized method.
    pub trials: Option<(u64, u64)>,
    /// Whether the union resolves the whole incidence graph.
    pub resolves_graph: bool,
}

fn semi_on(table: &PencilTable, method: &Method, side: u64, default_size: Option<usize>) -> Result<(Vec<usize>, Option<u64>)> {
    match *method {
        Method::Randomized {
            seed,
            max_retries,
            size,
        } => {
            let s = match size.or(default_size) {
                Some(s) => s,
                None => return Err(Error::Precondition("no sample size available".into())),
            };
            // each side draws from its own seed
            let out = randomized_on(table, s, seed.wrapping_add(side), max_retries)?;
            Ok((out.set, Some(out.trials)))
        }
        Method::Greedy => Ok((greedy_on(table)?, None)),
        Method::Exact { budget } => Ok((min_semi_on(table, DEFAULT_EXACT_LIMIT, budget)?.set, None)),
    }
}

/// A semi-resolving set for each side, checked to resolve the incidence
/// graph as a whole.
pub fn split_resolving(d: &Design, method: &Method) -> Result<SplitReport> {
    let dual = d.dual()?;
    dual.validate().into_result()?;
    if d.blocks().iter().all(|b| b.count_ones(..) == d.num_points()) {
        return Err(Error::CompleteBipartite);
    }
    let default_size = paper_sample_size(d).ok();
    let (blocks, tb) = semi_on(&PencilTable::for_points(d), method, 0, default_size)?;
    let (points, tp) = semi_on(&PencilTable::for_blocks(d), method, 1, default_size)?;
    let set = SplitResolvingSet { points, blocks };

    let g = incidence_graph(d)?;
    let resolves_graph = is_resolving(&g, &set.vertices(&g))?.is_resolved();
    if !resolves_graph {
        return Err(Error::InvalidDesign(
            "split resolving set does not resolve the incidence graph".into(),
        ));
    }
    let order = d.order();
    Ok(SplitReport {
        set,
        paper_bound: (order > 0).then(|| 2 * sample_size(d.num_points(), order as usize)),
        trials: tb.zip(tp),
        resolves_graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{hadamard_std, projective_plane, SymmetricDesign};
    use crate::hadamard::hadamard_matrix;
    use crate::resolve::hitting::DEFAULT_NODE_BUDGET;

    #[test]
    fn fano_exact_split_has_six() {
        let d: Design = projective_plane(2).unwrap().into();
        let r = split_resolving(&d, &Method::Exact { budget: DEFAULT_NODE_BUDGET }).unwrap();
        assert_eq!(r.set.points.len(), 3);
        assert_eq!(r.set.blocks.len(), 3);
        assert!(r.resolves_graph);
        assert_eq!(r.paper_bound, Some(14));
    }

    #[test]
    fn hadamard_graph_randomized_at_default_size() {
        let d: Design = hadamard_std(&hadamard_matrix(8).unwrap()).unwrap().into();
        let r = split_resolving(
            &d,
            &Method::Randomized {
                seed: 0,
                max_retries: 100,
                size: None,
            },
        )
        .unwrap();
        assert_eq!(r.set.len(), 24);
        assert_eq!(r.paper_bound, Some(24));
    }

    #[test]
    fn complete_bipartite_has_no_split_set() {
        let all: Vec<usize> = (0..4).collect();
        let d: Design = SymmetricDesign::new(4, 4, 4, &vec![all; 4]).unwrap().into();
        assert!(d.validate().is_valid());
        assert_eq!(split_resolving(&d, &Method::Greedy), Err(Error::CompleteBipartite));
    }

    #[test]
    fn greedy_split_within_bound() {
        for q in [2, 3, 4, 5, 7] {
            let d: Design = projective_plane(q).unwrap().into();
            let r = split_resolving(&d, &Method::Greedy).unwrap();
            assert!(r.set.len() <= r.paper_bound.unwrap());
        }
    }
}
