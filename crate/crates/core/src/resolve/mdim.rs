//! Exact metric dimension.
//!
//! The baseline enumerates subsets by size in lexicographic order. The
//! pruned solver searches the same sizes but
//!
//! * starts every candidate set from a vertex-orbit representative, trying
//!   representatives before anything else (orbits are merged only along
//!   automorphisms that were explicitly found and checked, so they may be
//!   finer than the true orbits, never coarser);
//! * keeps the partition of vertices by distance vector and abandons a
//!   branch when some class has more than `(D+1)^r` vertices with `r`
//!   landmarks left;
//! * skips landmarks that split no class, since at the smallest feasible
//!   size every landmark of a resolving set must split something.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::incidence::Graph;

use super::check::is_resolving;

pub const DEFAULT_MDIM_LIMIT: usize = 40;

const AUTOMORPHISM_NODE_CAP: u64 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricDimension {
    /// Size of `set`; the metric dimension when `optimal`.
    pub dimension: usize,
    pub set: Vec<usize>,
    pub optimal: bool,
    pub lower_bound: usize,
    pub nodes: u64,
}

/// Smallest `b` with `D^b + b >= n`: a set of `b` landmarks sees at most
/// `D^b` distinct vectors off the set.
pub fn diameter_lower_bound(n: usize, diameter: usize) -> usize {
    if n <= 1 {
        return 0;
    }
    (1..n)
        .find(|&b| {
            let reach = (diameter as u128).checked_pow(b as u32).unwrap_or(u128::MAX);
            reach.saturating_add(b as u128) >= n as u128
        })
        .unwrap_or(n - 1)
}

fn connected_diameter(g: &Graph) -> Result<usize> {
    match g.diameter() {
        Some(d) => Ok(d as usize),
        None if g.n() == 0 => Ok(0),
        None => Err(Error::Precondition("graph is disconnected".into())),
    }
}

/// Partition of the vertices by distance vector to the chosen landmarks.
#[derive(Clone)]
struct Partition {
    class: Vec<u32>,
    count: usize,
}

impl Partition {
    fn trivial(n: usize) -> Self {
        Partition {
            class: vec![0; n],
            count: usize::from(n > 0),
        }
    }

    fn refine(&self, g: &Graph, landmark: usize, width: usize, scratch: &mut Vec<u32>) -> Partition {
        scratch.clear();
        scratch.resize(self.count * width, u32::MAX);
        let row = g.dist_row(landmark);
        let mut next = 0u32;
        let class = self
            .class
            .iter()
            .zip(row)
            .map(|(&c, &d)| {
                let slot = &mut scratch[c as usize * width + d as usize];
                if *slot == u32::MAX {
                    *slot = next;
                    next += 1;
                }
                *slot
            })
            .collect();
        Partition {
            class,
            count: next as usize,
        }
    }

    fn largest_class(&self, scratch: &mut Vec<u32>) -> usize {
        scratch.clear();
        scratch.resize(self.count, 0);
        for &c in &self.class {
            scratch[c as usize] += 1;
        }
        scratch.iter().copied().max().unwrap_or(0) as usize
    }
}

/// An automorphism of `g` sending `from` to `to`, found by backtracking
/// over distance-preserving partial maps. `None` if none exists or the
/// search cap was hit.
pub fn find_automorphism(g: &Graph, from: usize, to: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut sorted_from = g.dist_row(from).to_vec();
    let mut sorted_to = g.dist_row(to).to_vec();
    sorted_from.sort_unstable();
    sorted_to.sort_unstable();
    if sorted_from != sorted_to {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| (g.dist(from, u), u));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    image[from] = to;
    used[to] = true;
    let mut nodes = 0u64;
    if extend(g, &order, 1, &mut image, &mut used, &mut nodes) {
        Some(image)
    } else {
        None
    }
}

fn extend(
    g: &Graph,
    order: &[usize],
    j: usize,
    image: &mut [usize],
    used: &mut [bool],
    nodes: &mut u64,
) -> bool {
    *nodes += 1;
    if *nodes > AUTOMORPHISM_NODE_CAP {
        return false;
    }
    if j == order.len() {
        return true;
    }
    let u = order[j];
    for c in 0..g.n() {
        if used[c] || g.degree(c) != g.degree(u) {
            continue;
        }
        if order[..j].iter().all(|&x| g.dist(u, x) == g.dist(c, image[x])) {
            image[u] = c;
            used[c] = true;
            if extend(g, order, j + 1, image, used, nodes) {
                return true;
            }
            used[c] = false;
            image[u] = usize::MAX;
        }
    }
    false
}

fn find_root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbit label of every vertex: the smallest vertex known to be in the same
/// orbit.
pub fn vertex_orbits(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    for w in 1..n {
        let mut reps: Vec<usize> = (0..w).filter(|&r| find_root(&mut parent, r) == r).collect();
        reps.retain(|&r| r != find_root(&mut parent, w));
        for r in reps {
            if find_root(&mut parent, w) == find_root(&mut parent, r) {
                break;
            }
            if let Some(sigma) = find_automorphism(g, r, w) {
                for (u, &s) in sigma.iter().enumerate() {
                    let (a, b) = (find_root(&mut parent, u), find_root(&mut parent, s));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    (0..n).map(|u| find_root(&mut parent, u)).collect()
}

struct Pruned<'a> {
    g: &'a Graph,
    width: usize,
    nodes: u64,
    scratch: Vec<u32>,
}

impl Pruned<'_> {
    fn dfs(&mut self, part: &Partition, cands: &[usize], start: usize, left: usize, chosen: &mut Vec<usize>) -> bool {
        self.nodes += 1;
        if part.count == self.g.n() {
            return true;
        }
        if left == 0 {
            return false;
        }
        let cap = (self.width as u128).checked_pow(left as u32).unwrap_or(u128::MAX);
        if part.largest_class(&mut self.scratch) as u128 > cap {
            return false;
        }
        for i in start..cands.len() {
            let c = cands[i];
            let next = part.refine(self.g, c, self.width, &mut self.scratch);
            if next.count == part.count {
                continue;
            }
            chosen.push(c);
            if self.dfs(&next, cands, i + 1, left - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

fn search_exact(g: &Graph, diameter: usize) -> (Vec<usize>, u64) {
    let n = g.n();
    let orbits = vertex_orbits(g);
    let reps: Vec<usize> = (0..n).filter(|&u| orbits[u] == u).collect();
    let mut solver = Pruned {
        g,
        width: diameter + 1,
        nodes: 0,
        scratch: Vec::new(),
    };
    let lower = diameter_lower_bound(n, diameter).max(1);
    for size in lower..n {
        for (i, &r) in reps.iter().enumerate() {
            // sets meeting an earlier representative's orbit were covered there
            let skip = &reps[..i];
            let cands: Vec<usize> = (0..n)
                .filter(|&u| u != r && !skip.contains(&orbits[u]))
                .collect();
            let start = Partition::trivial(n).refine(g, r, solver.width, &mut solver.scratch);
            let mut chosen = vec![r];
            if solver.dfs(&start, &cands, 0, size - 1, &mut chosen) {
                chosen.sort_unstable();
                return (chosen, solver.nodes);
            }
        }
    }
    ((0..n.saturating_sub(1)).collect(), solver.nodes)
}

/// Repeatedly adds the vertex that yields the most distance classes,
/// lowest index on ties.
pub fn greedy_resolving_set(g: &Graph) -> Result<Vec<usize>> {
    let d = connected_diameter(g)?;
    let n = g.n();
    let mut part = Partition::trivial(n);
    let mut scratch = Vec::new();
    let mut chosen = Vec::new();
    while part.count < n {
        let (best, next) = (0..n)
            .filter(|u| !chosen.contains(u))
            .map(|u| (u, part.refine(g, u, d + 1, &mut scratch)))
            .fold(None::<(usize, Partition)>, |acc, (u, p)| match acc {
                Some((bu, bp)) if bp.count >= p.count => Some((bu, bp)),
                _ => Some((u, p)),
            })
            .expect("unresolved vertices remain");
        chosen.push(best);
        part = next;
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Exact metric dimension for graphs with at most `limit` vertices; larger
/// graphs get a greedy upper bound and the diameter lower bound, flagged
/// non-optimal unless the two meet.
pub fn metric_dimension(g: &Graph, limit: usize) -> Result<MetricDimension> {
    let d = connected_diameter(g)?;
    let n = g.n();
    let lower = diameter_lower_bound(n, d);
    if n <= 1 {
        return Ok(MetricDimension {
            dimension: 0,
            set: Vec::new(),
            optimal: true,
            lower_bound: 0,
            nodes: 0,
        });
    }
    let (set, optimal, nodes) = if n > limit {
        let set = greedy_resolving_set(g)?;
        let optimal = set.len() == lower;
        (set, optimal, 0)
    } else {
        let (set, nodes) = search_exact(g, d);
        (set, true, nodes)
    };
    debug_assert!(is_resolving(g, &set).map(|r| r.is_resolved()).unwrap_or(false));
    Ok(MetricDimension {
        dimension: set.len(),
        lower_bound: if optimal { set.len() } else { lower },
        set,
        optimal,
        nodes,
    })
}

/// Lexicographic next `k`-subset of `0..n`; `false` after the last one.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Baseline: the lexicographically first resolving set of minimum size,
/// by plain enumeration.
pub fn metric_dimension_lexicographic(g: &Graph) -> Result<Vec<usize>> {
    connected_diameter(g)?;
    let n = g.n();
    for k in 0..=n {
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            if is_resolving(g, &c)?.is_resolved() {
                return Ok(c);
            }
            if !next_combination(&mut c, n) {
                break;
            }
        }
    }
    unreachable!("the full vertex set resolves every graph")
}
