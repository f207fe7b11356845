use std::collections::VecDeque;
use std::ops::Deref;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::designs::Design;
use crate::error::{Error, Result};

/// Marker for "no path" in the distance matrix.
pub const UNREACHABLE: u8 = u8::MAX;

/// Simple undirected graph with an eagerly computed distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<u32>>,
    dist: Vec<u8>,
}

impl Graph {
    /// Builds the graph and runs BFS from every vertex. Loops and repeated
    /// edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, w) in edges {
            if u >= n || w >= n {
                return Err(Error::Precondition(format!(
                    "edge ({u}, {w}) out of range for {n} vertices"
                )));
            }
            if u == w {
                return Err(Error::Precondition(format!("loop at vertex {u}")));
            }
            adj[u].push(w as u32);
            adj[w].push(u as u32);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|p| p[0] == p[1]) {
                return Err(Error::Precondition(format!(
                    "repeated edge at vertex {u}"
                )));
            }
        }
        let rows: Vec<Vec<u8>> = (0..n)
            .into_par_iter()
            .map(|s| bfs(&adj, s))
            .collect::<Result<_>>()?;
        Ok(Graph {
            n,
            adj,
            dist: rows.concat(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, w)` with `u < w`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .map(|&w| w as usize)
                .filter(move |&w| u < w)
                .map(move |w| (u, w))
        })
    }

    #[inline]
    pub fn dist(&self, u: usize, w: usize) -> u8 {
        self.dist[u * self.n + w]
    }

    /// Row `u` of the distance matrix.
    pub fn dist_row(&self, u: usize) -> &[u8] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        !self.dist.contains(&UNREACHABLE)
    }

    /// `None` when disconnected.
    pub fn diameter(&self) -> Option<u8> {
        if self.n == 0 || !self.is_connected() {
            return None;
        }
        self.dist.iter().copied().max()
    }

    /// Shortest cycle length, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut depth = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            depth[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    let w = w as usize;
                    if depth[w] == usize::MAX {
                        depth[w] = depth[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = depth[u] + depth[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

fn bfs(adj: &[Vec<u32>], s: usize) -> Result<Vec<u8>> {
    let mut row = vec![UNREACHABLE; adj.len()];
    row[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let next = row[u] + 1;
        if next == UNREACHABLE {
            return Err(Error::Precondition(format!(
                "distance from {s} exceeds {}",
                UNREACHABLE - 1
            )));
        }
        for &w in &adj[u] {
            if row[w as usize] == UNREACHABLE {
                row[w as usize] = next;
                queue.push_back(w as usize);
            }
        }
    }
    Ok(row)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Point,
    Block,
}

/// Incidence graph of a point/block structure: vertices `0..v` are the
/// points, `v..v+b` the blocks, and point `x` is adjacent to block `B` iff
/// `x ∈ B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    graph: Graph,
    points: usize,
}

impl IncidenceGraph {
    /// Incidence graph of any point/block structure, no validation.
    pub fn from_blocks(points: usize, blocks: &[FixedBitSet]) -> Result<Self> {
        let edges: Vec<(usize, usize)> = blocks
            .iter()
            .enumerate()
            .flat_map(|(b, set)| set.ones().map(move |x| (x, points + b)))
            .collect();
        let graph = Graph::from_edges(points + blocks.len(), &edges)?;
        Ok(IncidenceGraph { graph, points })
    }

    pub fn num_points(&self) -> usize {
        self.points
    }

    pub fn num_blocks(&self) -> usize {
        self.graph.n - self.points
    }

    pub fn side(&self, u: usize) -> Side {
        if u < self.points {
            Side::Point
        } else {
            Side::Block
        }
    }

    /// Vertex index of block `b`.
    pub fn block_vertex(&self, b: usize) -> usize {
        self.points + b
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Blocks read back from the block-side neighborhoods.
    pub fn recover_blocks(&self) -> Vec<FixedBitSet> {
        (0..self.num_blocks())
            .map(|b| {
                let mut set = FixedBitSet::with_capacity(self.points);
                set.extend(self.graph.neighbors(self.points + b).iter().map(|&x| x as usize));
                set
            })
            .collect()
    }
}

impl Deref for IncidenceGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.graph
    }
}

/// Incidence graph of a design that validates.
pub fn incidence_graph(d: &Design) -> Result<IncidenceGraph> {
    d.validate().into_result()?;
    IncidenceGraph::from_blocks(d.num_points(), d.blocks())
}

/// Cycle `0 - 1 - .. - (n-1) - 0`.
pub fn cycle(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// `d`-dimensional hypercube on `2^d` vertices.
pub fn hypercube(d: u32) -> Result<Graph> {
    let n = 1usize << d;
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (0..d).map(move |i| (u, u ^ (1 << i))))
        .filter(|&(u, w)| u < w)
        .collect();
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{biaffine_plane, hadamard_std, projective_plane};
    use crate::hadamard::hadamard_matrix;

    #[test]
    fn heawood() {
        let g = incidence_graph(&projective_plane(2).unwrap().into()).unwrap();
        assert_eq!(g.n(), 14);
        assert!((0..14).all(|u| g.degree(u) == 3));
        assert_eq!(g.diameter(), Some(3));
        assert_eq!(g.girth(), Some(6));
    }

    #[test]
    fn biaffine_two_is_eight_cycle() {
        let g = incidence_graph(&biaffine_plane(2).unwrap().into()).unwrap();
        assert_eq!(g.n(), 8);
        assert!((0..8).all(|u| g.degree(u) == 2));
        assert!(g.is_connected());
        assert_eq!(g.diameter(), Some(4));
    }

    #[test]
    fn pappus_shape() {
        let g = incidence_graph(&biaffine_plane(3).unwrap().into()).unwrap();
        assert_eq!(g.n(), 18);
        assert!((0..18).all(|u| g.degree(u) == 3));
        assert_eq!(g.girth(), Some(6));
        assert_eq!(g.diameter(), Some(4));
    }

    #[test]
    fn hadamard_four_is_four_cube_shaped() {
        let g = incidence_graph(&hadamard_std(&hadamard_matrix(4).unwrap()).unwrap().into()).unwrap();
        assert_eq!(g.n(), 16);
        assert!((0..16).all(|u| g.degree(u) == 4));
        assert_eq!(g.diameter(), Some(4));
        assert_eq!(g.girth(), Some(4));
    }

    #[test]
    fn rejects_invalid_design() {
        use crate::designs::SymmetricDesign;
        let bad = SymmetricDesign::new(3, 2, 1, &[vec![0, 1], vec![0, 1], vec![1, 2]]).unwrap();
        assert!(incidence_graph(&bad.into()).is_err());
    }

    #[test]
    fn disconnected_graph() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.diameter(), None);
        assert_eq!(g.dist(0, 2), UNREACHABLE);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn recover_blocks_round_trip() {
        for d in [
            Design::from(projective_plane(3).unwrap()),
            Design::from(biaffine_plane(4).unwrap()),
        ] {
            let g = incidence_graph(&d).unwrap();
            assert_eq!(g.recover_blocks(), d.blocks());
        }
    }

    #[test]
    fn distances_are_a_metric() {
        let g = incidence_graph(&projective_plane(4).unwrap().into()).unwrap();
        let n = g.n();
        for u in 0..n {
            assert_eq!(g.dist(u, u), 0);
            for w in 0..n {
                assert_eq!(g.dist(u, w), g.dist(w, u));
            }
        }
        // spot check the triangle inequality on a fixed sweep of triples
        for u in (0..n).step_by(3) {
            for w in (0..n).step_by(5) {
                for x in (0..n).step_by(7) {
                    assert!(g.dist(u, x) <= g.dist(u, w) + g.dist(w, x));
                }
            }
        }
    }

    #[test]
    fn cube_and_cycle() {
        let c = cycle(8).unwrap();
        assert_eq!(c.diameter(), Some(4));
        let q = hypercube(4).unwrap();
        assert_eq!(q.n(), 16);
        assert_eq!(q.num_edges(), 32);
        assert_eq!(q.diameter(), Some(4));
    }
}
