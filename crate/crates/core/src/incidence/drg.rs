//! Distance-regularity: intersection arrays and the bipartite / antipodal
//! classification.

use std::fmt;

use serde::Serialize;

use super::graph::Graph;

/// `{b_0, .., b_{d-1}; c_1, .., c_d}` together with the `a_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub diameter: usize,
    pub valency: u32,
    /// `c_1 .. c_d`.
    pub c: Vec<u32>,
    /// `a_0 .. a_d`.
    pub a: Vec<u32>,
    /// `b_0 .. b_{d-1}`.
    pub b: Vec<u32>,
}

impl IntersectionArray {
    fn from_rows(c: Vec<u32>, a: Vec<u32>, b: Vec<u32>) -> Self {
        IntersectionArray {
            diameter: c.len(),
            valency: b[0],
            c,
            a,
            b,
        }
    }

    /// Array of the incidence graph of a `(v, k, λ)` symmetric design with
    /// `k < v`: `{*, 1, λ, k; 0, 0, 0, 0; k, k-1, k-λ, *}`.
    pub fn symmetric_design(k: u32, lambda: u32) -> Self {
        Self::from_rows(vec![1, lambda, k], vec![0; 4], vec![k, k - 1, k - lambda])
    }

    /// Array of the incidence graph of an STD_λ[λg; g]:
    /// `{*, 1, λ, λg-1, λg; 0, .., 0; λg, λg-1, λ(g-1), 1, *}`.
    pub fn symmetric_transversal(lambda: u32, g: u32) -> Self {
        let k = lambda * g;
        Self::from_rows(
            vec![1, lambda, k - 1, k],
            vec![0; 5],
            vec![k, k - 1, lambda * (g - 1), 1],
        )
    }

    /// `c_i + a_i + b_i = k` wherever all three are defined.
    pub fn is_consistent(&self) -> bool {
        let k = self.valency;
        let d = self.diameter;
        self.c.first() == Some(&1)
            && self.a.first() == Some(&0)
            && (0..=d).all(|i| {
                let c = if i == 0 { 0 } else { self.c[i - 1] };
                let b = if i == d { 0 } else { self.b[i] };
                c + self.a[i] + b == k
            })
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |xs: &[u32]| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "{{*,{}; {}; {},*}}",
            row(&self.c),
            row(&self.a),
            row(&self.b)
        )
    }
}

/// Vertices `w` at distance `distance` from `u` whose neighbor tally
/// `(c, a, b)` disagrees with `expected`, the tally of an earlier pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotDrgWitness {
    pub u: usize,
    pub w: usize,
    pub distance: usize,
    pub expected: (u32, u32, u32),
    pub found: (u32, u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum DrgCheck {
    DistanceRegular(IntersectionArray),
    NotDistanceRegular(NotDrgWitness),
    Disconnected,
}

impl DrgCheck {
    pub fn array(&self) -> Option<&IntersectionArray> {
        match self {
            DrgCheck::DistanceRegular(a) => Some(a),
            _ => None,
        }
    }
}

/// Tallies, for every ordered pair `(u, w)` at distance `i`, the neighbors
/// of `w` at distances `i-1`, `i`, `i+1` from `u`. The first pair (in
/// vertex-index order) disagreeing with an earlier tally is the witness.
pub fn intersection_array(g: &Graph) -> DrgCheck {
    let Some(d) = g.diameter() else {
        return DrgCheck::Disconnected;
    };
    let d = d as usize;
    let mut seen: Vec<Option<(u32, u32, u32)>> = vec![None; d + 1];
    for u in 0..g.n() {
        let row = g.dist_row(u);
        for w in 0..g.n() {
            let i = row[w] as usize;
            let mut tally = (0u32, 0u32, 0u32);
            for &x in g.neighbors(w) {
                let j = row[x as usize] as usize;
                if j + 1 == i {
                    tally.0 += 1;
                } else if j == i {
                    tally.1 += 1;
                } else {
                    tally.2 += 1;
                }
            }
            match seen[i] {
                None => seen[i] = Some(tally),
                Some(expected) if expected != tally => {
                    return DrgCheck::NotDistanceRegular(NotDrgWitness {
                        u,
                        w,
                        distance: i,
                        expected,
                        found: tally,
                    })
                }
                Some(_) => {}
            }
        }
    }
    let rows: Vec<(u32, u32, u32)> = seen.into_iter().map(Option::unwrap).collect();
    DrgCheck::DistanceRegular(IntersectionArray::from_rows(
        rows[1..].iter().map(|t| t.0).collect(),
        rows.iter().map(|t| t.1).collect(),
        rows[..d].iter().map(|t| t.2).collect(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub bipartite: bool,
    pub antipodal: bool,
    pub diameter: Option<usize>,
}

/// Bipartite by 2-colouring; antipodal iff "distance 0 or d" is an
/// equivalence relation, whose classes are then cliques of the distance-d
/// graph.
pub fn classify(g: &Graph) -> Classification {
    let n = g.n();
    let mut colour = vec![u8::MAX; n];
    let mut bipartite = true;
    for s in 0..n {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                let w = w as usize;
                if colour[w] == u8::MAX {
                    colour[w] = 1 - colour[u];
                    stack.push(w);
                } else if colour[w] == colour[u] {
                    bipartite = false;
                }
            }
        }
    }

    let diameter = g.diameter().map(usize::from);
    let antipodal = match diameter {
        None | Some(0) => false,
        Some(d) => {
            let d = d as u8;
            (0..n).all(|u| {
                let far: Vec<usize> = (0..n).filter(|&w| g.dist(u, w) == d).collect();
                far.iter()
                    .all(|&w| far.iter().all(|&x| x == w || g.dist(w, x) == d))
            })
        }
    };
    Classification {
        bipartite,
        antipodal,
        diameter,
    }
}
