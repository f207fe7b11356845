#![allow(dead_code)]

use metdim::designs::{biaffine_plane, hadamard_design, hadamard_std, projective_plane, Design};
use metdim::hadamard::hadamard_matrix;

pub const PLANE_ORDERS: [usize; 7] = [2, 3, 4, 5, 7, 8, 9];

pub struct Named {
    pub name: String,
    pub design: Design,
}

fn named(name: String, design: impl Into<Design>) -> Named {
    Named {
        name,
        design: design.into(),
    }
}

pub fn symmetric_corpus() -> Vec<Named> {
    let mut out: Vec<Named> = PLANE_ORDERS
        .iter()
        .map(|&q| named(format!("PG(2,{q})"), projective_plane(q).unwrap()))
        .collect();
    for n in [8, 12, 16, 20] {
        let h = hadamard_matrix(n).unwrap();
        out.push(named(format!("hadamard-design({n})"), hadamard_design(&h).unwrap()));
    }
    out
}

pub fn transversal_corpus() -> Vec<Named> {
    let mut out: Vec<Named> = (2..=5)
        .map(|q| named(format!("biaffine({q})"), biaffine_plane(q).unwrap()))
        .collect();
    for n in [2, 4, 8, 12, 16] {
        let h = hadamard_matrix(n).unwrap();
        out.push(named(format!("hadamard-std({n})"), hadamard_std(&h).unwrap()));
    }
    out
}

pub fn corpus() -> Vec<Named> {
    let mut out = symmetric_corpus();
    out.extend(transversal_corpus());
    out
}

/// Designs small enough for exhaustive or per-subset checks in property tests.
pub fn small_corpus() -> Vec<Named> {
    corpus().into_iter().filter(|d| d.design.num_points() <= 40).collect()
}
