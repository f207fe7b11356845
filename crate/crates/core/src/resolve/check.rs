//! Distance-vector checks on graphs.

use crate::error::{Error, Result};
use crate::incidence::{Graph, IncidenceGraph};

use super::pencil::{first_collision, Resolution};

fn check_range(n: usize, s: &[usize]) -> Result<()> {
    match s.iter().find(|&&x| x >= n) {
        Some(x) => Err(Error::Precondition(format!(
            "landmark {x} out of range 0..{n}"
        ))),
        None => Ok(()),
    }
}

/// Distances from `u` to each landmark, in landmark order.
pub fn distance_vector(g: &Graph, u: usize, landmarks: &[usize]) -> Vec<u8> {
    let row = g.dist_row(u);
    landmarks.iter().map(|&x| row[x]).collect()
}

/// Whether the distance vectors to `s` are pairwise distinct over all
/// vertices; otherwise the smallest colliding pair.
pub fn is_resolving(g: &Graph, s: &[usize]) -> Result<Resolution> {
    check_range(g.n(), s)?;
    Ok(first_collision((0..g.n()).map(|u| distance_vector(g, u, s))))
}

/// Distance route for semi-resolving sets of points: block landmarks
/// `blocks` (block indices) must give distinct vectors to all point
/// vertices.
pub fn semi_resolves_points_by_distance(g: &IncidenceGraph, blocks: &[usize]) -> Result<Resolution> {
    check_range(g.num_blocks(), blocks)?;
    let landmarks: Vec<usize> = blocks.iter().map(|&b| g.block_vertex(b)).collect();
    Ok(first_collision(
        (0..g.num_points()).map(|x| distance_vector(g, x, &landmarks)),
    ))
}

/// Distance route for semi-resolving sets of blocks; the collision, if any,
/// is reported in block indices.
pub fn semi_resolves_blocks_by_distance(g: &IncidenceGraph, points: &[usize]) -> Result<Resolution> {
    check_range(g.num_points(), points)?;
    Ok(first_collision(
        (0..g.num_blocks()).map(|b| distance_vector(g, g.block_vertex(b), points)),
    ))
}
