//! Incidence graphs and distance-regularity checks.

mod drg;
mod export;
mod graph;

pub use drg::{classify, intersection_array, Classification, DrgCheck, IntersectionArray, NotDrgWitness};
pub use export::{parse_edge_list, write_edge_list};
pub use graph::{cycle, hypercube, incidence_graph, Graph, IncidenceGraph, Side, UNREACHABLE};
