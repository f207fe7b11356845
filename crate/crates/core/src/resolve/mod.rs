//! Resolving sets of incidence graphs.
//!
//! Two routes decide whether a block set `S` semi-resolves the points of a
//! design: the distance route compares distance vectors in the incidence
//! graph, the pencil route checks that `S` meets every `B(x) △ B(y)`.
//! They agree on symmetric designs and STDs; the verifiers run both.

mod check;
mod hitting;
mod mdim;
mod pencil;
mod semi;
mod split;
mod witness;

pub use check::{distance_vector, is_resolving, semi_resolves_blocks_by_distance, semi_resolves_points_by_distance};
pub use hitting::{
    min_hitting_set, min_semi_resolving, min_semi_resolving_with_limit, ExactOutcome, DEFAULT_EXACT_LIMIT,
    DEFAULT_NODE_BUDGET,
};
pub use mdim::{
    diameter_lower_bound, find_automorphism, greedy_resolving_set, metric_dimension, metric_dimension_lexicographic,
    vertex_orbits, MetricDimension, DEFAULT_MDIM_LIMIT,
};
pub use pencil::{pair_from_index, pair_index, symm_diff_sizes, PencilTable, Resolution};
pub use semi::{
    greedy_semi_resolving, is_semi_resolving, paper_sample_size, randomized_semi_resolving, sample_size,
    sample_subset, trial_rng, RandomizedOutcome, DEFAULT_MAX_RETRIES,
};
pub use split::{split_resolving, Method, SplitReport, SplitResolvingSet};
pub use witness::{parse_witness, verify_on_graph, verify_witness, write_witness, Role, VerifyReport, Witness};
