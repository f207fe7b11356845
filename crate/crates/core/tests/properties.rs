mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use metdim::bounds::{
    binomial, design_expectation, exhaustive_success, expected_unresolved_std, monte_carlo_success, sweep_symmetric,
    sweep_transversal, EXHAUSTIVE_LIMIT,
};
use metdim::designs::{biaffine_plane, projective_plane, trivial_design, Design};
use metdim::incidence::{cycle, hypercube, incidence_graph, Graph};
use metdim::resolve::{
    greedy_semi_resolving, is_resolving, metric_dimension, metric_dimension_lexicographic, paper_sample_size,
    sample_subset, semi_resolves_blocks_by_distance, semi_resolves_points_by_distance, split_resolving, Method,
    PencilTable, DEFAULT_MDIM_LIMIT,
};

use common::{corpus, small_corpus};

#[test]
fn characterizations_agree_on_random_subsets() {
    for c in corpus() {
        let d = &c.design;
        let g = incidence_graph(d).unwrap();
        let points = PencilTable::for_points(d);
        let blocks = PencilTable::for_blocks(d);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let s = rng.random_range(0..=d.num_blocks());
            let set = sample_subset(&mut rng, d.num_blocks(), s);
            let by_pencil = points.is_semi_resolving(&set);
            let by_distance = semi_resolves_points_by_distance(&g, &set).unwrap();
            assert_eq!(by_pencil, by_distance, "{} {set:?}", c.name);
            let by_pencil = blocks.is_semi_resolving(&set);
            let by_distance = semi_resolves_blocks_by_distance(&g, &set).unwrap();
            assert_eq!(by_pencil, by_distance, "{} dual {set:?}", c.name);
        }
    }
}

#[test]
fn semi_resolving_sides_resolve_the_graph() {
    for c in corpus() {
        let d = &c.design;
        let g = incidence_graph(d).unwrap();
        let on_points = greedy_semi_resolving(d).unwrap();
        let on_blocks = greedy_semi_resolving(&d.dual().unwrap()).unwrap();
        let mut set: Vec<usize> = on_blocks;
        set.extend(on_points.iter().map(|&b| g.block_vertex(b)));
        assert!(is_resolving(&g, &set).unwrap().is_resolved(), "{}", c.name);
    }
}

#[test]
fn dimension_at_most_split_size() {
    for c in small_corpus() {
        let d = &c.design;
        let g = incidence_graph(d).unwrap();
        if g.n() > DEFAULT_MDIM_LIMIT {
            continue;
        }
        let mu = metric_dimension(&g, DEFAULT_MDIM_LIMIT).unwrap();
        assert!(mu.optimal);
        let split = split_resolving(d, &Method::Greedy).unwrap();
        assert!(mu.dimension <= split.set.len(), "{}", c.name);
    }
}

#[test]
fn pruned_dimension_matches_lexicographic_on_small_graphs() {
    let mut graphs: Vec<(String, Graph)> = vec![
        ("C8".into(), cycle(8).unwrap()),
        ("C9".into(), cycle(9).unwrap()),
        ("Q3".into(), hypercube(3).unwrap()),
        ("Q4".into(), hypercube(4).unwrap()),
    ];
    for c in small_corpus() {
        let g = incidence_graph(&c.design).unwrap();
        if g.n() <= 20 {
            graphs.push((c.name, g.graph().clone()));
        }
    }
    for v in 3..=6 {
        let g = incidence_graph(&trivial_design(v).unwrap().into()).unwrap();
        graphs.push((format!("K{v},{v}-I"), g.graph().clone()));
    }
    for (name, g) in graphs {
        let pruned = metric_dimension(&g, DEFAULT_MDIM_LIMIT).unwrap();
        let lex = metric_dimension_lexicographic(&g).unwrap();
        assert_eq!(pruned.dimension, lex.len(), "{name}");
        assert!(is_resolving(&g, &pruned.set).unwrap().is_resolved());
    }
}

#[test]
fn monte_carlo_respects_markov() {
    for c in corpus() {
        let d = &c.design;
        let Ok(s) = paper_sample_size(d) else { continue };
        let (_, upper) = design_expectation(d, s).unwrap();
        let mc = monte_carlo_success(d, s, 500, 3).unwrap();
        let floor = 1.0 - upper.to_f64().unwrap() - 3.0 * mc.stderr;
        assert!(mc.rate >= floor, "{}: rate {} < {floor}", c.name, mc.rate);
        assert!(mc.rate > 0.0, "{}", c.name);
    }
}

#[test]
fn monte_carlo_batches_agree() {
    let cases: Vec<(Design, usize)> = vec![
        (projective_plane(2).unwrap().into(), 3),
        (projective_plane(3).unwrap().into(), 6),
        (projective_plane(4).unwrap().into(), 9),
        (biaffine_plane(3).unwrap().into(), 5),
    ];
    for (d, s) in cases {
        let a = monte_carlo_success(&d, s, 500, 100).unwrap();
        let b = monte_carlo_success(&d, s, 500, 200).unwrap();
        let se = (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
        assert!((a.rate - b.rate).abs() <= 3.0 * se, "{}: {} vs {}", d.header(), a.rate, b.rate);
    }
}

#[test]
fn expectation_matches_exhaustive_average() {
    for c in corpus() {
        let d = &c.design;
        let nb = d.num_blocks();
        for s in 0..=nb {
            if binomial(nb, s) > BigInt::from(EXHAUSTIVE_LIMIT) {
                continue;
            }
            let (exact, _) = design_expectation(d, s).unwrap();
            let brute = exhaustive_success(d, s).unwrap();
            assert_eq!(exact, brute.mean_unresolved, "{} s = {s}", c.name);
            // Markov: Pr(N = 0) >= 1 - E(N)
            let rate = BigRational::new(brute.successes.into(), brute.subsets.into());
            assert!(rate >= BigRational::one() - &exact, "{} s = {s}", c.name);
        }
    }
}

#[test]
fn expectation_below_one_at_sample_size() {
    for c in corpus() {
        let Ok(s) = paper_sample_size(&c.design) else { continue };
        let (exact, upper) = design_expectation(&c.design, s).unwrap();
        assert!(exact <= upper);
        assert!(upper < BigRational::one(), "{}", c.name);
    }
    for row in sweep_symmetric(500).unwrap() {
        assert!(row.e_float < 1.0, "{row:?}");
    }
    for row in sweep_transversal(500).unwrap() {
        if !matches!((row.lambda, row.g.unwrap()), (1, 2) | (1, 3) | (2, 2)) {
            assert!(row.e_float < 1.0, "{row:?}");
        }
    }
}

#[test]
fn transversal_exact_strictly_below_upper() {
    for c in common::transversal_corpus() {
        let Design::Transversal(t) = &c.design else { unreachable!() };
        let (g, k, lambda) = (t.g(), t.k(), t.lambda());
        let v = t.v();
        for s in 1..=v - 2 * (k - lambda) {
            let (exact, upper) = expected_unresolved_std(g, k, lambda, s).unwrap();
            assert!(exact < upper, "{} s = {s}", c.name);
        }
    }
}

fn fano() -> Design {
    projective_plane(2).unwrap().into()
}

proptest! {
    #[test]
    fn supersets_stay_semi_resolving(mask in 0u32..(1 << 13), extra in 0usize..13) {
        let d: Design = projective_plane(3).unwrap().into();
        let table = PencilTable::for_points(&d);
        let set: Vec<usize> = (0..13).filter(|i| mask >> i & 1 == 1).collect();
        let mut bigger = set.clone();
        if !bigger.contains(&extra) {
            bigger.push(extra);
            bigger.sort_unstable();
        }
        if table.is_semi_resolving(&set).is_resolved() {
            prop_assert!(table.is_semi_resolving(&bigger).is_resolved());
        }
        prop_assert!(table.unresolved_pairs(&bigger) <= table.unresolved_pairs(&set));
    }

    #[test]
    fn supersets_stay_resolving(mask in 0u32..(1 << 14), extra in 0usize..14) {
        let g = incidence_graph(&fano()).unwrap();
        let set: Vec<usize> = (0..14).filter(|i| mask >> i & 1 == 1).collect();
        let mut bigger = set.clone();
        if !bigger.contains(&extra) {
            bigger.push(extra);
        }
        if is_resolving(&g, &set).unwrap().is_resolved() {
            prop_assert!(is_resolving(&g, &bigger).unwrap().is_resolved());
        }
    }

    #[test]
    fn random_graphs_pruned_equals_lexicographic(
        n in 2usize..10,
        extra in proptest::collection::vec((0usize..10, 0usize..10), 0..12),
    ) {
        // a path keeps the graph connected; extra chords vary its shape
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        for (a, b) in extra {
            let (a, b) = (a % n, b % n);
            let e = (a.min(b), a.max(b));
            if a != b && !edges.contains(&e) {
                edges.push(e);
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        let pruned = metric_dimension(&g, DEFAULT_MDIM_LIMIT).unwrap();
        let lex = metric_dimension_lexicographic(&g).unwrap();
        prop_assert_eq!(pruned.dimension, lex.len());
        prop_assert!(is_resolving(&g, &pruned.set).unwrap().is_resolved());
    }
}
