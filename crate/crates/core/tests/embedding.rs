mod common;

use common::{random_forest, random_graph, random_permutation, suite};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turan_core::constructions::extremal_construction;
use turan_core::{find_embedding, naive_find_embedding, ForestSpec, SmallGraph};

#[test]
fn fast_and_naive_agree_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut found = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=7);
        let p = rng.gen_range(0.2..0.9);
        let g = random_graph(&mut rng, n, p);
        let spec = random_forest(&mut rng, 6);
        let fast = find_embedding(&g, &spec);
        let naive = naive_find_embedding(&g, &spec);
        assert_eq!(
            fast.is_some(),
            naive.is_some(),
            "{spec} in {}",
            g.encode_graph6()
        );
        if let Some(e) = fast {
            assert!(e.is_valid(&g, &spec));
            found += 1;
        }
        if let Some(e) = naive {
            assert!(e.is_valid(&g, &spec));
        }
    }
    // Both outcomes must be well represented for the agreement to mean much.
    assert!((200..800).contains(&found), "found {found}");
}

#[test]
fn agreement_on_dense_larger_hosts() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..300 {
        let n = rng.gen_range(6..=9);
        let p = rng.gen_range(0.15..0.5);
        let g = random_graph(&mut rng, n, p);
        let spec = random_forest(&mut rng, 8);
        assert_eq!(
            find_embedding(&g, &spec).is_some(),
            naive_find_embedding(&g, &spec).is_some(),
            "{spec} in {}",
            g.encode_graph6()
        );
    }
}

#[test]
fn suite_constructions_are_free_up_to_sixty() {
    for spec in suite() {
        for n in spec.total_vertices()..=60 {
            let c = extremal_construction(&spec, n).unwrap();
            assert!(
                find_embedding(&c.graph, &spec).is_none(),
                "{spec} at n = {n}"
            );
        }
    }
}

#[test]
fn one_extra_edge_breaks_small_constructions() {
    // Extremality seen from the other side: at moderate n, adding any
    // missing edge to the construction creates F.
    for spec in suite() {
        let n = spec.total_vertices() + 6;
        let g = extremal_construction(&spec, n).unwrap().graph;
        let missing: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        for (u, v) in missing {
            let mut h = g.clone();
            h.add_edge(u, v);
            assert!(
                find_embedding(&h, &spec).is_some(),
                "{spec}, n = {n}, edge {u}-{v}"
            );
        }
    }
}

fn arb_host() -> impl Strategy<Value = (SmallGraph, u64)> {
    (2usize..=9, any::<u64>(), 0.1f64..0.8).prop_map(|(n, seed, p)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (random_graph(&mut rng, n, p), seed)
    })
}

proptest! {
    #[test]
    fn containment_survives_edge_addition((g, seed) in arb_host()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let spec = random_forest(&mut rng, 7);
        if find_embedding(&g, &spec).is_some() {
            let mut h = g.clone();
            for _ in 0..3 {
                let u = rng.gen_range(0..g.n());
                let v = rng.gen_range(0..g.n());
                if u != v {
                    h.add_edge(u, v);
                }
            }
            prop_assert!(find_embedding(&h, &spec).is_some());
        }
    }

    #[test]
    fn verdict_ignores_host_labels((g, seed) in arb_host()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let spec = random_forest(&mut rng, 7);
        let p = random_permutation(&mut rng, g.n());
        prop_assert_eq!(
            find_embedding(&g, &spec).is_some(),
            find_embedding(&g.permuted(&p), &spec).is_some()
        );
    }

    #[test]
    fn verdict_ignores_component_order((g, seed) in arb_host()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        let spec = random_forest(&mut rng, 7);
        let mut terms: Vec<String> = spec.components().iter().map(|c| c.to_string()).collect();
        terms.reverse();
        let reordered: ForestSpec = terms.join("+").parse().unwrap();
        prop_assert_eq!(&reordered, &spec);
        prop_assert_eq!(
            find_embedding(&g, &spec).is_some(),
            find_embedding(&g, &reordered).is_some()
        );
    }
}
