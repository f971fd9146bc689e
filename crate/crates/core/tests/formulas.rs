mod common;

use common::{brute_extremal, suite};
use proptest::prelude::*;
use turan_core::constructions::{
    extremal_construction, order4_edge_count, order4_extremal, star_extremal,
};
use turan_core::formulas::{
    goldberg_counterexample, linear_forest_number, same_order_number, single_star_number,
    star_forest_number, star_terms,
};
use turan_core::{find_embedding, turan_formula, ForestSpec, Order4Variant};

fn spec(s: &str) -> ForestSpec {
    s.parse().unwrap()
}

#[test]
fn equal_paths_agree_with_general_linear_form() {
    for order in 4..=7 {
        for k in 1..=4usize {
            let forest = ForestSpec::paths(&vec![order; k]).unwrap();
            for n in forest.total_vertices() as u64..=60 {
                let same = same_order_number(k as u64, order as u64, n).unwrap().value;
                if k == 1 {
                    // One path has no closed form in the general statement.
                    assert!(linear_forest_number(&forest, n).is_err());
                    continue;
                }
                assert_eq!(
                    linear_forest_number(&forest, n).unwrap().value,
                    same,
                    "{forest} n={n}"
                );
            }
        }
    }
}

#[test]
fn cherries_agree_with_star_form() {
    for k in 1..=5usize {
        let forest = ForestSpec::stars(&vec![2; k]).unwrap();
        for n in forest.total_vertices() as u64..=60 {
            assert_eq!(
                star_forest_number(&forest, n).unwrap().value,
                same_order_number(k as u64, 3, n).unwrap().value,
                "{forest} n={n}"
            );
        }
    }
}

#[test]
fn suite_formulas_are_monotone_in_n() {
    for forest in suite() {
        let values: Vec<u64> = (forest.total_vertices()..=60)
            .map(|n| turan_formula(&forest, n as u64).unwrap().value)
            .collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "{forest}");
    }
}

#[test]
fn suite_constructions_realise_the_formula() {
    for forest in suite() {
        for n in forest.total_vertices()..=60 {
            let c = extremal_construction(&forest, n).unwrap();
            let value = turan_formula(&forest, n as u64).unwrap().value;
            assert_eq!(c.graph.edge_count() as u64, value, "{forest} n={n}");
            assert!(
                find_embedding(&c.graph, &forest).is_none(),
                "{forest} n={n}"
            );
        }
    }
}

#[test]
fn every_star_term_is_realised_by_a_free_graph() {
    for text in ["S3+S2", "2*S3", "3*S2", "S5+S1", "S4+S2+S1"] {
        let forest = spec(text);
        for n in forest.total_vertices()..=40 {
            for (i, term) in star_terms(&forest, n as u64).unwrap() {
                let c = star_extremal(&forest, n, i).unwrap();
                assert_eq!(c.graph.edge_count() as u64, term, "{forest} n={n} i={i}");
                assert!(
                    find_embedding(&c.graph, &forest).is_none(),
                    "{forest} n={n} i={i}"
                );
            }
        }
    }
}

#[test]
fn both_order4_variants_are_free_with_their_counts() {
    for (a, b) in [(1, 1), (2, 1), (1, 2)] {
        let forest = spec(&format!("{a}*P4+{b}*S3"));
        for n in 4 * (a + b)..=40 {
            for variant in [Order4Variant::G1, Order4Variant::G2] {
                let c = order4_extremal(a, b, n, variant).unwrap();
                assert_eq!(
                    c.graph.edge_count() as u64,
                    order4_edge_count(a as u64, b as u64, n as u64, variant)
                );
                assert!(
                    find_embedding(&c.graph, &forest).is_none(),
                    "{forest} n={n} {variant:?}"
                );
            }
        }
    }
}

#[test]
fn single_star_values_match_brute_force() {
    for d in 1..=4u64 {
        for m in d + 1..=7 {
            let forest = ForestSpec::stars(&[d as usize]).unwrap();
            let (value, _) = brute_extremal(&forest, m as usize);
            assert_eq!(single_star_number(d, m), value, "S{d} on {m}");
        }
    }
}

#[test]
fn double_star_terms_decompose() {
    // Each term is a universal set of i-1 vertices joined to an extremal
    // S_{d_i}-free graph on the rest.
    for text in ["S3+S2", "2*S3", "S6+S4+S1", "3*S2", "S8+S8+S2+S1"] {
        let forest = spec(text);
        let degrees = forest.star_degrees().unwrap();
        for n in forest.total_vertices() as u64..=60 {
            for (i, term) in star_terms(&forest, n).unwrap() {
                let u = i as u64 - 1;
                let rest = n - u;
                let expected = u * (u.saturating_sub(1)) / 2
                    + u * rest
                    + single_star_number(degrees[i - 1] as u64, rest);
                assert_eq!(term, expected);
            }
        }
    }
}

fn arb_star_forest() -> impl Strategy<Value = ForestSpec> {
    proptest::collection::vec(1usize..=8, 1..=5).prop_map(|d| ForestSpec::stars(&d).unwrap())
}

proptest! {
    /// Every index before the chosen maximiser has strictly smaller `f`.
    #[test]
    fn earlier_indices_have_smaller_f(forest in arb_star_forest(), extra in 0u64..40) {
        let n = forest.total_vertices() as u64 + extra;
        let eval = star_forest_number(&forest, n).unwrap();
        let i = eval.argmax_i.unwrap();
        let f = eval.f.unwrap();
        for j in 1..i {
            prop_assert!(f[j - 1] < f[i - 1], "{} n={} i={} j={}", forest, n, i, j);
        }
    }

    #[test]
    fn star_value_is_the_largest_term(forest in arb_star_forest(), extra in 0u64..40) {
        let n = forest.total_vertices() as u64 + extra;
        let eval = star_forest_number(&forest, n).unwrap();
        let terms = star_terms(&forest, n).unwrap();
        prop_assert_eq!(eval.value, terms.iter().map(|&(_, t)| t).max().unwrap());
        for &i in &eval.maximizers {
            prop_assert_eq!(terms[i - 1].1, eval.value);
        }
    }
}

#[test]
fn two_p4_conjecture_witness() {
    let report = goldberg_counterexample(&spec("2*P4"), 20).unwrap().unwrap();
    assert_eq!(report.witness_n, 13);
    assert_eq!(report.witness_edges, 33);
    assert_eq!(report.avg_degree.to_string(), "66/13");
    assert!(report.avg_degree.exceeds(report.e_f - 1));
    assert!(find_embedding(&report.witness, &spec("2*P4")).is_none());
    // Nothing smaller qualifies: 2(3n-6)/n > 5 forces n >= 13.
    for n in 8..13u64 {
        assert!(2 * (3 * n - 6) <= 5 * n);
    }
}

#[test]
fn conjecture_scans_other_forests() {
    let matching = goldberg_counterexample(&spec("2*P2"), 20).unwrap().unwrap();
    assert_eq!(matching.witness_n, 4);
    assert!(goldberg_counterexample(&spec("P5+P3"), 20)
        .unwrap()
        .is_none());
}
