mod common;

use kneser_core::bounds::triangular_root;
use kneser_core::representation::{
    is_convex, is_up_monotone, kg1_clique_test, represent_up_monotone, verify_representation, CliqueVerdict,
};
use kneser_core::{build_kneser, up_monotone_closure, GroundContext, KneserInstance, MultisetEdge, Variant};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closures_on_four_vertices_round_trip(h in common::hypergraph(4, 3..=4, true)) {
        let closed = up_monotone_closure(&h, h.r()).unwrap();
        prop_assert!(is_up_monotone(&closed).unwrap());
        let rep = represent_up_monotone(&closed).unwrap();
        prop_assert!(verify_representation(&closed, &rep).unwrap());
    }

    #[test]
    fn kneser_hypergraphs_are_convex(system in common::system(5, 2, 7), r in 3usize..=4) {
        let kg = build_kneser(&KneserInstance::new(system.clone(), r, Variant::WithMultiplicities).unwrap()).unwrap();
        prop_assert!(is_convex(&kg).unwrap());
        // with s = r - 1 everywhere the result is also up-monotone
        let ground = GroundContext::uniform(system.ground().n(), r as u32 - 1).unwrap();
        let top = KneserInstance::new(system.with_ground(ground).unwrap(), r, Variant::WithMultiplicities).unwrap();
        prop_assert!(is_up_monotone(&build_kneser(&top).unwrap()).unwrap());
    }

    #[test]
    fn closure_keeps_the_chromatic_number(h in common::hypergraph(6, 2..=3, true)) {
        let closed = up_monotone_closure(&h, h.r()).unwrap();
        prop_assert_eq!(common::chi(&closed), common::chi(&h));
    }

    #[test]
    fn clique_verdicts_are_consistent(h in common::hypergraph(6, 2..=3, false)) {
        let test = kg1_clique_test(&h).unwrap();
        match test.verdict {
            CliqueVerdict::Representable { system } => {
                let kg = build_kneser(&KneserInstance::new(system, h.r(), Variant::WithoutMultiplicities).unwrap()).unwrap();
                prop_assert_eq!(kg.edges(), h.edges());
            }
            CliqueVerdict::MissingClique(c) => {
                prop_assert!(!h.contains_edge(&MultisetEdge::new(c.clone())));
                for (i, &u) in c.iter().enumerate() {
                    for &v in &c[i + 1..] {
                        prop_assert!(test.graph.contains(&(u, v)));
                    }
                }
            }
        }
    }
}

#[test]
fn deleting_an_edge_from_a_clique_complex_is_detected() {
    // all triangles of K_4, then one removed
    let all = kneser_core::complete_hypergraph(4, 3, false).unwrap();
    assert!(kg1_clique_test(&all).unwrap().representable());
    for e in all.edges() {
        assert!(!kg1_clique_test(&all.without_edge(e)).unwrap().representable());
    }
}

#[test]
fn triangular_root_matches_floating_point_up_to_a_million() {
    for n in 0..=1_000_000u64 {
        let float = ((2.0 * n as f64 + 0.25).sqrt() - 0.5).floor() as u64;
        assert_eq!(triangular_root(n), float, "n = {n}");
    }
}
