#![allow(dead_code)]

use kneser_core::{
    chromatic_number, ColorClassOracle, GroundContext, Hypergraph, KneserInstance, MultisetEdge, SearchBudget,
    SetSystem, Subset, Variant,
};
use proptest::prelude::*;

/// Set systems over `[1..=max_n]` with multiplicities in `1..=max_s` and at
/// most `max_members` distinct non-empty members.
pub fn system(max_n: usize, max_s: u32, max_members: usize) -> impl Strategy<Value = SetSystem> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            (
                proptest::collection::vec(1..=max_s, n),
                proptest::collection::btree_set(1u128..1 << n, 1..=max_members.min((1 << n) - 1)),
            )
        })
        .prop_map(|(s, bits)| {
            SetSystem::new(GroundContext::new(s).unwrap(), bits.into_iter().map(Subset::from_bits).collect()).unwrap()
        })
}

/// Random `r`-uniform hypergraphs on `n` vertices drawn from the complete one.
pub fn hypergraph(max_n: usize, rs: std::ops::RangeInclusive<usize>, multiset: bool) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n, rs)
        .prop_flat_map(move |(n, r)| {
            let all = kneser_core::complete_hypergraph(n, r, multiset).unwrap();
            let count = all.edge_count();
            (Just(all), proptest::collection::vec(any::<bool>(), count))
        })
        .prop_map(|(all, keep)| {
            let edges: Vec<MultisetEdge> =
                all.edges().iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e.clone()).collect();
            Hypergraph::new(all.vertex_count(), all.r(), edges, all.multiset_allowed()).unwrap()
        })
}

pub fn chi(h: &Hypergraph) -> usize {
    chromatic_number(&ColorClassOracle::explicit(h).unwrap(), &SearchBudget::unlimited()).unwrap().chi
}

pub fn chi_instance(system: &SetSystem, r: usize, variant: Variant) -> usize {
    let instance = KneserInstance::new(system.clone(), r, variant).unwrap();
    chromatic_number(&ColorClassOracle::implicit(&instance).unwrap(), &SearchBudget::unlimited()).unwrap().chi
}
