//! Generalized Kneser hypergraphs `KG^r_s(S)` and `kg^r_s(S)`.

use std::fmt;

use crate::combinatorics::{binomial, multiset_count};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, MultisetEdge};
use crate::subset::Subset;
use crate::system::{GroundContext, SetSystem};

/// Default ceiling on the number of candidate multisets an explicit build
/// may enumerate.
pub const DEFAULT_ENUMERATION_CAP: u128 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `KG^r_s(S)`: edges are `r`-multisets of members.
    WithMultiplicities,
    /// `kg^r_s(S)`: edges are `r`-subsets of members.
    WithoutMultiplicities,
}

impl Variant {
    pub fn allows_repeats(self) -> bool {
        matches!(self, Variant::WithMultiplicities)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::WithMultiplicities => "multiset",
            Variant::WithoutMultiplicities => "set",
        })
    }
}

/// True iff every element `i` lies in at most `s_i` members of `family`,
/// counting repeated members separately.
pub fn is_s_disjoint(family: &[Subset], ground: &GroundContext) -> Result<bool> {
    let full = ground.full_set();
    let mut counts = vec![0u32; ground.n()];
    for set in family {
        if !set.is_subset_of(full) {
            return Err(Error::input(format!("{set} is not contained in [{}]", ground.n())));
        }
        for i in set.iter() {
            counts[i - 1] += 1;
        }
    }
    Ok(counts.iter().zip(ground.s()).all(|(c, s)| c <= s))
}

/// A set system, a uniformity `r >= 2` and the choice between multiset and
/// set edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KneserInstance {
    system: SetSystem,
    r: usize,
    variant: Variant,
}

impl KneserInstance {
    /// Rejects `r < 2`, and for [`Variant::WithMultiplicities`] any
    /// `s_i >= r`, which would admit loops.
    pub fn new(system: SetSystem, r: usize, variant: Variant) -> Result<Self> {
        if r < 2 {
            return Err(Error::input(format!("uniformity r = {r} must be at least 2")));
        }
        if variant == Variant::WithMultiplicities {
            if let Some(i) = system.ground().s().iter().position(|&s| s as usize >= r) {
                return Err(Error::input(format!(
                    "s_{} = {} is not below r = {r}; KG would contain loops",
                    i + 1,
                    system.ground().s()[i]
                )));
            }
        }
        Ok(KneserInstance { system, r, variant })
    }

    pub fn system(&self) -> &SetSystem {
        &self.system
    }

    pub fn ground(&self) -> &GroundContext {
        self.system.ground()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn vertex_count(&self) -> usize {
        self.system.len()
    }

    /// Number of candidates an explicit build enumerates before pruning.
    pub fn candidate_count(&self) -> u128 {
        let m = self.vertex_count() as u128;
        let r = self.r as u128;
        match self.variant {
            Variant::WithMultiplicities => multiset_count(m, r),
            Variant::WithoutMultiplicities => binomial(m, r),
        }
    }
}

impl fmt::Display for KneserInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.variant.allows_repeats() { "KG" } else { "kg" };
        let s = match self.ground().constant() {
            Some(c) => c.to_string(),
            None => format!("{:?}", self.ground().s()),
        };
        write!(f, "{name}^{}_{}(|S| = {}, n = {})", self.r, s, self.vertex_count(), self.ground().n())
    }
}

/// Decides whether `candidate` (over member indices) is an edge of the
/// instance's hypergraph.
pub fn is_kneser_edge(instance: &KneserInstance, candidate: &MultisetEdge) -> Result<bool> {
    if candidate.r() != instance.r {
        return Err(Error::input(format!(
            "candidate {candidate} has size {} but r = {}",
            candidate.r(),
            instance.r
        )));
    }
    let members = instance.system.members();
    if candidate.max_vertex().is_some_and(|v| v >= members.len()) {
        return Err(Error::input(format!("candidate {candidate} indexes beyond |S| = {}", members.len())));
    }
    if !candidate.is_loop_free() {
        return Ok(false);
    }
    if !instance.variant.allows_repeats() && !candidate.is_set_edge() {
        return Ok(false);
    }
    let family: Vec<Subset> = candidate.elements().iter().map(|&v| members[v]).collect();
    is_s_disjoint(&family, instance.ground())
}

/// Explicitly enumerates the edge set, refusing when the candidate count
/// exceeds [`DEFAULT_ENUMERATION_CAP`].
pub fn build_kneser(instance: &KneserInstance) -> Result<Hypergraph> {
    build_kneser_with_cap(instance, DEFAULT_ENUMERATION_CAP)
}

pub fn build_kneser_with_cap(instance: &KneserInstance, cap: u128) -> Result<Hypergraph> {
    let size = instance.candidate_count();
    if size > cap {
        return Err(Error::Capacity { what: "Kneser edge enumeration (use the implicit oracle)", size, cap });
    }
    let mut builder = EdgeBuilder {
        members: instance.system.members().iter().map(|m| m.iter().map(|i| i - 1).collect()).collect(),
        caps: instance.ground().s().to_vec(),
        counts: vec![0; instance.ground().n()],
        r: instance.r,
        repeats: instance.variant.allows_repeats(),
        stack: Vec::with_capacity(instance.r),
        edges: Vec::new(),
    };
    builder.extend(0);
    Ok(Hypergraph::from_sorted_unchecked(
        instance.vertex_count(),
        instance.r,
        builder.edges,
        instance.variant.allows_repeats(),
    ))
}

struct EdgeBuilder {
    members: Vec<Vec<usize>>,
    caps: Vec<u32>,
    counts: Vec<u32>,
    r: usize,
    repeats: bool,
    stack: Vec<usize>,
    edges: Vec<MultisetEdge>,
}

impl EdgeBuilder {
    // Lexicographic DFS over non-decreasing (or increasing) sequences; a
    // prefix that overloads an element can never be completed.
    fn extend(&mut self, from: usize) {
        if self.stack.len() == self.r {
            let edge = MultisetEdge::new(self.stack.clone());
            if edge.is_loop_free() {
                self.edges.push(edge);
            }
            return;
        }
        for v in from..self.members.len() {
            if self.try_push(v) {
                self.extend(if self.repeats { v } else { v + 1 });
                self.pop();
            }
        }
    }

    fn try_push(&mut self, v: usize) -> bool {
        let fits = self.members[v].iter().all(|&i| self.counts[i] < self.caps[i]);
        if fits {
            for &i in &self.members[v] {
                self.counts[i] += 1;
            }
            self.stack.push(v);
        }
        fits
    }

    fn pop(&mut self) {
        let v = self.stack.pop().expect("pop on empty stack");
        for &i in &self.members[v] {
            self.counts[i] -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::complete_hypergraph;

    fn sets(lists: &[&[usize]]) -> Vec<Subset> {
        lists.iter().map(|l| Subset::from_elements(l.iter().copied()).unwrap()).collect()
    }

    fn pairs(n: usize, s: u32, r: usize, variant: Variant) -> KneserInstance {
        let g = GroundContext::uniform(n, s).unwrap();
        KneserInstance::new(SetSystem::k_subsets(g, 2).unwrap(), r, variant).unwrap()
    }

    #[test]
    fn s_disjointness_examples() {
        let g = GroundContext::new(vec![3, 2, 1]).unwrap();
        assert!(!is_s_disjoint(&sets(&[&[1, 2], &[1, 2], &[2, 3]]), &g).unwrap());
        assert!(is_s_disjoint(&sets(&[&[1, 2], &[1, 2], &[1, 3]]), &g).unwrap());
        assert!(is_s_disjoint(&sets(&[&[1, 2], &[1, 3], &[2]]), &g).unwrap());
        assert!(is_s_disjoint(&[], &g).unwrap());
        assert!(is_s_disjoint(&sets(&[&[4]]), &g).is_err());
    }

    #[test]
    fn edge_membership_examples() {
        // members of binom([4],2): 12,13,14,23,24,34 -> indices 0..6
        let kg = pairs(4, 2, 4, Variant::WithMultiplicities);
        let cand = MultisetEdge::new(vec![0, 0, 5, 5]);
        assert!(is_kneser_edge(&kg, &cand).unwrap());
        let kg_set = pairs(4, 2, 4, Variant::WithoutMultiplicities);
        assert!(!is_kneser_edge(&kg_set, &cand).unwrap());
        let k3 = pairs(3, 1, 3, Variant::WithMultiplicities);
        assert!(!is_kneser_edge(&k3, &MultisetEdge::new(vec![0, 1, 2])).unwrap());
        assert!(is_kneser_edge(&k3, &MultisetEdge::new(vec![0, 1])).is_err());
        assert!(is_kneser_edge(&k3, &MultisetEdge::new(vec![0, 1, 7])).is_err());
    }

    #[test]
    fn constructor_rejects_loops() {
        let g = GroundContext::uniform(3, 3).unwrap();
        let sys = SetSystem::k_subsets(g, 1).unwrap();
        assert!(KneserInstance::new(sys.clone(), 3, Variant::WithMultiplicities).is_err());
        assert!(KneserInstance::new(sys.clone(), 3, Variant::WithoutMultiplicities).is_ok());
        assert!(KneserInstance::new(sys, 1, Variant::WithoutMultiplicities).is_err());
    }

    #[test]
    fn complete_hypergraphs_are_kneser() {
        for n in 1..=5 {
            for r in 2..=4 {
                let g = GroundContext::uniform(n, r as u32 - 1).unwrap();
                let singles = SetSystem::k_subsets(g, 1).unwrap();
                let kg = KneserInstance::new(singles.clone(), r, Variant::WithMultiplicities).unwrap();
                assert_eq!(build_kneser(&kg).unwrap(), complete_hypergraph(n, r, true).unwrap());
                let kgs = KneserInstance::new(singles, r, Variant::WithoutMultiplicities).unwrap();
                assert_eq!(build_kneser(&kgs).unwrap(), complete_hypergraph(n, r, false).unwrap());
            }
        }
    }

    #[test]
    fn build_examples() {
        let g = GroundContext::uniform(3, 2).unwrap();
        let kg = KneserInstance::new(SetSystem::k_subsets(g, 1).unwrap(), 3, Variant::WithMultiplicities).unwrap();
        assert_eq!(build_kneser(&kg).unwrap().edge_count(), 7);

        let g = GroundContext::uniform(4, 2).unwrap();
        let kg = KneserInstance::new(SetSystem::k_subsets(g, 1).unwrap(), 3, Variant::WithoutMultiplicities).unwrap();
        assert_eq!(build_kneser(&kg).unwrap().edge_count(), 4);

        assert_eq!(build_kneser(&pairs(3, 3, 4, Variant::WithoutMultiplicities)).unwrap().edge_count(), 0);
        // every vertex of K_4 must have degree exactly 2: the three 4-cycles,
        // plus the three doubled perfect matchings when repeats are allowed
        assert_eq!(build_kneser(&pairs(4, 2, 4, Variant::WithoutMultiplicities)).unwrap().edge_count(), 3);
        assert_eq!(build_kneser(&pairs(4, 2, 4, Variant::WithMultiplicities)).unwrap().edge_count(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let inst = pairs(6, 1, 3, Variant::WithMultiplicities);
        let err = build_kneser_with_cap(&inst, 10).unwrap_err();
        assert!(matches!(err, Error::Capacity { size: 680, cap: 10, .. }));
    }
}
