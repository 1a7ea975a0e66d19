//! Uniform loop-free hypergraphs whose edges may be multisets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{combinations, multiset_count, multisets};
use crate::error::{Error, Result};
use crate::kneser::DEFAULT_ENUMERATION_CAP;

/// An unordered collection of vertex indices with repetition, stored as a
/// non-decreasing sequence of 0-based indices. `{{1,1,2}}` is `[0, 0, 1]`.
///
/// Loops (a single repeated vertex) are representable so that candidates can
/// be tested; [`Hypergraph`] rejects them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultisetEdge {
    elems: Vec<usize>,
}

impl MultisetEdge {
    pub fn new(mut elems: Vec<usize>) -> Self {
        elems.sort_unstable();
        MultisetEdge { elems }
    }

    /// From a multiplicity vector indexed by vertex.
    pub fn from_multiplicities(mult: &[u32]) -> Self {
        let elems = mult
            .iter()
            .enumerate()
            .flat_map(|(v, &m)| std::iter::repeat_n(v, m as usize))
            .collect();
        MultisetEdge { elems }
    }

    /// From `(vertex, multiplicity)` pairs; zero multiplicities are ignored.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let elems = pairs
            .into_iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v, m as usize))
            .collect();
        MultisetEdge::new(elems)
    }

    /// The non-decreasing element sequence.
    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    /// Number of elements counted with multiplicity.
    pub fn r(&self) -> usize {
        self.elems.len()
    }

    /// `(vertex, multiplicity)` pairs in increasing vertex order.
    pub fn pairs(&self) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = Vec::new();
        for &v in &self.elems {
            match out.last_mut() {
                Some((last, m)) if *last == v => *m += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    pub fn multiplicities(&self, vertex_count: usize) -> Vec<u32> {
        let mut mult = vec![0; vertex_count];
        for &v in &self.elems {
            mult[v] += 1;
        }
        mult
    }

    pub fn support(&self) -> Vec<usize> {
        let mut s = self.elems.clone();
        s.dedup();
        s
    }

    /// Support as a bit mask; requires every vertex index below 64.
    pub fn support_mask(&self) -> u64 {
        self.elems.iter().fold(0u64, |acc, &v| acc | 1 << v)
    }

    pub fn is_loop_free(&self) -> bool {
        self.elems.first() != self.elems.last()
    }

    pub fn is_set_edge(&self) -> bool {
        self.elems.windows(2).all(|w| w[0] != w[1])
    }

    pub fn max_vertex(&self) -> Option<usize> {
        self.elems.last().copied()
    }
}

impl fmt::Debug for MultisetEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// 1-based, e.g. `{{1,1,2}}`.
impl fmt::Display for MultisetEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{{")?;
        for (k, v) in self.elems.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "}}}}")
    }
}

/// The support of an edge: the vertices with positive multiplicity.
pub fn support(edge: &MultisetEdge) -> Vec<usize> {
    edge.support()
}

/// An `r`-uniform loop-free hypergraph on vertices `0..vertex_count`.
///
/// Edges are distinct and kept sorted. When `multiset_allowed` is false every
/// edge is a set edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphJson", into = "HypergraphJson")]
pub struct Hypergraph {
    vertex_count: usize,
    r: usize,
    edges: Vec<MultisetEdge>,
    multiset_allowed: bool,
}

impl Hypergraph {
    pub fn new(
        vertex_count: usize,
        r: usize,
        edges: impl IntoIterator<Item = MultisetEdge>,
        multiset_allowed: bool,
    ) -> Result<Self> {
        if r < 2 {
            return Err(Error::input(format!("uniformity r = {r} must be at least 2")));
        }
        let mut edges: Vec<MultisetEdge> = edges.into_iter().collect();
        for e in &edges {
            if e.r() != r {
                return Err(Error::input(format!("edge {e} has size {} but r = {r}", e.r())));
            }
            if e.max_vertex().is_some_and(|v| v >= vertex_count) {
                return Err(Error::input(format!("edge {e} uses a vertex beyond {vertex_count}")));
            }
            if !e.is_loop_free() {
                return Err(Error::input(format!("edge {e} is a loop")));
            }
            if !multiset_allowed && !e.is_set_edge() {
                return Err(Error::input(format!("edge {e} repeats a vertex in a set hypergraph")));
            }
        }
        edges.sort();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate edge {}", w[0])));
        }
        Ok(Hypergraph { vertex_count, r, edges, multiset_allowed })
    }

    /// Skips validation; callers guarantee sorted, distinct, valid edges.
    pub(crate) fn from_sorted_unchecked(
        vertex_count: usize,
        r: usize,
        edges: Vec<MultisetEdge>,
        multiset_allowed: bool,
    ) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Hypergraph { vertex_count, r, edges, multiset_allowed }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[MultisetEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn multiset_allowed(&self) -> bool {
        self.multiset_allowed
    }

    pub fn contains_edge(&self, e: &MultisetEdge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Same edges, with the multiset flag raised.
    pub fn as_multiset(&self) -> Hypergraph {
        Hypergraph { multiset_allowed: true, ..self.clone() }
    }

    /// A copy with `e` removed (no-op when absent).
    pub fn without_edge(&self, e: &MultisetEdge) -> Hypergraph {
        let edges = self.edges.iter().filter(|x| *x != e).cloned().collect();
        Hypergraph { edges, ..self.clone() }
    }
}

/// `K^r_n` (all loop-free `r`-multisubsets of `[n]`) when `multiset_allowed`,
/// otherwise `k^r_n` (all `r`-subsets).
pub fn complete_hypergraph(n: usize, r: usize, multiset_allowed: bool) -> Result<Hypergraph> {
    if n == 0 {
        return Err(Error::input("complete hypergraph needs n >= 1"));
    }
    if r < 2 {
        return Err(Error::input(format!("uniformity r = {r} must be at least 2")));
    }
    let size = multiset_count(n as u128, r as u128);
    if size > DEFAULT_ENUMERATION_CAP {
        return Err(Error::Capacity { what: "complete hypergraph", size, cap: DEFAULT_ENUMERATION_CAP });
    }
    let edges: Vec<MultisetEdge> = if multiset_allowed {
        multisets(n, r)
            .map(|elems| MultisetEdge { elems })
            .filter(MultisetEdge::is_loop_free)
            .collect()
    } else {
        combinations(n, r).map(|elems| MultisetEdge { elems }).collect()
    };
    Ok(Hypergraph::from_sorted_unchecked(n, r, edges, multiset_allowed))
}

/// Replaces every edge by all loop-free `r`-multisets whose support contains
/// the edge's support. The result is `r`-uniform, up-monotone, and has the
/// same proper colorings as `h`.
pub fn up_monotone_closure(h: &Hypergraph, r: usize) -> Result<Hypergraph> {
    if r < 2 {
        return Err(Error::input(format!("uniformity r = {r} must be at least 2")));
    }
    let supports: BTreeSet<Vec<usize>> = h.edges.iter().map(MultisetEdge::support).collect();
    if let Some(big) = supports.iter().find(|s| s.len() > r) {
        return Err(Error::input(format!(
            "r = {r} is smaller than an edge support of size {}",
            big.len()
        )));
    }
    let n = h.vertex_count;
    let mut out = BTreeSet::new();
    for sup in &supports {
        let pad = r - sup.len();
        let size = multiset_count(n as u128, pad as u128);
        if size.saturating_mul(supports.len() as u128) > DEFAULT_ENUMERATION_CAP {
            return Err(Error::Capacity { what: "up-monotone closure", size, cap: DEFAULT_ENUMERATION_CAP });
        }
        for extra in multisets(n, pad) {
            let mut elems = sup.clone();
            elems.extend(extra);
            out.insert(MultisetEdge::new(elems));
        }
    }
    Ok(Hypergraph::from_sorted_unchecked(n, r, out.into_iter().collect(), true))
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    vertices: usize,
    r: usize,
    multiset: bool,
    edges: Vec<Vec<(usize, u32)>>,
}

impl TryFrom<HypergraphJson> for Hypergraph {
    type Error = Error;

    fn try_from(j: HypergraphJson) -> Result<Self> {
        let mut edges = Vec::with_capacity(j.edges.len());
        for pairs in j.edges {
            if pairs.iter().any(|&(v, _)| v == 0) {
                return Err(Error::input("vertex indices are 1-based"));
            }
            edges.push(MultisetEdge::from_pairs(pairs.into_iter().map(|(v, m)| (v - 1, m))));
        }
        Hypergraph::new(j.vertices, j.r, edges, j.multiset)
    }
}

impl From<Hypergraph> for HypergraphJson {
    fn from(h: Hypergraph) -> Self {
        HypergraphJson {
            vertices: h.vertex_count,
            r: h.r,
            multiset: h.multiset_allowed,
            edges: h
                .edges
                .iter()
                .map(|e| e.pairs().into_iter().map(|(v, m)| (v + 1, m)).collect())
                .collect(),
        }
    }
}
