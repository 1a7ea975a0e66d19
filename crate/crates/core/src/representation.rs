//! Which hypergraphs are generalized Kneser hypergraphs.
//!
//! An `r`-uniform hypergraph with multiplicities is *up-monotone* when every
//! loop-free `r`-multiset whose support contains the support of an edge is
//! itself an edge. Exactly these hypergraphs arise as `KG^r_{r-1}(S)`:
//! [`represent_up_monotone`] builds `S` from the complement hypergraph, and
//! [`verify_representation`] rebuilds the Kneser hypergraph to confirm it.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{combinations, multiset_count};
use crate::error::{Error, Result};
use crate::hypergraph::{complete_hypergraph, up_monotone_closure, Hypergraph, MultisetEdge};
use crate::kneser::{build_kneser, KneserInstance, Variant};
use crate::lp::in_convex_hull;
use crate::subset::{Subset, MAX_GROUND};
use crate::system::{GroundContext, SetSystem};

/// Cap on `binom(n + r - 1, r)` for the exact convexity test.
pub const CONVEXITY_GENERATOR_CAP: u128 = 10_000;

/// First pair `(e, e')` with `e` an edge, `support(e') ⊇ support(e)`, and
/// `e'` missing; `None` when `h` is up-monotone.
pub fn up_monotone_violation(h: &Hypergraph) -> Result<Option<(MultisetEdge, MultisetEdge)>> {
    let closure = up_monotone_closure(h, h.r())?;
    let Some(missing) = closure.edges().iter().find(|e| !h.contains_edge(e)) else {
        return Ok(None);
    };
    let sup = missing.support();
    let source = h
        .edges()
        .iter()
        .find(|e| e.support().iter().all(|v| sup.contains(v)))
        .expect("closure edges come from some edge");
    Ok(Some((source.clone(), missing.clone())))
}

pub fn is_up_monotone(h: &Hypergraph) -> Result<bool> {
    Ok(up_monotone_violation(h)?.is_none())
}

/// An integral multiplicity vector (all entries below `r`) in the convex hull
/// of the edges that is not itself an edge; `None` when `h` is convex.
pub fn convexity_violation(h: &Hypergraph) -> Result<Option<MultisetEdge>> {
    let n = h.vertex_count();
    let size = multiset_count(n as u128, h.r() as u128);
    if size > CONVEXITY_GENERATOR_CAP {
        return Err(Error::Capacity { what: "convexity test", size, cap: CONVEXITY_GENERATOR_CAP });
    }
    let points: Vec<Vec<u32>> = h.edges().iter().map(|e| e.multiplicities(n)).collect();
    let reach: BTreeSet<usize> = h.edges().iter().flat_map(MultisetEdge::support).collect();
    for candidate in complete_hypergraph(n.max(1), h.r(), true)?.edges() {
        if h.contains_edge(candidate) || !candidate.support().iter().all(|v| reach.contains(v)) {
            continue;
        }
        if in_convex_hull(&points, &candidate.multiplicities(n)) {
            return Ok(Some(candidate.clone()));
        }
    }
    Ok(None)
}

pub fn is_convex(h: &Hypergraph) -> Result<bool> {
    Ok(convexity_violation(h)?.is_none())
}

/// `E(K^r_n) \ E(h)`.
pub fn complement_hypergraph(h: &Hypergraph) -> Result<Hypergraph> {
    let all = complete_hypergraph(h.vertex_count().max(1), h.r(), true)?;
    let edges: Vec<MultisetEdge> = all.edges().iter().filter(|e| !h.contains_edge(e)).cloned().collect();
    Hypergraph::new(h.vertex_count(), h.r(), edges, true)
}

/// A set system `S` with `s = r - 1` whose Kneser hypergraph reproduces a
/// given hypergraph; vertex `v` corresponds to member `vertex_map[v]`.
///
/// Ground elements `1..=n` are the original vertices; element `n + 1 + j` is
/// the `j`-th complement edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RepresentationJson", into = "RepresentationJson")]
pub struct Representation {
    vertices: usize,
    r: usize,
    complement_edges: Vec<MultisetEdge>,
    system: SetSystem,
    vertex_map: Vec<usize>,
}

impl Representation {
    pub fn system(&self) -> &SetSystem {
        &self.system
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn complement_edges(&self) -> &[MultisetEdge] {
        &self.complement_edges
    }

    /// The same representation over a replacement system; `vertex_map` is
    /// recomputed from each member's unique original element.
    pub fn with_system(&self, system: SetSystem) -> Result<Self> {
        let vertex_map = vertex_map_of(&system, self.vertices)?;
        Ok(Representation { system, vertex_map, ..self.clone() })
    }
}

fn vertex_map_of(system: &SetSystem, vertices: usize) -> Result<Vec<usize>> {
    let originals = Subset::full(vertices);
    let mut map = vec![usize::MAX; vertices];
    for (k, m) in system.members().iter().enumerate() {
        let own = m.intersection(originals);
        if own.len() != 1 {
            return Err(Error::input(format!("member {m} must contain exactly one original vertex")));
        }
        map[own.min_element().unwrap() - 1] = k;
    }
    if map.contains(&usize::MAX) {
        return Err(Error::input("some vertex has no member"));
    }
    Ok(map)
}

/// `S_i = {i} ∪ {ē ∈ Ē : i ∈ ē}` over the ground set `[n] ∪ Ē`, `s ≡ r - 1`.
pub fn represent_up_monotone(h: &Hypergraph) -> Result<Representation> {
    if let Some((e, missing)) = up_monotone_violation(h)? {
        return Err(Error::input(format!(
            "hypergraph is not up-monotone: {missing} contains the support of edge {e} but is not an edge"
        )));
    }
    let n = h.vertex_count();
    let r = h.r();
    let complement = complement_hypergraph(h)?;
    let ground_size = n + complement.edge_count();
    if ground_size > MAX_GROUND {
        return Err(Error::Capacity {
            what: "representation ground set",
            size: ground_size as u128,
            cap: MAX_GROUND as u128,
        });
    }
    let mut members: Vec<Subset> = (1..=n).map(Subset::singleton).collect();
    for (j, e) in complement.edges().iter().enumerate() {
        for v in e.support() {
            members[v].insert(n + 1 + j);
        }
    }
    let ground = GroundContext::uniform(ground_size, r as u32 - 1)?;
    let system = SetSystem::new(ground, members)?;
    let vertex_map = vertex_map_of(&system, n)?;
    Ok(Representation { vertices: n, r, complement_edges: complement.edges().to_vec(), system, vertex_map })
}

/// Rebuilds `KG^r_{r-1}` of the representation and compares its edges with
/// those of `h` under the vertex map.
pub fn verify_representation(h: &Hypergraph, rep: &Representation) -> Result<bool> {
    if rep.r != h.r() || rep.vertex_map.len() != h.vertex_count() || rep.system.len() != h.vertex_count() {
        return Ok(false);
    }
    let Ok(instance) = KneserInstance::new(rep.system.clone(), rep.r, Variant::WithMultiplicities) else {
        return Ok(false);
    };
    let kneser = build_kneser(&instance)?;
    let mut to_vertex = vec![0; rep.vertex_map.len()];
    for (v, &k) in rep.vertex_map.iter().enumerate() {
        to_vertex[k] = v;
    }
    let mapped: BTreeSet<MultisetEdge> = kneser
        .edges()
        .iter()
        .map(|e| MultisetEdge::new(e.elements().iter().map(|&k| to_vertex[k]).collect()))
        .collect();
    Ok(mapped.len() == h.edge_count() && h.edges().iter().all(|e| mapped.contains(e)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliqueVerdict {
    /// `E(h)` is exactly the set of `r`-cliques of the co-occurrence graph;
    /// `system` realizes `h` as `KG^r_1(system)`.
    Representable { system: SetSystem },
    /// An `r`-clique of the co-occurrence graph that is not an edge. No
    /// `KG^r_1` can represent `h`.
    MissingClique(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueTest {
    /// Pairs `(u, v)`, `u < v`, that lie together in some edge.
    pub graph: Vec<(usize, usize)>,
    pub verdict: CliqueVerdict,
}

impl CliqueTest {
    pub fn representable(&self) -> bool {
        matches!(self.verdict, CliqueVerdict::Representable { .. })
    }
}

/// Decides representability of a set-edge hypergraph as `KG^r_1(S)`.
///
/// Any representation makes pairwise disjointness a graph `G'` whose
/// `r`-cliques are exactly the edges, so `G'` contains the co-occurrence
/// graph `G` and `E ⊆ cliques(G) ⊆ cliques(G') = E`. Hence `h` is
/// representable iff `E = cliques(G)`.
pub fn kg1_clique_test(h: &Hypergraph) -> Result<CliqueTest> {
    let n = h.vertex_count();
    if n > 64 {
        return Err(Error::input(format!("{n} vertices exceed the clique test limit of 64")));
    }
    if let Some(e) = h.edges().iter().find(|e| !e.is_set_edge()) {
        return Err(Error::input(format!("edge {e} is not a set edge")));
    }
    let mut adj = vec![0u64; n];
    for e in h.edges() {
        let m = e.support_mask();
        for &v in e.elements() {
            adj[v] |= m & !(1 << v);
        }
    }
    let adjacent = |u: usize, v: usize| adj[u] >> v & 1 == 1;
    let graph: Vec<(usize, usize)> = combinations(n, 2).map(|p| (p[0], p[1])).filter(|&(u, v)| adjacent(u, v)).collect();
    let everything = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut cliques = Vec::new();
    collect_cliques(&adj, h.r(), &mut Vec::new(), everything, &mut cliques);
    if let Some(c) = cliques.into_iter().find(|c| !h.contains_edge(&MultisetEdge::new(c.clone()))) {
        return Ok(CliqueTest { graph, verdict: CliqueVerdict::MissingClique(c) });
    }
    // disjointness system: S_v = {v} ∪ {non-edges through v}
    let non_edges: Vec<(usize, usize)> = combinations(n, 2).map(|p| (p[0], p[1])).filter(|&(u, v)| !adjacent(u, v)).collect();
    let ground_size = (n + non_edges.len()).max(1);
    if ground_size > MAX_GROUND {
        return Err(Error::Capacity { what: "KG^r_1 ground set", size: ground_size as u128, cap: MAX_GROUND as u128 });
    }
    let mut members: Vec<Subset> = (1..=n).map(Subset::singleton).collect();
    for (j, &(u, v)) in non_edges.iter().enumerate() {
        members[u].insert(n + 1 + j);
        members[v].insert(n + 1 + j);
    }
    let system = SetSystem::new(GroundContext::uniform(ground_size, 1)?, members)?;
    Ok(CliqueTest { graph, verdict: CliqueVerdict::Representable { system } })
}

fn collect_cliques(adj: &[u64], r: usize, stack: &mut Vec<usize>, candidates: u64, out: &mut Vec<Vec<usize>>) {
    if stack.len() == r {
        out.push(stack.clone());
        return;
    }
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        stack.push(v);
        // later vertices only, adjacent to everything chosen
        collect_cliques(adj, r, stack, rest & adj[v], out);
        stack.pop();
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Label {
    Vertex(usize),
    Complement(String),
}

#[derive(Serialize, Deserialize)]
struct RepresentationJson {
    n: usize,
    r: usize,
    complement_edges: Vec<Vec<usize>>,
    sets: Vec<Vec<Label>>,
}

fn edge_label(e: &MultisetEdge) -> String {
    let parts: Vec<String> = e.elements().iter().map(|v| (v + 1).to_string()).collect();
    format!("e:{}", parts.join(","))
}

impl From<Representation> for RepresentationJson {
    fn from(rep: Representation) -> Self {
        let n = rep.vertices;
        let labels: Vec<String> = rep.complement_edges.iter().map(edge_label).collect();
        let sets = rep
            .system
            .members()
            .iter()
            .map(|m| {
                m.iter()
                    .map(|x| if x <= n { Label::Vertex(x) } else { Label::Complement(labels[x - n - 1].clone()) })
                    .collect()
            })
            .collect();
        RepresentationJson {
            n,
            r: rep.r,
            complement_edges: rep
                .complement_edges
                .iter()
                .map(|e| e.elements().iter().map(|v| v + 1).collect())
                .collect(),
            sets,
        }
    }
}

impl TryFrom<RepresentationJson> for Representation {
    type Error = Error;

    fn try_from(j: RepresentationJson) -> Result<Self> {
        if j.r < 2 {
            return Err(Error::input("representation needs r >= 2"));
        }
        let mut complement_edges = Vec::with_capacity(j.complement_edges.len());
        for e in &j.complement_edges {
            if e.iter().any(|&v| v == 0 || v > j.n) {
                return Err(Error::input("complement edge vertex out of range"));
            }
            complement_edges.push(MultisetEdge::new(e.iter().map(|v| v - 1).collect()));
        }
        let labels: Vec<String> = complement_edges.iter().map(edge_label).collect();
        let mut lists = Vec::with_capacity(j.sets.len());
        for set in j.sets {
            let mut elems = Vec::with_capacity(set.len());
            for label in set {
                elems.push(match label {
                    Label::Vertex(v) if v >= 1 && v <= j.n => v,
                    Label::Vertex(v) => return Err(Error::input(format!("vertex label {v} out of range"))),
                    Label::Complement(s) => {
                        let pos = labels
                            .iter()
                            .position(|l| *l == s)
                            .ok_or_else(|| Error::input(format!("unknown complement label {s}")))?;
                        j.n + 1 + pos
                    }
                });
            }
            lists.push(elems);
        }
        let ground = GroundContext::uniform((j.n + complement_edges.len()).max(1), j.r as u32 - 1)?;
        let system = SetSystem::from_lists(ground, lists)?;
        let vertex_map = vertex_map_of(&system, j.n)?;
        Ok(Representation { vertices: j.n, r: j.r, complement_edges, system, vertex_map })
    }
}
