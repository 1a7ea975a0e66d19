//! Independence of color classes, decided either from an explicit edge list
//! or directly from the Kneser definition.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, MultisetEdge};
use crate::kneser::{build_kneser, KneserInstance};

/// Solver limit on vertex count; classes are `u64` masks.
pub const MAX_SOLVER_VERTICES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleMode {
    Explicit,
    Implicit,
}

/// Answers "does this vertex class contain an edge?" for one hypergraph.
#[derive(Debug, Clone)]
pub struct ColorClassOracle {
    inner: Inner,
}

#[derive(Debug, Clone)]
enum Inner {
    Explicit(Explicit),
    Implicit(Implicit),
}

#[derive(Debug, Clone)]
struct Explicit {
    graph: Hypergraph,
    /// Distinct edge supports, each with the first edge realizing it.
    supports: Vec<(u64, usize)>,
    /// Inclusion-minimal supports through each vertex.
    minimal_by_vertex: Vec<Vec<u64>>,
}

#[derive(Debug, Clone)]
struct Implicit {
    instance: KneserInstance,
    /// 0-based ground elements of each member.
    members: Vec<Vec<usize>>,
    caps: Vec<u32>,
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_SOLVER_VERTICES {
        return Err(Error::input(format!(
            "{n} vertices exceed the solver limit of {MAX_SOLVER_VERTICES}"
        )));
    }
    Ok(())
}

impl ColorClassOracle {
    pub fn explicit(h: &Hypergraph) -> Result<Self> {
        check_size(h.vertex_count())?;
        let mut supports: Vec<(u64, usize)> = Vec::new();
        for (k, e) in h.edges().iter().enumerate() {
            let m = e.support_mask();
            if !supports.iter().any(|&(x, _)| x == m) {
                supports.push((m, k));
            }
        }
        let minimal: Vec<u64> = supports
            .iter()
            .map(|&(m, _)| m)
            .filter(|&m| !supports.iter().any(|&(x, _)| x != m && x & !m == 0))
            .collect();
        let minimal_by_vertex = (0..h.vertex_count())
            .map(|v| minimal.iter().copied().filter(|m| m >> v & 1 == 1).collect())
            .collect();
        Ok(ColorClassOracle {
            inner: Inner::Explicit(Explicit { graph: h.clone(), supports, minimal_by_vertex }),
        })
    }

    pub fn implicit(instance: &KneserInstance) -> Result<Self> {
        check_size(instance.vertex_count())?;
        let members = instance
            .system()
            .members()
            .iter()
            .map(|m| m.iter().map(|i| i - 1).collect())
            .collect();
        Ok(ColorClassOracle {
            inner: Inner::Implicit(Implicit {
                instance: instance.clone(),
                members,
                caps: instance.ground().s().to_vec(),
            }),
        })
    }

    /// Explicit mode materializes the edge set first (subject to the
    /// enumeration cap).
    pub fn for_instance(instance: &KneserInstance, mode: OracleMode) -> Result<Self> {
        match mode {
            OracleMode::Explicit => ColorClassOracle::explicit(&build_kneser(instance)?),
            OracleMode::Implicit => ColorClassOracle::implicit(instance),
        }
    }

    pub fn mode(&self) -> OracleMode {
        match self.inner {
            Inner::Explicit(_) => OracleMode::Explicit,
            Inner::Implicit(_) => OracleMode::Implicit,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match &self.inner {
            Inner::Explicit(x) => x.graph.vertex_count(),
            Inner::Implicit(x) => x.members.len(),
        }
    }

    pub fn all_vertices(&self) -> u64 {
        match self.vertex_count() {
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }

    /// True iff no edge lies entirely inside `class`.
    pub fn is_independent(&self, class: u64) -> bool {
        match &self.inner {
            Inner::Explicit(x) => !x
                .minimal_by_vertex
                .iter()
                .flatten()
                .any(|&m| m & !class == 0),
            Inner::Implicit(_) => self.find_edge(class, 0).is_none(),
        }
    }

    /// Given an independent `class` not containing `v`, true iff adding `v`
    /// creates an edge.
    pub fn blocks(&self, class: u64, v: usize) -> bool {
        let with = class | 1 << v;
        match &self.inner {
            Inner::Explicit(x) => x.minimal_by_vertex[v].iter().any(|&m| m & !with == 0),
            Inner::Implicit(_) => self.find_edge(with, 1 << v).is_some(),
        }
    }

    /// Some edge whose support lies inside `within` and contains `forced`.
    pub fn find_edge(&self, within: u64, forced: u64) -> Option<MultisetEdge> {
        if forced & !within != 0 {
            return None;
        }
        match &self.inner {
            Inner::Explicit(x) => x
                .supports
                .iter()
                .find(|&&(m, _)| m & !within == 0 && forced & !m == 0)
                .map(|&(_, k)| x.graph.edges()[k].clone()),
            Inner::Implicit(x) => x.find_edge(within, forced),
        }
    }

    /// Symmetric matrix (as row masks) of vertex pairs that share an edge.
    pub fn co_occurrence(&self) -> Vec<u64> {
        let n = self.vertex_count();
        let mut rows = vec![0u64; n];
        match &self.inner {
            Inner::Explicit(x) => {
                for &(m, _) in &x.supports {
                    for (v, row) in rows.iter_mut().enumerate() {
                        if m >> v & 1 == 1 {
                            *row |= m & !(1 << v);
                        }
                    }
                }
            }
            Inner::Implicit(_) => {
                let all = self.all_vertices();
                for u in 0..n {
                    for v in u + 1..n {
                        if self.find_edge(all, 1 << u | 1 << v).is_some() {
                            rows[u] |= 1 << v;
                            rows[v] |= 1 << u;
                        }
                    }
                }
            }
        }
        rows
    }

    pub fn edge_count_hint(&self) -> Option<usize> {
        match &self.inner {
            Inner::Explicit(x) => Some(x.graph.edge_count()),
            Inner::Implicit(_) => None,
        }
    }

    pub(crate) fn explicit_graph(&self) -> Option<&Hypergraph> {
        match &self.inner {
            Inner::Explicit(x) => Some(&x.graph),
            Inner::Implicit(_) => None,
        }
    }
}

/// Membership form of [`ColorClassOracle::is_independent`].
pub fn class_is_independent(oracle: &ColorClassOracle, class: &[usize]) -> Result<bool> {
    let n = oracle.vertex_count();
    let mut mask = 0u64;
    for &v in class {
        if v >= n {
            return Err(Error::input(format!("vertex {v} out of range 0..{n}")));
        }
        mask |= 1 << v;
    }
    Ok(oracle.is_independent(mask))
}

impl Implicit {
    fn find_edge(&self, within: u64, forced: u64) -> Option<MultisetEdge> {
        // forced vertices first so that their ">= 1" requirement is met early
        let mut order: Vec<usize> = bits(within & forced).collect();
        order.extend(bits(within & !forced));
        let mut dfs = MultiplicityDfs {
            oracle: self,
            order: &order,
            forced_total: (within & forced).count_ones() as usize,
            counts: vec![0; self.caps.len()],
            mult: vec![0; self.members.len()],
            repeats: self.instance.variant().allows_repeats(),
        };
        dfs.run(0, self.instance.r(), 0, 0).then(|| MultisetEdge::from_multiplicities(&dfs.mult))
    }

    fn room(&self, counts: &[u32], v: usize) -> u32 {
        self.members[v]
            .iter()
            .map(|&i| self.caps[i] - counts[i])
            .min()
            .unwrap_or(u32::MAX)
    }
}

struct MultiplicityDfs<'a> {
    oracle: &'a Implicit,
    order: &'a [usize],
    forced_total: usize,
    counts: Vec<u32>,
    mult: Vec<u32>,
    repeats: bool,
}

impl MultiplicityDfs<'_> {
    /// Assigns multiplicities to `order[pos..]` summing to `remaining`.
    fn run(&mut self, pos: usize, remaining: usize, positive: usize, forced_done: usize) -> bool {
        if remaining == 0 {
            return forced_done == self.forced_total && positive >= 2;
        }
        if pos == self.order.len() || self.forced_total - forced_done > remaining {
            return false;
        }
        let per_vertex_cap = |room: u32| -> usize {
            let room = room as usize;
            if self.repeats { room.min(remaining) } else { room.min(1) }
        };
        // no completion if the rest cannot absorb what is left
        let capacity: usize = self.order[pos..]
            .iter()
            .map(|&u| per_vertex_cap(self.oracle.room(&self.counts, u)))
            .sum();
        if capacity < remaining {
            return false;
        }
        let v = self.order[pos];
        let is_forced = pos < self.forced_total;
        let top = per_vertex_cap(self.oracle.room(&self.counts, v));
        let bottom = usize::from(is_forced);
        for m in (bottom..=top).rev() {
            self.apply(v, m as u32);
            let found = self.run(
                pos + 1,
                remaining - m,
                positive + usize::from(m > 0),
                forced_done + usize::from(is_forced),
            );
            if found {
                return true;
            }
            self.unapply(v, m as u32);
        }
        false
    }

    fn apply(&mut self, v: usize, m: u32) {
        self.mult[v] = m;
        for &i in &self.oracle.members[v] {
            self.counts[i] += m;
        }
    }

    fn unapply(&mut self, v: usize, m: u32) {
        self.mult[v] = 0;
        for &i in &self.oracle.members[v] {
            self.counts[i] -= m;
        }
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}
