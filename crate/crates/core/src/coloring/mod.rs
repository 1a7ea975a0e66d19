//! Proper colorings of uniform hypergraphs: verification, greedy upper
//! bounds and the exact chromatic number.

mod oracle;
mod search;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::MultisetEdge;

pub use oracle::{class_is_independent, ColorClassOracle, OracleMode, MAX_SOLVER_VERTICES};
pub use search::{chromatic_number, ChromaticResult, SearchBudget};

/// A map from vertices to colors `0..color_count` (`1..=color_count` on the
/// wire). Properness is checked separately by [`verify_coloring`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ColoringJson", into = "ColoringJson")]
pub struct Coloring {
    assignment: Vec<usize>,
    color_count: usize,
}

impl Coloring {
    pub fn new(assignment: Vec<usize>, color_count: usize) -> Result<Self> {
        if let Some(&c) = assignment.iter().find(|&&c| c >= color_count) {
            return Err(Error::input(format!("color {} exceeds color count {color_count}", c + 1)));
        }
        Ok(Coloring { assignment, color_count })
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    pub fn color_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    /// Vertex masks of the color classes.
    pub fn classes(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.color_count];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c] |= 1 << v;
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    colors: usize,
    assignment: Vec<usize>,
}

impl TryFrom<ColoringJson> for Coloring {
    type Error = Error;

    fn try_from(j: ColoringJson) -> Result<Self> {
        if j.assignment.contains(&0) {
            return Err(Error::input("colors are 1-based"));
        }
        Coloring::new(j.assignment.into_iter().map(|c| c - 1).collect(), j.colors)
    }
}

impl From<Coloring> for ColoringJson {
    fn from(c: Coloring) -> Self {
        ColoringJson { colors: c.color_count, assignment: c.assignment.iter().map(|c| c + 1).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Proper,
    /// A monochromatic edge.
    Violation(MultisetEdge),
}

impl Verdict {
    pub fn is_proper(&self) -> bool {
        matches!(self, Verdict::Proper)
    }
}

pub fn verify_coloring(oracle: &ColorClassOracle, coloring: &Coloring) -> Result<Verdict> {
    if coloring.assignment.len() != oracle.vertex_count() {
        return Err(Error::input(format!(
            "coloring covers {} vertices, hypergraph has {}",
            coloring.assignment.len(),
            oracle.vertex_count()
        )));
    }
    if let Some(h) = oracle.explicit_graph() {
        let mono = h.edges().iter().find(|e| {
            let first = coloring.assignment[e.elements()[0]];
            e.elements().iter().all(|&v| coloring.assignment[v] == first)
        });
        return Ok(mono.map_or(Verdict::Proper, |e| Verdict::Violation(e.clone())));
    }
    for class in coloring.classes() {
        if let Some(e) = oracle.find_edge(class, 0) {
            return Ok(Verdict::Violation(e));
        }
    }
    Ok(Verdict::Proper)
}

/// First-fit coloring along `order`: each vertex takes the smallest color
/// whose class stays independent.
pub fn greedy_coloring(oracle: &ColorClassOracle, order: &[usize]) -> Result<Coloring> {
    let n = oracle.vertex_count();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::input("order must be a permutation of the vertices"));
    }
    let mut classes: Vec<u64> = Vec::new();
    let mut assignment = vec![0; n];
    for &v in order {
        let c = match classes.iter().position(|&cls| !oracle.blocks(cls, v)) {
            Some(c) => c,
            None => {
                classes.push(0);
                classes.len() - 1
            }
        };
        classes[c] |= 1 << v;
        assignment[v] = c;
    }
    Coloring::new(assignment, classes.len())
}

/// The coloring `S -> min(min S, n - 2)` of `kg^r_{r-1}(binom([n], 2))`,
/// indexed by the canonical order of the pairs. Uses `n - 2` colors: stars
/// at `1..n-3` and the triangle on `{n-2, n-1, n}`.
pub fn star_coloring_pairs(n: usize, r: usize) -> Result<Coloring> {
    if n < 4 || r < 4 {
        return Err(Error::input(format!("star coloring needs n >= 4 and r >= 4, got n = {n}, r = {r}")));
    }
    let mut assignment = Vec::with_capacity(n * (n - 1) / 2);
    for a in 1..=n {
        for _b in a + 1..=n {
            assignment.push(a.min(n - 2) - 1);
        }
    }
    Coloring::new(assignment, n - 2)
}
