//! Exact chromatic number by iterative deepening on the number of colors.

use std::cmp::Reverse;
use std::collections::HashMap;
use std::time::{Duration, Instant};

use super::oracle::{bits, ColorClassOracle};
use super::{greedy_coloring, Coloring};
use crate::error::{Error, Result};

/// Limits for one exact search. The default is unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    pub fn seconds(secs: u64) -> Self {
        SearchBudget { time_limit: Some(Duration::from_secs(secs)), node_limit: None }
    }

    pub fn nodes(limit: u64) -> Self {
        SearchBudget { time_limit: None, node_limit: Some(limit) }
    }

    pub fn is_zero(&self) -> bool {
        self.time_limit == Some(Duration::ZERO) || self.node_limit == Some(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    pub chi: usize,
    /// An optimal proper coloring.
    pub witness: Coloring,
    /// Search nodes visited across all depths.
    pub nodes: u64,
}

/// Exact chromatic number with an optimal witness.
///
/// `0` for the empty vertex set, `1` for edgeless hypergraphs. Vertices are
/// chosen by highest saturation, then highest co-occurrence degree, then
/// lowest index; a new color is only ever introduced as the next unused one.
/// On budget exhaustion the error carries the certified interval.
pub fn chromatic_number(oracle: &ColorClassOracle, budget: &SearchBudget) -> Result<ChromaticResult> {
    let n = oracle.vertex_count();
    if n == 0 {
        return Ok(ChromaticResult { chi: 0, witness: Coloring::new(Vec::new(), 0)?, nodes: 0 });
    }
    let degree: Vec<u32> = oracle.co_occurrence().iter().map(|row| row.count_ones()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (Reverse(degree[v]), v));
    let greedy = greedy_coloring(oracle, &order)?;
    let upper = greedy.color_count();
    let mut lower = if oracle.find_edge(oracle.all_vertices(), 0).is_some() { 2 } else { 1 };

    let mut search = Search {
        oracle,
        degree,
        assign: vec![None; n],
        classes: Vec::new(),
        memo: HashMap::new(),
        nodes: 0,
        started: Instant::now(),
        budget: *budget,
    };
    while lower < upper {
        match search.decide(lower) {
            Ok(Some(witness)) => return Ok(ChromaticResult { chi: lower, witness, nodes: search.nodes }),
            Ok(None) => lower += 1,
            Err(Exhausted) => return Err(Error::Budget { lower, upper }),
        }
    }
    Ok(ChromaticResult { chi: upper, witness: greedy, nodes: search.nodes })
}

struct Exhausted;

struct Search<'o> {
    oracle: &'o ColorClassOracle,
    degree: Vec<u32>,
    assign: Vec<Option<usize>>,
    classes: Vec<u64>,
    /// Independence of `class | v` keyed by the union mask.
    memo: HashMap<u64, bool>,
    nodes: u64,
    started: Instant,
    budget: SearchBudget,
}

impl Search<'_> {
    fn decide(&mut self, colors: usize) -> Result<Option<Coloring>, Exhausted> {
        self.assign.iter_mut().for_each(|a| *a = None);
        self.classes.clear();
        if !self.extend(colors, 0)? {
            return Ok(None);
        }
        let assignment = self.assign.iter().map(|a| a.expect("complete assignment")).collect();
        Ok(Some(Coloring::new(assignment, colors).expect("colors in range")))
    }

    fn tick(&mut self) -> Result<(), Exhausted> {
        self.nodes += 1;
        if self.budget.node_limit.is_some_and(|lim| self.nodes > lim) {
            return Err(Exhausted);
        }
        if self.nodes % 256 == 1 {
            if let Some(limit) = self.budget.time_limit {
                if self.started.elapsed() >= limit {
                    return Err(Exhausted);
                }
            }
        }
        Ok(())
    }

    fn blocked(&mut self, class: u64, v: usize) -> bool {
        let key = class | 1 << v;
        if let Some(&independent) = self.memo.get(&key) {
            return !independent;
        }
        let b = self.oracle.blocks(class, v);
        self.memo.insert(key, !b);
        b
    }

    /// Blocked colors of `v` among those in use, as a bit mask.
    fn blocked_colors(&mut self, v: usize) -> u64 {
        let mut mask = 0u64;
        for c in 0..self.classes.len() {
            if self.blocked(self.classes[c], v) {
                mask |= 1 << c;
            }
        }
        mask
    }

    fn extend(&mut self, colors: usize, colored: usize) -> Result<bool, Exhausted> {
        self.tick()?;
        let n = self.assign.len();
        if colored == n {
            return Ok(true);
        }
        let used = self.classes.len();
        let mut pick: Option<(usize, u64)> = None;
        let mut pick_key = (0usize, 0u32, Reverse(usize::MAX));
        for v in 0..n {
            if self.assign[v].is_some() {
                continue;
            }
            let blocked = self.blocked_colors(v);
            let sat = blocked.count_ones() as usize;
            if sat == used && used == colors {
                return Ok(false);
            }
            let key = (sat, self.degree[v], Reverse(v));
            if pick.is_none() || key > pick_key {
                pick = Some((v, blocked));
                pick_key = key;
            }
        }
        let (v, blocked) = pick.expect("an uncolored vertex exists");
        let free = !blocked & ((1u64 << used) - 1);
        for c in bits(free) {
            self.assign[v] = Some(c);
            self.classes[c] |= 1 << v;
            let ok = self.extend(colors, colored + 1)?;
            if ok {
                return Ok(true);
            }
            self.classes[c] &= !(1 << v);
            self.assign[v] = None;
        }
        if used < colors {
            self.assign[v] = Some(used);
            self.classes.push(1 << v);
            if self.extend(colors, colored + 1)? {
                return Ok(true);
            }
            self.classes.pop();
            self.assign[v] = None;
        }
        Ok(false)
    }
}
