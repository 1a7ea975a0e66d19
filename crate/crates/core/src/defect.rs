//! The s-disjoint r-colorability defect `cd^r_s(S)`.
//!
//! `cd^r_s(S)` is the least number of elements that must be deleted from the
//! multiset `[n]^s` so that the rest is covered by `r` s-disjoint subsets of
//! `[n]`, none of which contains a member of `S`.
//!
//! Because the `S`-free sets are closed under taking subsets, an optimal
//! cover can always be obtained from `r` maximal `S`-free sets (with
//! repetition) by deleting each element from the covers where it exceeds
//! its capacity `min(s_i, r)`. The search below ranges over multisets of
//! maximal free sets and performs that truncation when building the
//! certificate.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kneser::is_s_disjoint;
use crate::subset::Subset;
use crate::system::SetSystem;

/// `r` covers `R_1, ..., R_r` and the defect they certify.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CertificateJson", into = "CertificateJson")]
pub struct DefectCertificate {
    covers: Vec<Subset>,
    value: u64,
}

impl DefectCertificate {
    pub fn new(covers: Vec<Subset>, value: u64) -> Self {
        DefectCertificate { covers, value }
    }

    pub fn covers(&self) -> &[Subset] {
        &self.covers
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Checks the covers against `system` and `r`: exactly `r` covers,
    /// s-disjoint, all `S`-free, and `value = |[n]^s| - sum |R_j|`.
    pub fn validate(&self, system: &SetSystem, r: usize) -> Result<()> {
        if self.covers.len() != r {
            return Err(Error::input(format!("certificate has {} covers, expected {r}", self.covers.len())));
        }
        if !is_s_disjoint(&self.covers, system.ground())? {
            return Err(Error::input("certificate covers are not s-disjoint"));
        }
        if let Some(bad) = self.covers.iter().find(|c| !system.is_free(**c)) {
            return Err(Error::input(format!("cover {bad} contains a member of the system")));
        }
        let covered: u64 = self.covers.iter().map(|c| c.len() as u64).sum();
        if system.ground().multiset_size() - covered != self.value {
            return Err(Error::input(format!(
                "certificate value {} does not match |[n]^s| - covered = {}",
                self.value,
                system.ground().multiset_size() - covered
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    value: u64,
    covers: Vec<Vec<usize>>,
}

impl TryFrom<CertificateJson> for DefectCertificate {
    type Error = Error;

    fn try_from(j: CertificateJson) -> Result<Self> {
        let covers = j.covers.into_iter().map(Subset::from_elements).collect::<Result<_>>()?;
        Ok(DefectCertificate { covers, value: j.value })
    }
}

impl From<DefectCertificate> for CertificateJson {
    fn from(c: DefectCertificate) -> Self {
        CertificateJson { value: c.value, covers: c.covers.iter().map(|s| s.to_vec()).collect() }
    }
}

/// All maximal subsets of `[n]` containing no member of `system`, in
/// lexicographic order.
pub fn s_free_sets(system: &SetSystem) -> Vec<Subset> {
    let n = system.ground().n();
    let through: Vec<Vec<Subset>> = (1..=n)
        .map(|i| system.members().iter().copied().filter(|m| m.contains(i)).collect())
        .collect();
    let mut out = Vec::new();
    maximal_free(n, 1, Subset::EMPTY, Subset::EMPTY, &through, &mut out);
    out.sort();
    out
}

fn maximal_free(
    n: usize,
    i: usize,
    inside: Subset,
    outside: Subset,
    through: &[Vec<Subset>],
    out: &mut Vec<Subset>,
) {
    if i > n {
        // maximal iff every left-out element would complete some member
        let maximal = outside.iter().all(|e| {
            let mut grown = inside;
            grown.insert(e);
            through[e - 1].iter().any(|m| m.is_subset_of(grown))
        });
        if maximal {
            out.push(inside);
        }
        return;
    }
    let mut with_i = inside;
    with_i.insert(i);
    if through[i - 1].iter().all(|m| !m.is_subset_of(with_i)) {
        maximal_free(n, i + 1, with_i, outside, through, out);
    }
    // leaving i out needs a member through i that may still end up inside
    if through[i - 1].iter().any(|m| m.intersection(outside).is_empty()) {
        let mut without_i = outside;
        without_i.insert(i);
        maximal_free(n, i + 1, inside, without_i, through, out);
    }
}

/// Exact `cd^r_s(S)` together with a validated certificate.
///
/// `s_i > r` is allowed; such elements simply cannot be fully covered.
pub fn colorability_defect(system: &SetSystem, r: usize) -> Result<DefectCertificate> {
    if r == 0 {
        return Err(Error::input("the defect needs r >= 1"));
    }
    let ground = system.ground();
    let n = ground.n();
    let sets = s_free_sets(system);
    let reachable = sets.iter().fold(Subset::EMPTY, |acc, s| acc.union(*s));
    let caps: Vec<u32> = (1..=n)
        .map(|i| if reachable.contains(i) { ground.multiplicity(i).min(r as u32) } else { 0 })
        .collect();
    let mut search = CoverSearch { sets: sets.iter().map(|s| s.to_vec()).collect(), memo: HashMap::new() };
    let mut caps_work = caps.clone();
    let best = search.best(0, r, &mut caps_work);

    // walk the memo to recover one optimal multiset of maximal sets
    let mut chosen = Vec::new();
    let (mut idx, mut left, mut rest) = (0usize, r, caps.clone());
    while left > 0 && idx < search.sets.len() {
        let here = search.best(idx, left, &mut rest.clone());
        let gain = search.gain(idx, &rest);
        if gain > 0 {
            let mut after = rest.clone();
            search.take(idx, &mut after);
            if gain + search.best(idx, left - 1, &mut after.clone()) == here {
                chosen.push(idx);
                rest = after;
                left -= 1;
                continue;
            }
        }
        idx += 1;
    }

    let mut remaining = caps;
    let mut covers: Vec<Subset> = chosen
        .iter()
        .map(|&k| {
            let mut cover = Subset::EMPTY;
            for i in sets[k].iter() {
                if remaining[i - 1] > 0 {
                    remaining[i - 1] -= 1;
                    cover.insert(i);
                }
            }
            cover
        })
        .collect();
    covers.resize(r, Subset::EMPTY);
    let covered: u64 = covers.iter().map(|c| c.len() as u64).sum();
    debug_assert_eq!(covered, best);
    let cert = DefectCertificate { covers, value: ground.multiset_size() - covered };
    cert.validate(system, r)?;
    Ok(cert)
}

struct CoverSearch {
    sets: Vec<Vec<usize>>,
    memo: HashMap<(usize, usize, Vec<u32>), u64>,
}

impl CoverSearch {
    fn gain(&self, idx: usize, caps: &[u32]) -> u64 {
        self.sets[idx].iter().filter(|&&i| caps[i - 1] > 0).count() as u64
    }

    fn take(&self, idx: usize, caps: &mut [u32]) {
        for &i in &self.sets[idx] {
            caps[i - 1] = caps[i - 1].saturating_sub(1);
        }
    }

    /// No assignment of `left` covers from `sets[idx..]` beats this.
    fn bound(&self, idx: usize, left: usize, caps: &[u32]) -> u64 {
        let mut seen = vec![false; caps.len()];
        for set in &self.sets[idx..] {
            for &i in set {
                seen[i - 1] = true;
            }
        }
        seen.iter()
            .zip(caps)
            .filter(|(s, _)| **s)
            .map(|(_, &c)| u64::from(c).min(left as u64))
            .sum()
    }

    /// Most elements coverable by `left` covers chosen from `sets[idx..]`
    /// (with repetition) under the remaining capacities.
    fn best(&mut self, idx: usize, left: usize, caps: &mut Vec<u32>) -> u64 {
        if left == 0 || idx == self.sets.len() {
            return 0;
        }
        let key = (idx, left, caps.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let bound = self.bound(idx, left, caps);
        let mut value = 0;
        if bound > 0 {
            let gain = self.gain(idx, caps);
            if gain > 0 {
                let mut after = caps.clone();
                self.take(idx, &mut after);
                value = gain + self.best(idx, left - 1, &mut after);
            }
            if value < bound {
                value = value.max(self.best(idx + 1, left, caps));
            }
        }
        self.memo.insert(key, value);
        value
    }
}

/// `max{n(r-1) - r, 0}`, the closed form for `cd^r_{r-1}(binom([n], 2))`.
pub fn defect_pairs_formula(n: u64, r: u64) -> Result<u64> {
    if n < 2 || r < 2 {
        return Err(Error::input(format!("pairs defect formula needs n, r >= 2, got n = {n}, r = {r}")));
    }
    Ok((n * (r - 1)).saturating_sub(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::GroundContext;

    fn subsets(lists: &[&[usize]]) -> Vec<Subset> {
        lists.iter().map(|l| Subset::from_elements(l.iter().copied()).unwrap()).collect()
    }

    fn example_system() -> SetSystem {
        SetSystem::from_lists(GroundContext::new(vec![3, 2, 1]).unwrap(), [vec![2, 3]]).unwrap()
    }

    fn counterexample_family(n: usize, s: u32) -> SetSystem {
        let mut lists: Vec<Vec<usize>> = (2..=n).map(|j| vec![1, j]).collect();
        lists.push(vec![2, 3]);
        lists.push(vec![4, 5]);
        SetSystem::from_lists(GroundContext::uniform(n, s).unwrap(), lists).unwrap()
    }

    #[test]
    fn free_sets_examples() {
        assert_eq!(s_free_sets(&example_system()), subsets(&[&[1, 2], &[1, 3]]));
        let empty = SetSystem::new(GroundContext::uniform(4, 1).unwrap(), vec![]).unwrap();
        assert_eq!(s_free_sets(&empty), vec![Subset::full(4)]);
        assert_eq!(
            s_free_sets(&counterexample_family(8, 1)),
            subsets(&[&[1], &[2, 4, 6, 7, 8], &[2, 5, 6, 7, 8], &[3, 4, 6, 7, 8], &[3, 5, 6, 7, 8]])
        );
    }

    #[test]
    fn free_sets_match_brute_force() {
        let g = GroundContext::uniform(5, 1).unwrap();
        let systems = [
            vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![1, 5]],
            vec![vec![1], vec![2, 3, 4]],
            vec![vec![1, 2, 3], vec![3, 4], vec![5]],
            vec![vec![1], vec![2], vec![3], vec![4], vec![5]],
        ];
        for lists in systems {
            let sys = SetSystem::from_lists(g.clone(), lists).unwrap();
            let free: Vec<Subset> =
                (0u128..32).map(Subset::from_bits).filter(|s| sys.is_free(*s)).collect();
            let mut maximal: Vec<Subset> = free
                .iter()
                .copied()
                .filter(|s| !free.iter().any(|t| t != s && s.is_subset_of(*t)))
                .collect();
            maximal.sort();
            assert_eq!(s_free_sets(&sys), maximal);
        }
    }

    #[test]
    fn worked_example_values() {
        let sys = example_system();
        let values: Vec<u64> = (1..=3).map(|r| colorability_defect(&sys, r).unwrap().value()).collect();
        assert_eq!(values, vec![4, 2, 0]);
        assert!(colorability_defect(&sys, 0).is_err());
    }

    #[test]
    fn empty_system_defect() {
        for s in [vec![1, 2, 3], vec![5, 1], vec![4, 4, 4, 4]] {
            let g = GroundContext::new(s.clone()).unwrap();
            let sys = SetSystem::new(g, vec![]).unwrap();
            for r in 1..=4u32 {
                let expected: u64 = s.iter().map(|&x| u64::from(x.saturating_sub(r))).sum();
                assert_eq!(colorability_defect(&sys, r as usize).unwrap().value(), expected);
            }
        }
    }

    #[test]
    fn first_counterexample_defect() {
        let cert = colorability_defect(&counterexample_family(8, 7), 9).unwrap();
        assert_eq!(cert.value(), 17);
    }

    #[test]
    fn pairs_formula() {
        assert_eq!(defect_pairs_formula(5, 4).unwrap(), 11);
        assert_eq!(defect_pairs_formula(6, 5).unwrap(), 19);
        assert_eq!(defect_pairs_formula(2, 2).unwrap(), 0);
        assert!(defect_pairs_formula(1, 3).is_err());
        for n in 4..=6 {
            for r in 3..=5u32 {
                let g = GroundContext::uniform(n, r - 1).unwrap();
                let sys = SetSystem::k_subsets(g, 2).unwrap();
                let got = colorability_defect(&sys, r as usize).unwrap().value();
                assert_eq!(got, defect_pairs_formula(n as u64, u64::from(r)).unwrap(), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn certificate_rejects_tampering() {
        let sys = example_system();
        let cert = colorability_defect(&sys, 2).unwrap();
        assert!(cert.validate(&sys, 2).is_ok());
        let wrong = DefectCertificate::new(cert.covers().to_vec(), cert.value() + 1);
        assert!(wrong.validate(&sys, 2).is_err());
        let bad = DefectCertificate::new(subsets(&[&[2, 3], &[1]]), 3);
        assert!(bad.validate(&sys, 2).is_err());
        assert!(cert.validate(&sys, 3).is_err());
    }
}
