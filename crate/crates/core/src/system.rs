//! Ground sets with intersection multiplicities, and set systems over them.

use serde::{Deserialize, Serialize};

use crate::combinatorics::combinations;
use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_GROUND};

/// The ground set `[n]` together with its multiplicity vector `s`.
///
/// `[n]^s` is the multiset in which element `i` occurs `s_i` times; its
/// total size is [`GroundContext::multiset_size`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundContext {
    s: Vec<u32>,
}

impl GroundContext {
    pub fn new(s: Vec<u32>) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::input("ground set must have n >= 1"));
        }
        if s.len() > MAX_GROUND {
            return Err(Error::input(format!("ground set size {} exceeds {MAX_GROUND}", s.len())));
        }
        if let Some(i) = s.iter().position(|&x| x == 0) {
            return Err(Error::input(format!("multiplicity s_{} must be positive", i + 1)));
        }
        Ok(GroundContext { s })
    }

    /// Constant multiplicity `s_i = s` for all `i`.
    pub fn uniform(n: usize, s: u32) -> Result<Self> {
        GroundContext::new(vec![s; n])
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    /// Multiplicity of 1-based element `i`.
    pub fn multiplicity(&self, i: usize) -> u32 {
        self.s[i - 1]
    }

    /// `sum_i s_i`, the size of `[n]^s` counting multiplicities.
    pub fn multiset_size(&self) -> u64 {
        self.s.iter().map(|&x| u64::from(x)).sum()
    }

    /// `Some(s)` when every `s_i` equals `s`.
    pub fn constant(&self) -> Option<u32> {
        let first = self.s[0];
        self.s.iter().all(|&x| x == first).then_some(first)
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.n())
    }
}

/// An ordered family of distinct non-empty subsets of `[n]`.
///
/// Members are kept in lexicographic order of their element sequences, so two
/// systems with the same members compare and serialize identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SetSystemJson", into = "SetSystemJson")]
pub struct SetSystem {
    ground: GroundContext,
    members: Vec<Subset>,
}

impl SetSystem {
    pub fn new(ground: GroundContext, mut members: Vec<Subset>) -> Result<Self> {
        let full = ground.full_set();
        for m in &members {
            if m.is_empty() {
                return Err(Error::input("set system members must be non-empty"));
            }
            if !m.is_subset_of(full) {
                return Err(Error::input(format!("member {m} is not contained in [{}]", ground.n())));
            }
        }
        members.sort();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate member {}", w[0])));
        }
        Ok(SetSystem { ground, members })
    }

    /// Convenience constructor from 1-based element lists.
    pub fn from_lists<I, J>(ground: GroundContext, lists: I) -> Result<Self>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = usize>,
    {
        let members = lists
            .into_iter()
            .map(Subset::from_elements)
            .collect::<Result<Vec<_>>>()?;
        SetSystem::new(ground, members)
    }

    /// `binom([n], k)`: all `k`-subsets of `[n]`.
    pub fn k_subsets(ground: GroundContext, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("k-subsets need k >= 1"));
        }
        let n = ground.n();
        let members = combinations(n, k)
            .map(|c| Subset::from_elements(c.into_iter().map(|i| i + 1)))
            .collect::<Result<Vec<_>>>()?;
        SetSystem::new(ground, members)
    }

    pub fn ground(&self) -> &GroundContext {
        &self.ground
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Same members over a different multiplicity vector of equal length.
    pub fn with_ground(&self, ground: GroundContext) -> Result<Self> {
        if ground.n() != self.ground.n() {
            return Err(Error::input(format!(
                "ground size mismatch: system uses n = {}, got {}",
                self.ground.n(),
                ground.n()
            )));
        }
        Ok(SetSystem { ground, members: self.members.clone() })
    }

    /// True iff no member is contained in `set`.
    pub fn is_free(&self, set: Subset) -> bool {
        self.members.iter().all(|m| !m.is_subset_of(set))
    }

    /// When the system is exactly `binom([n], k)` for some `k`, returns `k`.
    pub fn uniform_complete_k(&self) -> Option<usize> {
        let k = self.members.first()?.len();
        let n = self.ground.n() as u128;
        let all_k = self.members.iter().all(|m| m.len() == k);
        (all_k && self.members.len() as u128 == crate::combinatorics::binomial(n, k as u128))
            .then_some(k)
    }
}

#[derive(Serialize, Deserialize)]
struct SetSystemJson {
    n: usize,
    s: Vec<u32>,
    sets: Vec<Vec<usize>>,
}

impl TryFrom<SetSystemJson> for SetSystem {
    type Error = Error;

    fn try_from(j: SetSystemJson) -> Result<Self> {
        if j.s.len() != j.n {
            return Err(Error::input(format!("s has {} entries but n = {}", j.s.len(), j.n)));
        }
        SetSystem::from_lists(GroundContext::new(j.s)?, j.sets)
    }
}

impl From<SetSystem> for SetSystemJson {
    fn from(sys: SetSystem) -> Self {
        SetSystemJson {
            n: sys.ground.n(),
            s: sys.ground.s.clone(),
            sets: sys.members.iter().map(|m| m.to_vec()).collect(),
        }
    }
}
