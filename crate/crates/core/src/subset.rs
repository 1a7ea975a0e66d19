//! Fixed-width subsets of a ground set `[n]`, `n <= 128`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest ground set a [`Subset`] can address.
pub const MAX_GROUND: usize = 128;

/// A subset of `[n]` stored as a bit vector; bit `i - 1` holds element `i`.
///
/// Ordering is lexicographic on the increasing element sequences, so
/// `{1,2} < {1,2,3} < {1,3} < {2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u128);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u128) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// Builds a subset from 1-based elements.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut bits = 0u128;
        for e in elements {
            if e == 0 || e > MAX_GROUND {
                return Err(Error::input(format!("element {e} outside 1..={MAX_GROUND}")));
            }
            bits |= 1u128 << (e - 1);
        }
        Ok(Subset(bits))
    }

    /// `[n]` itself.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND);
        if n == MAX_GROUND {
            Subset(u128::MAX)
        } else {
            Subset((1u128 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        assert!((1..=MAX_GROUND).contains(&e));
        Subset(1u128 << (e - 1))
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_GROUND).contains(&e) && self.0 >> (e - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn insert(&mut self, e: usize) {
        *self = self.union(Subset::singleton(e));
    }

    pub fn remove(&mut self, e: usize) {
        *self = self.difference(Subset::singleton(e));
    }

    /// Largest element, or 0 for the empty set.
    pub fn max_element(self) -> usize {
        128 - self.0.leading_zeros() as usize
    }

    /// Smallest element, or `None` for the empty set.
    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Elements in increasing order, 1-based.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let tz = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(tz + 1)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        let a = Subset::from_elements([1, 2]).unwrap();
        let b = Subset::from_elements([1, 2, 3]).unwrap();
        let c = Subset::from_elements([1, 3]).unwrap();
        let d = Subset::from_elements([2]).unwrap();
        let mut v = vec![d, c, b, a];
        v.sort();
        assert_eq!(v, vec![a, b, c, d]);
        assert!(Subset::EMPTY < a);
    }

    #[test]
    fn element_range() {
        assert!(Subset::from_elements([0]).is_err());
        assert!(Subset::from_elements([129]).is_err());
        let s = Subset::from_elements([128, 1]).unwrap();
        assert_eq!(s.to_vec(), vec![1, 128]);
        assert_eq!(s.max_element(), 128);
        assert_eq!(Subset::full(128).len(), 128);
    }
}
