//! Counting and enumeration helpers.

/// `binom(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        match acc.checked_mul(n - i) {
            Some(v) => acc = v / (i + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Number of `r`-multisets over an `m`-element set.
pub fn multiset_count(m: u128, r: u128) -> u128 {
    if m == 0 {
        return u128::from(r == 0);
    }
    binomial(m + r - 1, r)
}

/// All non-decreasing sequences of length `r` over `0..m`, in lexicographic
/// order. These are exactly the `r`-multisubsets of an `m`-set.
pub fn multisets(m: usize, r: usize) -> Multisets {
    Multisets {
        m,
        current: if m == 0 && r > 0 { None } else { Some(vec![0; r]) },
    }
}

pub struct Multisets {
    m: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let out = cur.clone();
        let mut next = cur;
        // bump the rightmost position that can still grow, reset the tail
        if let Some(pos) = (0..next.len()).rev().find(|&p| next[p] + 1 < self.m) {
            let v = next[pos] + 1;
            for x in &mut next[pos..] {
                *x = v;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// All strictly increasing sequences of length `k` over `0..m`, in
/// lexicographic order.
pub fn combinations(m: usize, k: usize) -> Combinations {
    Combinations {
        m,
        current: (k <= m).then(|| (0..k).collect()),
    }
}

pub struct Combinations {
    m: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let out = cur.clone();
        let k = cur.len();
        let mut next = cur;
        if let Some(pos) = (0..k).rev().find(|&p| next[p] < self.m - k + p) {
            next[pos] += 1;
            for q in pos + 1..k {
                next[q] = next[q - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Largest prime dividing `r`, by trial division. `None` when `r < 2`.
pub fn largest_prime_factor(r: u64) -> Option<u64> {
    if r < 2 {
        return None;
    }
    let mut rest = r;
    let mut largest = 1;
    let mut p = 2;
    while p * p <= rest {
        while rest.is_multiple_of(p) {
            largest = p;
            rest /= p;
        }
        p += 1;
    }
    if rest > 1 {
        largest = rest;
    }
    Some(largest)
}

/// `ceil(a / b)` for `b > 0`.
pub fn div_ceil(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}
