//! Closed-form chromatic formulas, the largest-prime-factor lower bound, and
//! per-instance comparison reports.

use serde::Serialize;

use crate::coloring::{chromatic_number, ColorClassOracle, SearchBudget};
use crate::combinatorics::{self, div_ceil};
use crate::defect::colorability_defect;
use crate::error::{Error, Result};
use crate::kneser::{KneserInstance, Variant};
use crate::system::SetSystem;

pub fn largest_prime_factor(r: u64) -> Result<u64> {
    combinatorics::largest_prime_factor(r).ok_or_else(|| Error::input(format!("r = {r} has no prime factor")))
}

/// Lower bound `ceil(cd^r_s(S) / (r - 1)) <= chi(KG^r_s(S))`, available only
/// when every `s_i` is below the largest prime factor of `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefectBound {
    Bound(u64),
    /// Some `s_i` (1-based `element`) is not below the largest prime factor.
    ConditionNotMet { element: usize, s: u32, largest_prime: u64 },
}

impl DefectBound {
    pub fn value(self) -> Option<u64> {
        match self {
            DefectBound::Bound(b) => Some(b),
            DefectBound::ConditionNotMet { .. } => None,
        }
    }
}

/// Checks the prime-factor condition without computing the defect.
pub fn prime_condition(system: &SetSystem, r: u64) -> Result<Option<(usize, u32, u64)>> {
    let p = largest_prime_factor(r)?;
    Ok(system
        .ground()
        .s()
        .iter()
        .position(|&s| u64::from(s) >= p)
        .map(|i| (i + 1, system.ground().s()[i], p)))
}

pub fn lower_bound_theorem(system: &SetSystem, r: u64) -> Result<DefectBound> {
    if r < 2 {
        return Err(Error::input(format!("lower bound needs r >= 2, got {r}")));
    }
    if let Some((element, s, largest_prime)) = prime_condition(system, r)? {
        return Ok(DefectBound::ConditionNotMet { element, s, largest_prime });
    }
    let cd = colorability_defect(system, r as usize)?.value();
    Ok(DefectBound::Bound(div_ceil(cd, r - 1)))
}

/// `1 + ceil((ns - rk + 1) / (s * floor((r-1)/s)))`, an upper bound on
/// `chi(KG^r_s(binom([n], k)))` for `n >= k >= 2`, `r > s >= 2`, `rk <= sn`.
pub fn upper_bound_star(n: u64, k: u64, r: u64, s: u64) -> Result<u64> {
    if !(n >= k && k >= 2 && r > s && s >= 2 && r * k <= s * n) {
        return Err(Error::input(format!(
            "upper bound needs n >= k >= 2, r > s >= 2, rk <= sn; got n={n} k={k} r={r} s={s}"
        )));
    }
    let q = (r - 1) / s;
    Ok(1 + div_ceil(n * s - r * k + 1, s * q))
}

/// `1 + n - floor((2r - 1)/s)` for `chi(KG^r_s(binom([n], 2)))`.
///
/// Requires both `r/2 <= s < r - 1` and `floor((r-1)/s) = 1`, plus the
/// general `2r <= sn`. The two range descriptions disagree at boundary
/// values (e.g. `r = 5, s = 4`), which are rejected.
pub fn formula_chi_multiset_pairs(n: u64, r: u64, s: u64) -> Result<u64> {
    let halves = r <= 2 * s && s + 1 < r;
    let quotient = s >= 1 && (r - 1) / s == 1;
    if !(halves && quotient && n >= 2 && 2 * r <= s * n) {
        return Err(Error::input(format!(
            "pairs formula with multiplicities needs r/2 <= s < r-1, floor((r-1)/s) = 1 and 2r <= sn; got n={n} r={r} s={s}"
        )));
    }
    Ok(1 + n - (2 * r - 1) / s)
}

/// `chi(kg^r_{r-1}(binom([n], 2)))`: `ceil(binom(n,2)/(r-1))` for `n < r`,
/// `n - floor(r/2)` for `3 <= r <= n`.
///
/// At `r = 2` the hypergraph is the Kneser graph `K(n, 2)`, whose triangles
/// are independent, and the star count `n - 1` overshoots for `n >= 4`; that
/// case is rejected.
pub fn formula_chi_set_pairs(n: u64, r: u64) -> Result<u64> {
    if n < 2 || r < 3 {
        return Err(Error::input(format!("pairs formula without multiplicities needs n >= 2, r >= 3; got n={n} r={r}")));
    }
    Ok(if n < r { div_ceil(n * (n - 1) / 2, r - 1) } else { n - r / 2 })
}

/// Largest `t` with `t(t+1)/2 <= n`, i.e. `floor(sqrt(2n + 1/4) - 1/2)`.
pub fn triangular_root(n: u64) -> u64 {
    // start from the float estimate, then settle exactly
    let mut t = ((2.0 * n as f64 + 0.25).sqrt() - 0.5).floor().max(0.0) as u64;
    while t * (t + 1) / 2 > n {
        t -= 1;
    }
    while (t + 1) * (t + 2) / 2 <= n {
        t += 1;
    }
    t
}

/// `chi(kg^4_2(binom([n], 2))) = n - triangular_root(n)` for `n >= 4`.
pub fn formula_chi_set_pairs_r4_s2(n: u64) -> Result<u64> {
    if n < 4 {
        return Err(Error::input(format!("formula needs n >= 4, got {n}")));
    }
    Ok(n - triangular_root(n))
}

/// Defect, lower bound, exact chromatic numbers of both variants and the
/// upper bound for one `(S, r, s)`. Chromatic fields are `None` when the
/// variant is undefined or the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub instance: String,
    pub n: usize,
    pub r: usize,
    pub s: String,
    pub vertices: usize,
    pub condition_met: bool,
    pub lower_bound: Option<u64>,
    pub defect: u64,
    pub chi_with_multiplicities: Option<usize>,
    pub chi_without_multiplicities: Option<usize>,
    pub upper_bound: Option<u64>,
}

impl BoundReport {
    /// Violated report invariants, as human-readable lines.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let (true, Some(lb), Some(chi)) = (self.condition_met, self.lower_bound, self.chi_with_multiplicities) {
            if lb > chi as u64 {
                out.push(format!("lower bound {lb} exceeds chi(KG) = {chi}"));
            }
        }
        if let (Some(a), Some(b)) = (self.chi_without_multiplicities, self.chi_with_multiplicities) {
            if a > b {
                out.push(format!("chi(kg) = {a} exceeds chi(KG) = {b}"));
            }
        }
        if let (Some(ub), Some(chi)) = (self.upper_bound, self.chi_with_multiplicities) {
            if chi as u64 > ub {
                out.push(format!("chi(KG) = {chi} exceeds the upper bound {ub}"));
            }
        }
        out
    }
}

pub fn bound_report(system: &SetSystem, r: usize, budget: &SearchBudget) -> Result<BoundReport> {
    if r < 2 {
        return Err(Error::input(format!("report needs r >= 2, got {r}")));
    }
    let ground = system.ground();
    let defect = colorability_defect(system, r)?.value();
    let condition_met = prime_condition(system, r as u64)?.is_none();
    let lower_bound = condition_met.then(|| div_ceil(defect, r as u64 - 1));

    let solve = |variant: Variant| -> Result<Option<usize>> {
        let Ok(instance) = KneserInstance::new(system.clone(), r, variant) else {
            return Ok(None);
        };
        if budget.is_zero() {
            return Ok(None);
        }
        let oracle = ColorClassOracle::implicit(&instance)?;
        match chromatic_number(&oracle, budget) {
            Ok(res) => Ok(Some(res.chi)),
            Err(Error::Budget { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let chi_with = solve(Variant::WithMultiplicities)?;
    let chi_without = solve(Variant::WithoutMultiplicities)?;

    let upper_bound = match (system.uniform_complete_k(), ground.constant()) {
        (Some(k), Some(s)) => upper_bound_star(ground.n() as u64, k as u64, r as u64, u64::from(s)).ok(),
        _ => None,
    };
    let s = match ground.constant() {
        Some(c) => c.to_string(),
        None => ground.s().iter().map(u32::to_string).collect::<Vec<_>>().join(","),
    };
    Ok(BoundReport {
        instance: format!("S with {} members over [{}], r = {r}, s = {s}", system.len(), ground.n()),
        n: ground.n(),
        r,
        s,
        vertices: system.len(),
        condition_met,
        lower_bound,
        defect,
        chi_with_multiplicities: chi_with,
        chi_without_multiplicities: chi_without,
        upper_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::GroundContext;

    #[test]
    fn prime_factors() {
        assert_eq!(largest_prime_factor(12).unwrap(), 3);
        assert_eq!(largest_prime_factor(4).unwrap(), 2);
        assert_eq!(largest_prime_factor(7).unwrap(), 7);
        assert!(largest_prime_factor(1).is_err());
    }

    #[test]
    fn theorem_condition() {
        let pairs = |n: usize, s: u32| SetSystem::k_subsets(GroundContext::uniform(n, s).unwrap(), 2).unwrap();
        let cd = colorability_defect(&pairs(5, 1), 3).unwrap().value();
        assert_eq!(lower_bound_theorem(&pairs(5, 1), 3).unwrap(), DefectBound::Bound(div_ceil(cd, 2)));
        assert_eq!(
            lower_bound_theorem(&pairs(4, 2), 4).unwrap(),
            DefectBound::ConditionNotMet { element: 1, s: 2, largest_prime: 2 }
        );
        assert!(lower_bound_theorem(&pairs(4, 2), 6).unwrap().value().is_some());
        assert!(lower_bound_theorem(&pairs(4, 2), 1).is_err());
    }

    #[test]
    fn upper_bound_examples() {
        for n in 4..=10 {
            assert_eq!(upper_bound_star(n, 2, 4, 2).unwrap(), n - 2);
        }
        assert_eq!(upper_bound_star(6, 2, 4, 3).unwrap(), 5);
        // rk = sn leaves numerator 1
        assert_eq!(upper_bound_star(6, 2, 6, 2).unwrap(), 2);
        assert_eq!(upper_bound_star(9, 3, 6, 2).unwrap(), 2);
        assert!(upper_bound_star(3, 2, 4, 2).is_err());
        assert!(upper_bound_star(6, 2, 3, 3).is_err());
    }

    #[test]
    fn multiset_pairs_formula() {
        for n in 4..=10 {
            assert_eq!(formula_chi_multiset_pairs(n, 4, 2).unwrap(), n - 2);
        }
        assert_eq!(formula_chi_multiset_pairs(5, 5, 3).unwrap(), 3);
        assert_eq!(formula_chi_multiset_pairs(4, 4, 2).unwrap(), 2);
        // boundary values where the two stated ranges disagree
        assert!(formula_chi_multiset_pairs(6, 5, 4).is_err());
        assert!(formula_chi_multiset_pairs(6, 5, 2).is_err());
        // agrees with the upper bound wherever both apply
        for n in 2..=12 {
            for r in 3..=9 {
                for s in 2..r {
                    if let Ok(f) = formula_chi_multiset_pairs(n, r, s) {
                        assert_eq!(Some(f), upper_bound_star(n, 2, r, s).ok());
                    }
                }
            }
        }
    }

    #[test]
    fn set_pairs_formula() {
        assert_eq!(formula_chi_set_pairs(4, 4).unwrap(), 2);
        assert_eq!(formula_chi_set_pairs(3, 4).unwrap(), 1);
        assert_eq!(formula_chi_set_pairs(6, 4).unwrap(), 4);
        assert_eq!(formula_chi_set_pairs(6, 5).unwrap(), 4);
        assert!(formula_chi_set_pairs(5, 2).is_err());
    }

    #[test]
    fn triangular_form() {
        assert_eq!(formula_chi_set_pairs_r4_s2(4).unwrap(), 2);
        assert_eq!(formula_chi_set_pairs_r4_s2(6).unwrap(), 3);
        assert_eq!(formula_chi_set_pairs_r4_s2(10).unwrap(), 6);
        assert!(formula_chi_set_pairs_r4_s2(3).is_err());
        assert_eq!(triangular_root(0), 0);
        assert_eq!(triangular_root(u64::from(u32::MAX)), 92681);
    }
}
