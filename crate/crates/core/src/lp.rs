//! Exact convex-hull membership by a phase-one simplex over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// True iff `target` is a convex combination of `points`.
///
/// Solves `sum_k x_k p_k = target, sum_k x_k = 1, x >= 0` with artificial
/// variables and Bland's rule; feasible iff the artificial sum reaches zero.
/// Coordinates must be non-negative.
pub(crate) fn in_convex_hull(points: &[Vec<u32>], target: &[u32]) -> bool {
    if points.is_empty() {
        return false;
    }
    let dim = target.len();
    let k = points.len();
    let rows = dim + 1;
    let q = |v: u32| BigRational::from_integer(BigInt::from(v));

    // columns: k structural, rows artificial, then the right-hand side
    let width = k + rows + 1;
    let mut t: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row = vec![BigRational::zero(); width];
            for (j, p) in points.iter().enumerate() {
                row[j] = if i < dim { q(p[i]) } else { BigRational::one() };
            }
            row[k + i] = BigRational::one();
            row[width - 1] = if i < dim { q(target[i]) } else { BigRational::one() };
            row
        })
        .collect();
    let mut basis: Vec<usize> = (k..k + rows).collect();

    // reduced costs of "minimize sum of artificials"
    let mut cost = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..k {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }

    while let Some(enter) = (0..k + rows).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // unbounded cannot happen: the objective is bounded below by zero
        let (pr, _) = leave.expect("phase-one objective is bounded");
        let pivot = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x /= &pivot;
        }
        let pivot_row = t[pr].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        let f = cost[enter].clone();
        for (x, p) in cost.iter_mut().zip(&pivot_row) {
            *x -= &f * p;
        }
        basis[pr] = enter;
    }
    // cost[rhs] holds minus the artificial sum
    cost[width - 1].is_zero()
}
