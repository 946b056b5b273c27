//! Exact phase-1 simplex over the rationals.
//!
//! Only feasibility is needed (find `x >= 0` with `Ax = b`), so a single
//! phase suffices: start from an all-artificial basis and drive the sum of
//! artificials to zero. Pivot selection follows Bland's rule (smallest
//! eligible variable index enters; ties in the ratio test break toward the
//! smallest basic variable index), which guarantees termination without any
//! perturbation or tolerance.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

pub(crate) enum LpOutcome {
    Feasible(Vec<Scalar>),
    Infeasible,
}

/// Finds `x >= 0` with `rows * x = rhs`, exactly.
///
/// `rows` is an `m x k` coefficient matrix given row by row; `rhs` has
/// length `m`. Returns one feasible point (a basic solution) or `Infeasible`.
pub(crate) fn solve_equality_nonneg(rows: &[Vec<Scalar>], rhs: &[Scalar]) -> LpOutcome {
    let m = rows.len();
    assert!(m > 0 && rhs.len() == m, "system shape mismatch");
    let k = rows[0].len();
    let width = k + m + 1;

    // Tableau layout per row: k structural columns, m artificial columns,
    // then the right-hand side. Rows are flipped so the rhs is nonnegative,
    // making the artificial basis feasible.
    let mut t: Vec<Vec<Scalar>> = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), k, "system shape mismatch");
        let flip = rhs[i].is_negative();
        let mut trow = Vec::with_capacity(width);
        for v in row {
            trow.push(if flip { -v } else { v.clone() });
        }
        for j in 0..m {
            trow.push(if j == i { Scalar::one() } else { Scalar::zero() });
        }
        trow.push(if flip { -&rhs[i] } else { rhs[i].clone() });
        t.push(trow);
    }
    let mut basis: Vec<usize> = (k..k + m).collect();

    // Reduced-cost row for minimizing the artificial sum: cost 0 on
    // structural and 1 on artificial columns, minus the sum of basic rows.
    // The last slot holds the negated objective value.
    let mut obj = vec![Scalar::zero(); width];
    for (j, slot) in obj.iter_mut().enumerate() {
        let mut column_sum = Scalar::zero();
        for row in &t {
            column_sum += &row[j];
        }
        let cost = if (k..k + m).contains(&j) { Scalar::one() } else { Scalar::zero() };
        *slot = cost - column_sum;
    }

    while let Some(entering) = (0..k + m).find(|&j| obj[j].is_negative()) {
        let mut leaving: Option<usize> = None;
        let mut best: Option<Scalar> = None;
        for r in 0..m {
            if !t[r][entering].is_positive() {
                continue;
            }
            let ratio = &t[r][width - 1] / &t[r][entering];
            let better = match (&best, leaving) {
                (None, _) => true,
                (Some(b), Some(lr)) => ratio < *b || (ratio == *b && basis[r] < basis[lr]),
                (Some(_), None) => unreachable!("best and leaving are set together"),
            };
            if better {
                best = Some(ratio);
                leaving = Some(r);
            }
        }
        // The phase objective is bounded below by zero, so with Bland's
        // rule an entering column always admits a leaving row.
        let lr = leaving.expect("phase-1 objective cannot be unbounded");
        pivot(&mut t, &mut obj, lr, entering);
        basis[lr] = entering;
    }

    if !obj[width - 1].is_zero() {
        // Minimum artificial sum is positive: the system has no solution
        // with x >= 0.
        return LpOutcome::Infeasible;
    }
    let mut x = vec![Scalar::zero(); k];
    for (r, &var) in basis.iter().enumerate() {
        if var < k {
            x[var] = t[r][width - 1].clone();
        }
    }
    LpOutcome::Feasible(x)
}

fn pivot(t: &mut [Vec<Scalar>], obj: &mut [Scalar], pr: usize, pc: usize) {
    let p = t[pr][pc].clone();
    for v in t[pr].iter_mut() {
        *v /= &p;
    }
    let pivot_row = t[pr].clone();
    for (r, row) in t.iter_mut().enumerate() {
        if r == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            *v -= &f * pv;
        }
    }
    if !obj[pc].is_zero() {
        let f = obj[pc].clone();
        for (v, pv) in obj.iter_mut().zip(&pivot_row) {
            *v -= &f * pv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn solve(rows: Vec<Vec<Scalar>>, rhs: Vec<Scalar>) -> Option<Vec<Scalar>> {
        match solve_equality_nonneg(&rows, &rhs) {
            LpOutcome::Feasible(x) => {
                for (row, b) in rows.iter().zip(&rhs) {
                    let lhs: Scalar = row.iter().zip(&x).map(|(a, v)| a * v).sum();
                    assert_eq!(lhs, *b, "claimed solution does not satisfy the system");
                }
                assert!(x.iter().all(|v| !v.is_negative()));
                Some(x)
            }
            LpOutcome::Infeasible => None,
        }
    }

    #[test]
    fn diagonal_system() {
        let x = solve(vec![vec![int(1), int(0)], vec![int(0), int(1)]], vec![int(2), frac(3, 7)])
            .unwrap();
        assert_eq!(x, vec![int(2), frac(3, 7)]);
    }

    #[test]
    fn negative_rhs_handled_by_row_flip() {
        let x = solve(vec![vec![int(-1), int(1)]], vec![int(-3)]).unwrap();
        let diff = &x[0] - &x[1];
        assert_eq!(diff, int(3));
    }

    #[test]
    fn infeasible_by_sign() {
        // x + y = -1 has no nonnegative solution.
        assert!(solve(vec![vec![int(1), int(1)]], vec![int(-1)]).is_none());
    }

    #[test]
    fn infeasible_by_inconsistency() {
        let rows = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        assert!(solve(rows, vec![int(1), int(2)]).is_none());
    }

    #[test]
    fn degenerate_zero_solution() {
        let x = solve(vec![vec![int(1), int(-1)]], vec![int(0)]).unwrap();
        assert_eq!(&x[0], &x[1]);
    }

    #[test]
    fn convex_weights() {
        // Barycentric coordinates of 1/3 between 0 and 1/2, plus the
        // normalization row: a tiny membership instance.
        let rows = vec![vec![int(0), frac(1, 2)], vec![int(1), int(1)]];
        let x = solve(rows, vec![frac(1, 3), int(1)]).unwrap();
        assert_eq!(x, vec![frac(1, 3), frac(2, 3)]);
    }
}
