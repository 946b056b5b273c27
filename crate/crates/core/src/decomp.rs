//! Convex decomposition into panmagic permutation matrices, exact
//! convex-hull membership, and non-decomposability certificates.
//!
//! Order 5 is special: the ten panmagic permutation matrices span the whole
//! space of panmagic 5x5 matrices, so every panstochastic 5x5 matrix is a
//! convex combination of them and [`decompose5`] computes one directly from
//! a closed-form coordinate solve. At every other order greater than 1 such
//! decompositions can fail to exist; [`non_decomp_certificate`] proves
//! non-decomposability by exhibiting a positive entry that no panmagic
//! permutation within the support can cover.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::matrix::{LineViolation, MagicReport, SquareMatrix, StochasticReport};
use crate::perm::{affine_perm, enumerate_panmagic, AffineSpec, Permutation};
use crate::scalar::Scalar;
use crate::simplex::{solve_equality_nonneg, LpOutcome};

/// Errors from the decomposition operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompError {
    /// The operation is specific to one order (5 for the coordinate solve).
    WrongOrder {
        expected: usize,
        got: usize,
    },
    NotPanmagic(LineViolation),
    NotPanstochastic(StochasticReport),
    EmptyVertexList,
    OrderMismatch {
        left: usize,
        right: usize,
    },
    /// The pinned entry of a forced-chain propagation must be nonzero.
    EntryNotInSupport {
        row: usize,
        col: usize,
    },
}

impl fmt::Display for DecompError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompError::WrongOrder { expected, got } => {
                write!(f, "operation requires order {}, got {}", expected, got)
            }
            DecompError::NotPanmagic(v) => write!(f, "matrix is not panmagic: {}", v),
            DecompError::NotPanstochastic(r) => write!(f, "matrix is not panstochastic: {}", r),
            DecompError::EmptyVertexList => f.write_str("vertex list is empty"),
            DecompError::OrderMismatch { left, right } => {
                write!(f, "matrix orders differ: {} vs {}", left, right)
            }
            DecompError::EntryNotInSupport { row, col } => {
                write!(f, "entry ({}, {}) is zero, nothing to pin", row, col)
            }
        }
    }
}

impl core::error::Error for DecompError {}

/// Coordinates of a panmagic 5x5 matrix in the spanning family: the matrix
/// equals `sum_c alpha[c] P_{2x+c} + sum_d beta[d] P_{3x+d}`, with the
/// one-dimensional kernel pinned by `beta[0] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eq1Coordinates {
    pub alpha: [Scalar; 5],
    pub beta: [Scalar; 5],
}

/// One term of a convex decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompTerm {
    pub perm: Permutation,
    pub coeff: Scalar,
}

/// A convex combination of panmagic permutation matrices: coefficients are
/// strictly positive and sum to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionResult {
    pub terms: Vec<DecompTerm>,
}

impl DecompositionResult {
    /// Evaluates the combination back into a matrix.
    pub fn matrix(&self) -> SquareMatrix {
        let first = &self.terms.first().expect("a decomposition has at least one term").perm;
        let mut acc = SquareMatrix::zeros(first.degree());
        for term in &self.terms {
            acc = &acc + &SquareMatrix::from_permutation(&term.perm).scaled(&term.coeff);
        }
        acc
    }
}

/// Outcome of an exact convex-hull membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Coefficients `lambda >= 0` with `sum lambda = 1` and
    /// `sum lambda_v V_v = A`, indexed like the vertex list.
    Feasible(Vec<Scalar>),
    Infeasible,
}

/// A positive entry that no support-compatible panmagic permutation covers.
///
/// Soundness: a convex combination of permutation matrices must cover every
/// positive entry of its value with at least one constituent permutation
/// whose support lies inside the value's support, so such an entry proves
/// the matrix is not a convex combination of panmagic permutation matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonDecompCertificate {
    /// The uncoverable entry, as (row, column).
    pub entry: (usize, usize),
    /// Backtracking nodes visited while exhausting the search for this
    /// entry (a measure of how hard the refutation was).
    pub search_exhausted: u64,
}

/// The modular coordinate `(i - m*j) mod 5` used by the order-5 spanning
/// family: `P_{mx+c}` has its ones exactly where `i - m*j = c (mod 5)`.
fn diag5(i: usize, j: usize, m: usize) -> usize {
    (i + 5 * m - m * j) % 5
}

/// Coordinates of a panmagic 5x5 matrix in the spanning family, with
/// `beta[0] = 0`.
///
/// The solve is closed-form: cell `(3c mod 5, c)` is the unique cell of
/// column `c` on down-2-diagonal `c` and down-3-diagonal `0`, so it reads
/// off `alpha[c] + beta[0]` directly; column 0 then yields the betas. The
/// reconstruction identity is verified on all 25 entries before returning.
pub fn solve_eq1(a: &SquareMatrix) -> Result<Eq1Coordinates, DecompError> {
    if a.order() != 5 {
        return Err(DecompError::WrongOrder { expected: 5, got: a.order() });
    }
    if let MagicReport::Violation(v) = a.check_panmagic() {
        return Err(DecompError::NotPanmagic(v));
    }
    let alpha: [Scalar; 5] = core::array::from_fn(|c| a.get(3 * c % 5, c).clone());
    let beta: [Scalar; 5] = core::array::from_fn(|d| a.get(d, 0) - &alpha[d]);
    for i in 0..5 {
        for j in 0..5 {
            let reconstructed = &alpha[diag5(i, j, 2)] + &beta[diag5(i, j, 3)];
            assert_eq!(
                reconstructed,
                *a.get(i, j),
                "spanning family failed to reconstruct a panmagic 5x5 matrix"
            );
        }
    }
    Ok(Eq1Coordinates { alpha, beta })
}

/// Decomposes a panstochastic 5x5 matrix into a convex combination of
/// panmagic permutation matrices.
///
/// Starting from [`solve_eq1`], the kernel shift `alpha - t, beta + t` with
/// `t = -min beta` if `min beta < 0`, else `t = min alpha` if
/// `min alpha < 0`, else `t = 0` makes all ten coefficients nonnegative
/// (feasible because each pair `alpha[c] + beta[d]` is one of the entries,
/// hence nonnegative). Zero terms are dropped; term order is the doubling
/// family `2x+c` for ascending `c`, then the tripling family `3x+d`.
pub fn decompose5(a: &SquareMatrix) -> Result<DecompositionResult, DecompError> {
    if a.order() != 5 {
        return Err(DecompError::WrongOrder { expected: 5, got: a.order() });
    }
    let verdict = a.check_panstochastic();
    if !verdict.holds() {
        return Err(DecompError::NotPanstochastic(verdict));
    }
    let Eq1Coordinates { alpha, beta } = solve_eq1(a)?;
    let min_alpha = alpha.iter().min().expect("five coordinates");
    let min_beta = beta.iter().min().expect("five coordinates");
    let t = if min_beta.is_negative() {
        -min_beta
    } else if min_alpha.is_negative() {
        min_alpha.clone()
    } else {
        Scalar::zero()
    };

    let mut terms = Vec::new();
    let mut push = |multiplier: usize, shift: usize, coeff: Scalar| {
        if coeff.is_positive() {
            let perm = affine_perm(AffineSpec { a: multiplier, b: shift }, 5)
                .expect("2 and 3 are coprime to 5");
            terms.push(DecompTerm { perm, coeff });
        } else {
            assert!(coeff.is_zero(), "shift rule produced a negative coefficient");
        }
    };
    for (c, value) in alpha.iter().enumerate() {
        push(2, c, value - &t);
    }
    for (d, value) in beta.iter().enumerate() {
        push(3, d, value + &t);
    }

    let result = DecompositionResult { terms };
    let total: Scalar = result.terms.iter().map(|term| &term.coeff).sum();
    assert!(total.is_one(), "convex coefficients must sum to 1");
    assert_eq!(result.matrix(), *a, "decomposition must reconstruct its input");
    Ok(result)
}

/// Exact convex-hull membership: is `a` a convex combination of the listed
/// vertices?
///
/// Decided by exact-rational phase-1 simplex over the system of all entry
/// equations plus the normalization row, with Bland's rule guaranteeing
/// termination.
pub fn membership(a: &SquareMatrix, vertices: &[SquareMatrix]) -> Result<Membership, DecompError> {
    if vertices.is_empty() {
        return Err(DecompError::EmptyVertexList);
    }
    let n = a.order();
    for v in vertices {
        if v.order() != n {
            return Err(DecompError::OrderMismatch { left: n, right: v.order() });
        }
    }
    let mut rows = Vec::with_capacity(n * n + 1);
    let mut rhs = Vec::with_capacity(n * n + 1);
    for i in 0..n {
        for j in 0..n {
            rows.push(vertices.iter().map(|v| v.get(i, j).clone()).collect());
            rhs.push(a.get(i, j).clone());
        }
    }
    rows.push(vec![Scalar::one(); vertices.len()]);
    rhs.push(Scalar::one());
    match solve_equality_nonneg(&rows, &rhs) {
        LpOutcome::Feasible(lambda) => Ok(Membership::Feasible(lambda)),
        LpOutcome::Infeasible => Ok(Membership::Infeasible),
    }
}

/// Searches for a positive entry of a panstochastic matrix that no panmagic
/// permutation with support inside `supp a` can cover.
///
/// Entries are scanned column by column (ascending column, then ascending
/// row within the column), so certificates are deterministic. For each
/// candidate entry, a backtracking search pins `pi(j) = i` and tries to
/// extend to a full panmagic permutation choosing rows only from each
/// column's support, columns ordered by fewest choices first; the value,
/// difference, and sum used-sets prune. The first entry whose search
/// exhausts is returned. Absence of a certificate does not prove the matrix
/// decomposable.
pub fn non_decomp_certificate(
    a: &SquareMatrix,
) -> Result<Option<NonDecompCertificate>, DecompError> {
    let verdict = a.check_panstochastic();
    if !verdict.holds() {
        return Err(DecompError::NotPanstochastic(verdict));
    }
    let n = a.order();
    let col_support: Vec<Vec<usize>> =
        (0..n).map(|j| (0..n).filter(|&i| !a.get(i, j).is_zero()).collect()).collect();
    for j in 0..n {
        for &i in &col_support[j] {
            let mut nodes = 0u64;
            if !covering_perm_exists(n, &col_support, (i, j), &mut nodes) {
                return Ok(Some(NonDecompCertificate { entry: (i, j), search_exhausted: nodes }));
            }
        }
    }
    Ok(None)
}

/// Is there a panmagic permutation with `pi(pin.1) = pin.0` choosing every
/// image from the column supports?
fn covering_perm_exists(
    n: usize,
    col_support: &[Vec<usize>],
    pin: (usize, usize),
    nodes: &mut u64,
) -> bool {
    let (pin_row, pin_col) = pin;
    let mut order: Vec<usize> = (0..n).filter(|&j| j != pin_col).collect();
    order.sort_by_key(|&j| (col_support[j].len(), j));
    let mut used_value = vec![false; n];
    let mut used_diff = vec![false; n];
    let mut used_sum = vec![false; n];
    used_value[pin_row] = true;
    used_diff[(pin_row + n - pin_col) % n] = true;
    used_sum[(pin_row + pin_col) % n] = true;
    extend(n, col_support, &order, 0, &mut used_value, &mut used_diff, &mut used_sum, nodes)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    n: usize,
    col_support: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    used_value: &mut [bool],
    used_diff: &mut [bool],
    used_sum: &mut [bool],
    nodes: &mut u64,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let j = order[depth];
    for &i in &col_support[j] {
        let diff = (i + n - j) % n;
        let sum = (i + j) % n;
        if used_value[i] || used_diff[diff] || used_sum[sum] {
            continue;
        }
        *nodes += 1;
        used_value[i] = true;
        used_diff[diff] = true;
        used_sum[sum] = true;
        let found =
            extend(n, col_support, order, depth + 1, used_value, used_diff, used_sum, nodes);
        used_value[i] = false;
        used_diff[diff] = false;
        used_sum[sum] = false;
        if found {
            return true;
        }
    }
    false
}

/// One forced assignment `pi(column) = row` discovered by propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForcedAssignment {
    pub column: usize,
    pub row: usize,
}

/// Why a forced-chain propagation stopped in contradiction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagationConflict {
    /// The forced assignment repeats an up-diagonal (`row + column mod n`).
    UpDiagonalReused { column: usize, row: usize },
    /// The forced assignment repeats a down-diagonal (`row - column mod n`).
    DownDiagonalReused { column: usize, row: usize },
    /// An unassigned column has no remaining support rows.
    ColumnExhausted { column: usize },
    /// An unused row value has no remaining column that could host it.
    RowUncoverable { row: usize },
}

/// The deterministic propagation trace grown from one pinned assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagationTrace {
    /// Assignments forced after the pin, in discovery order.
    pub assignments: Vec<ForcedAssignment>,
    /// The contradiction that ended propagation, if one was reached.
    pub conflict: Option<PropagationConflict>,
}

/// Propagates the consequences of pinning `pi(entry.1) = entry.0` for a
/// permutation restricted to `supp a`.
///
/// Alternates two sweeps until a fixpoint or a contradiction: an ascending
/// column sweep forcing any unassigned column whose support has exactly one
/// unused row left, then an ascending row sweep forcing any unused row that
/// only one unassigned column can still host. Each forced assignment is
/// checked against the diagonal used-sets, so the trace replays exactly the
/// chain of implications a hand proof would follow. The pinned entry must
/// be nonzero.
pub fn forced_chain(
    a: &SquareMatrix,
    entry: (usize, usize),
) -> Result<PropagationTrace, DecompError> {
    let (pin_row, pin_col) = entry;
    let n = a.order();
    if pin_row >= n || pin_col >= n || a.get(pin_row, pin_col).is_zero() {
        return Err(DecompError::EntryNotInSupport { row: pin_row, col: pin_col });
    }
    let col_support: Vec<Vec<usize>> =
        (0..n).map(|j| (0..n).filter(|&i| !a.get(i, j).is_zero()).collect()).collect();

    let mut assigned = vec![false; n];
    let mut used_value = vec![false; n];
    let mut used_diff = vec![false; n];
    let mut used_sum = vec![false; n];
    let mut trace = PropagationTrace { assignments: Vec::new(), conflict: None };

    let place = |column: usize,
                 row: usize,
                 pinned: bool,
                 assigned: &mut [bool],
                 used_value: &mut [bool],
                 used_diff: &mut [bool],
                 used_sum: &mut [bool],
                 trace: &mut PropagationTrace|
     -> bool {
        if !pinned {
            trace.assignments.push(ForcedAssignment { column, row });
        }
        let diff = (row + n - column) % n;
        let sum = (row + column) % n;
        if used_diff[diff] {
            trace.conflict = Some(PropagationConflict::DownDiagonalReused { column, row });
            return false;
        }
        if used_sum[sum] {
            trace.conflict = Some(PropagationConflict::UpDiagonalReused { column, row });
            return false;
        }
        assigned[column] = true;
        used_value[row] = true;
        used_diff[diff] = true;
        used_sum[sum] = true;
        true
    };

    if !place(
        pin_col,
        pin_row,
        true,
        &mut assigned,
        &mut used_value,
        &mut used_diff,
        &mut used_sum,
        &mut trace,
    ) {
        return Ok(trace);
    }

    loop {
        let mut changed = false;
        // Column sweep: a column down to a single available support row is
        // forced.
        for j in 0..n {
            if assigned[j] {
                continue;
            }
            let mut available = col_support[j].iter().filter(|&&i| !used_value[i]);
            let first = available.next();
            let second = available.next();
            match (first, second) {
                (None, _) => {
                    trace.conflict = Some(PropagationConflict::ColumnExhausted { column: j });
                    return Ok(trace);
                }
                (Some(&i), None) => {
                    if !place(
                        j,
                        i,
                        false,
                        &mut assigned,
                        &mut used_value,
                        &mut used_diff,
                        &mut used_sum,
                        &mut trace,
                    ) {
                        return Ok(trace);
                    }
                    changed = true;
                }
                _ => {}
            }
        }
        // Row sweep: a row value with a single possible host column is
        // forced there.
        for i in 0..n {
            if used_value[i] {
                continue;
            }
            let mut hosts = (0..n).filter(|&j| !assigned[j] && col_support[j].contains(&i));
            let first = hosts.next();
            let second = hosts.next();
            match (first, second) {
                (None, _) => {
                    trace.conflict = Some(PropagationConflict::RowUncoverable { row: i });
                    return Ok(trace);
                }
                (Some(j), None) => {
                    if !place(
                        j,
                        i,
                        false,
                        &mut assigned,
                        &mut used_value,
                        &mut used_diff,
                        &mut used_sum,
                        &mut trace,
                    ) {
                        return Ok(trace);
                    }
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return Ok(trace);
        }
    }
}

/// Computes the rank of the ten order-5 panmagic permutation matrices as
/// vectors of length 25, and the dimension of the space of panmagic 5x5
/// matrices (25 minus the rank of the 20 line-difference constraints), both
/// by exact elimination. The two numbers coincide: the ten matrices span.
pub fn span_rank_check() -> (usize, usize) {
    let vertices = enumerate_panmagic(5).expect("degree 5 is under the enumeration cap");
    let vertex_rows: Vec<Vec<Scalar>> = vertices
        .iter()
        .map(|pi| {
            let m = SquareMatrix::from_permutation(pi);
            let mut row = Vec::with_capacity(25);
            for i in 0..5 {
                for j in 0..5 {
                    row.push(m.get(i, j).clone());
                }
            }
            row
        })
        .collect();
    let vertex_rank = rank(vertex_rows);

    // One constraint row per line, as "line sum minus row-0 sum": 4 families
    // of 5 lines give 20 rows (the row-0 row is identically zero).
    let mut constraint_rows = Vec::with_capacity(20);
    let mut add_line = |cells: Vec<(usize, usize)>| {
        let mut row = vec![Scalar::zero(); 25];
        for (i, j) in cells {
            row[i * 5 + j] += Scalar::one();
        }
        for cell in row.iter_mut().take(5) {
            *cell -= Scalar::one();
        }
        constraint_rows.push(row);
    };
    for i in 0..5 {
        add_line((0..5).map(|j| (i, j)).collect());
    }
    for j in 0..5 {
        add_line((0..5).map(|i| (i, j)).collect());
    }
    for k in 0..5 {
        add_line((0..5).map(|i| (i, (k + 5 - i) % 5)).collect());
    }
    for k in 0..5 {
        add_line((0..5).map(|i| (i, (i + 5 - k) % 5)).collect());
    }
    let pan_dimension = 25 - rank(constraint_rows);
    (vertex_rank, pan_dimension)
}

/// Rank by exact Gaussian elimination.
fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let width = rows[0].len();
    let mut r = 0;
    for col in 0..width {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot_row[col];
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}
