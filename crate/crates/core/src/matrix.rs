//! Square matrices over the rationals and the panmagic / panstochastic
//! verdicts.
//!
//! Rows and columns are indexed by `0..n`. The *up-diagonal* `k` collects the
//! cells with `i + j = k (mod n)` and the *down-diagonal* `k` those with
//! `i - j = k (mod n)`; both families wrap around, so every line of a
//! direction partitions the cells. A matrix is panmagic when all `4n` line
//! sums agree, and panstochastic when it is panmagic with common sum `1` and
//! no negative entry.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, Sub};

use num_traits::{One, Signed, Zero};

use crate::perm::Permutation;
use crate::scalar::Scalar;

/// One of the four families of lines in a square matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineKind {
    Row,
    Column,
    UpDiagonal,
    DownDiagonal,
}

impl fmt::Display for LineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LineKind::Row => "row",
            LineKind::Column => "column",
            LineKind::UpDiagonal => "up-diagonal",
            LineKind::DownDiagonal => "down-diagonal",
        };
        f.write_str(name)
    }
}

/// A line whose sum differs from the expected common value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineViolation {
    pub kind: LineKind,
    pub index: usize,
    pub sum: Scalar,
    pub expected: Scalar,
}

impl fmt::Display for LineViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} sums to {}, expected {}", self.kind, self.index, self.sum, self.expected)
    }
}

/// Outcome of [`SquareMatrix::check_panmagic`].
///
/// Lines are scanned rows first, then columns, then up-diagonals, then
/// down-diagonals, each family in ascending index order, against the sum of
/// row `0`; the violation reported is the first found in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MagicReport {
    /// All `4n` line sums equal `mu`.
    Panmagic {
        mu: Scalar,
    },
    Violation(LineViolation),
}

impl MagicReport {
    pub fn is_panmagic(&self) -> bool {
        matches!(self, MagicReport::Panmagic { .. })
    }

    /// The magic number, when the matrix is panmagic.
    pub fn mu(&self) -> Option<&Scalar> {
        match self {
            MagicReport::Panmagic { mu } => Some(mu),
            MagicReport::Violation(_) => None,
        }
    }
}

/// Outcome of [`SquareMatrix::check_panstochastic`].
///
/// A negative entry (first in row-major order) is reported before any line
/// violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StochasticReport {
    Panstochastic,
    NegativeEntry { row: usize, col: usize, value: Scalar },
    LineViolation(LineViolation),
    MagicNumberNotOne { mu: Scalar },
}

impl StochasticReport {
    pub fn holds(&self) -> bool {
        matches!(self, StochasticReport::Panstochastic)
    }
}

impl fmt::Display for StochasticReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StochasticReport::Panstochastic => f.write_str("panstochastic"),
            StochasticReport::NegativeEntry { row, col, value } => {
                write!(f, "negative entry {} at ({}, {})", value, row, col)
            }
            StochasticReport::LineViolation(v) => write!(f, "{}", v),
            StochasticReport::MagicNumberNotOne { mu } => {
                write!(f, "line sums equal {}, expected 1", mu)
            }
        }
    }
}

/// All `4n` line sums of a matrix, by family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSums {
    pub rows: Vec<Scalar>,
    pub columns: Vec<Scalar>,
    pub up_diagonals: Vec<Scalar>,
    pub down_diagonals: Vec<Scalar>,
}

/// Errors from matrix constructors and binary matrix operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    ZeroOrder,
    RowLengthMismatch { row: usize, expected: usize, got: usize },
    OrderMismatch { left: usize, right: usize },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::ZeroOrder => f.write_str("matrix order must be at least 1"),
            MatrixError::RowLengthMismatch { row, expected, got } => {
                write!(f, "row {} has {} entries, expected {}", row, got, expected)
            }
            MatrixError::OrderMismatch { left, right } => {
                write!(f, "matrix orders differ: {} vs {}", left, right)
            }
        }
    }
}

impl core::error::Error for MatrixError {}

/// An `n x n` matrix of rationals, `n >= 1`, stored in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl SquareMatrix {
    /// The zero matrix of order `n`. Panics when `n == 0`.
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix order must be at least 1");
        SquareMatrix { n, entries: vec![Scalar::zero(); n * n] }
    }

    /// The identity matrix of order `n`. Panics when `n == 0`.
    pub fn identity(n: usize) -> Self {
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from its rows. The rows must be nonempty and all of
    /// the same length as their count.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::ZeroOrder);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::RowLengthMismatch { row: i, expected: n, got: row.len() });
            }
            entries.extend(row);
        }
        Ok(SquareMatrix { n, entries })
    }

    /// Builds the matrix of order `n` whose `(i, j)` entry is `f(i, j)`.
    /// Panics when `n == 0`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        assert!(n > 0, "matrix order must be at least 1");
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { n, entries }
    }

    /// The 0/1 matrix of a permutation: entry `(i, j)` is `1` exactly when
    /// `pi(j) = i`, so column `j` carries its single `1` in row `pi(j)`.
    pub fn from_permutation(pi: &Permutation) -> Self {
        let mut m = SquareMatrix::zeros(pi.degree());
        for j in 0..pi.degree() {
            m.set(pi.image(j), j, Scalar::one());
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.n + j] = value;
    }

    /// The sum of all `n^2` entries.
    pub fn grand_total(&self) -> Scalar {
        self.entries.iter().sum()
    }

    /// All `4n` line sums, computed in one pass.
    pub fn line_sums(&self) -> LineSums {
        let n = self.n;
        let mut rows = vec![Scalar::zero(); n];
        let mut columns = vec![Scalar::zero(); n];
        let mut up_diagonals = vec![Scalar::zero(); n];
        let mut down_diagonals = vec![Scalar::zero(); n];
        for i in 0..n {
            for j in 0..n {
                let e = self.get(i, j);
                rows[i] += e;
                columns[j] += e;
                up_diagonals[(i + j) % n] += e;
                down_diagonals[(i + n - j) % n] += e;
            }
        }
        LineSums { rows, columns, up_diagonals, down_diagonals }
    }

    /// Checks whether all `4n` line sums agree.
    pub fn check_panmagic(&self) -> MagicReport {
        let sums = self.line_sums();
        let expected = sums.rows[0].clone();
        let families = [
            (LineKind::Row, &sums.rows),
            (LineKind::Column, &sums.columns),
            (LineKind::UpDiagonal, &sums.up_diagonals),
            (LineKind::DownDiagonal, &sums.down_diagonals),
        ];
        for (kind, family) in families {
            for (index, sum) in family.iter().enumerate() {
                if *sum != expected {
                    return MagicReport::Violation(LineViolation {
                        kind,
                        index,
                        sum: sum.clone(),
                        expected,
                    });
                }
            }
        }
        MagicReport::Panmagic { mu: expected }
    }

    /// Checks nonnegativity, the panmagic property, and magic number `1`.
    pub fn check_panstochastic(&self) -> StochasticReport {
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.get(i, j);
                if e.is_negative() {
                    return StochasticReport::NegativeEntry { row: i, col: j, value: e.clone() };
                }
            }
        }
        match self.check_panmagic() {
            MagicReport::Violation(v) => StochasticReport::LineViolation(v),
            MagicReport::Panmagic { mu } => {
                if mu == Scalar::one() {
                    StochasticReport::Panstochastic
                } else {
                    StochasticReport::MagicNumberNotOne { mu }
                }
            }
        }
    }

    /// The positions of the nonzero entries, in row-major order.
    pub fn support(&self) -> BTreeSet<(usize, usize)> {
        let mut s = BTreeSet::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.get(i, j).is_zero() {
                    s.insert((i, j));
                }
            }
        }
        s
    }

    /// The matrix scaled entrywise by `factor`.
    pub fn scaled(&self, factor: &Scalar) -> Self {
        SquareMatrix { n: self.n, entries: self.entries.iter().map(|e| e * factor).collect() }
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        self.get(i, j)
    }
}

impl Add for &SquareMatrix {
    type Output = SquareMatrix;

    /// Entrywise sum. Panics when the orders differ.
    fn add(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "matrix orders differ");
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &SquareMatrix {
    type Output = SquareMatrix;

    /// Entrywise difference. Panics when the orders differ.
    fn sub(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "matrix orders differ");
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            if i + 1 < self.n {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

/// Whether every nonzero position of `p` is also nonzero in `a`.
pub fn support_subset(p: &SquareMatrix, a: &SquareMatrix) -> Result<bool, MatrixError> {
    if p.order() != a.order() {
        return Err(MatrixError::OrderMismatch { left: p.order(), right: a.order() });
    }
    for i in 0..p.order() {
        for j in 0..p.order() {
            if !p.get(i, j).is_zero() && a.get(i, j).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
