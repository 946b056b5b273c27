//! The fixture library: every concrete matrix the test suite and CLI lean
//! on, plus the counterexample family for all orders where panstochastic
//! matrices exist that are not convex combinations of panmagic permutation
//! matrices.
//!
//! The order-25 matrix is stored as transcribed data rather than rebuilt
//! from a recipe; its panstochasticity and the column-support facts the
//! non-decomposability argument quotes are locked in by tests.

use num_integer::Integer;

use crate::matrix::{MagicReport, SquareMatrix};
use crate::perm::{affine_perm, AffineSpec};
use crate::products::kronecker;
use crate::scalar::{frac, int};

use core::fmt;

/// Names of the stored example matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum Fixture {
    /// 5x5, all entries 1/5.
    Uniform5,
    /// The permutation matrix of the doubling map on five points.
    Perm2x_5,
    /// A 5x5 panstochastic matrix with entries k/60 and full support.
    Magic60,
    /// 7x7 half-integer matrix admitting no covering panmagic permutation.
    Lemma41_7,
    /// 25x25 half-integer matrix with two-point column supports; the chain
    /// of forced assignments pinned at entry (2, 0) runs into a repeated
    /// up-diagonal.
    Thm12_25,
}

impl Fixture {
    pub const ALL: [Fixture; 5] = [
        Fixture::Uniform5,
        Fixture::Perm2x_5,
        Fixture::Magic60,
        Fixture::Lemma41_7,
        Fixture::Thm12_25,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Uniform5 => "uniform5",
            Fixture::Perm2x_5 => "perm2x_5",
            Fixture::Magic60 => "magic60",
            Fixture::Lemma41_7 => "lemma41_7",
            Fixture::Thm12_25 => "thm12_25",
        }
    }

    pub fn from_name(name: &str) -> Option<Fixture> {
        Fixture::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Errors from the constructors with arithmetic preconditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GalleryError {
    /// The order must be coprime to 30.
    NotCoprimeTo30 { n: usize },
    /// The order must be at least 7.
    OrderTooSmall { n: usize },
    /// The lift degree must be coprime to 6.
    NotCoprimeTo6 { n: usize },
    /// No counterexample exists: every panstochastic matrix of this order
    /// is a convex combination of panmagic permutation matrices.
    AllDecomposable { n: usize },
}

impl fmt::Display for GalleryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GalleryError::NotCoprimeTo30 { n } => {
                write!(f, "order {} shares a factor with 30", n)
            }
            GalleryError::OrderTooSmall { n } => {
                write!(f, "order {} is below the smallest supported order 7", n)
            }
            GalleryError::NotCoprimeTo6 { n } => {
                write!(f, "lift degree {} shares a factor with 6", n)
            }
            GalleryError::AllDecomposable { n } => {
                write!(f, "no counterexample at order {}: decomposition always succeeds", n)
            }
        }
    }
}

impl core::error::Error for GalleryError {}

const MAGIC60_NUMERATORS: [[i64; 5]; 5] = [
    [1, 13, 20, 7, 19],
    [22, 9, 16, 3, 10],
    [18, 0, 12, 24, 6],
    [14, 21, 8, 15, 2],
    [5, 17, 4, 11, 23],
];

const LEMMA41_7_NUMERATORS: [[i64; 7]; 7] = [
    [0, 0, 0, 0, 1, 1, 0],
    [1, 0, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 2, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1, 0, 1],
    [0, 1, 1, 0, 0, 0, 0],
];

/// Columns carrying the two entries 1/2 of each row of the 25x25 fixture.
const THM12_25_ROW_SUPPORTS: [[usize; 2]; 25] = [
    [1, 12],
    [3, 11],
    [0, 13],
    [2, 17],
    [14, 21],
    [2, 16],
    [5, 15],
    [3, 19],
    [15, 16],
    [4, 7],
    [17, 23],
    [5, 8],
    [6, 18],
    [6, 9],
    [18, 19],
    [7, 24],
    [20, 22],
    [0, 8],
    [13, 21],
    [9, 10],
    [20, 22],
    [10, 14],
    [12, 23],
    [1, 11],
    [4, 24],
];

/// The 4x4 correction block, over a denominator of 2: added to the top-left
/// corner of the shifted-doubling matrix it moves four half-entries without
/// disturbing any line sum.
const CORRECTION_NUMERATORS: [[i64; 4]; 4] =
    [[0, 1, -1, 0], [-1, 0, 0, 1], [1, 0, 0, -1], [0, -1, 1, 0]];

/// Returns the named example matrix, entries exact.
pub fn fixture(which: Fixture) -> SquareMatrix {
    match which {
        Fixture::Uniform5 => uniform(5),
        Fixture::Perm2x_5 => {
            let doubling = affine_perm(AffineSpec { a: 2, b: 0 }, 5).expect("2 is coprime to 5");
            SquareMatrix::from_permutation(&doubling)
        }
        Fixture::Magic60 => SquareMatrix::from_fn(5, |i, j| frac(MAGIC60_NUMERATORS[i][j], 60)),
        Fixture::Lemma41_7 => SquareMatrix::from_fn(7, |i, j| frac(LEMMA41_7_NUMERATORS[i][j], 2)),
        Fixture::Thm12_25 => SquareMatrix::from_fn(25, |i, j| {
            if THM12_25_ROW_SUPPORTS[i].contains(&j) {
                frac(1, 2)
            } else {
                int(0)
            }
        }),
    }
}

/// The panstochastic matrix with all entries `1/n`. Panics when `n == 0`.
pub fn uniform(n: usize) -> SquareMatrix {
    assert!(n > 0, "matrix order must be at least 1");
    SquareMatrix::from_fn(n, |_, _| frac(1, n as i64))
}

/// The zero-magic-number panmagic correction of order `n >= 7`: the 4x4
/// block embedded at rows and columns 0 through 3.
fn correction_matrix(n: usize) -> SquareMatrix {
    let mut a1 = SquareMatrix::zeros(n);
    for (i, row) in CORRECTION_NUMERATORS.iter().enumerate() {
        for (j, &num) in row.iter().enumerate() {
            a1.set(i, j, frac(num, 2));
        }
    }
    assert_eq!(
        a1.check_panmagic(),
        MagicReport::Panmagic { mu: int(0) },
        "correction block must be panmagic with magic number 0"
    );
    a1
}

/// A panstochastic matrix of order `n` (with `gcd(n, 30) = 1`, `n >= 7`)
/// that is not a convex combination of panmagic permutation matrices.
///
/// For `n = 7` this is the stored fixture. For `n >= 11` it is the average
/// of the two shifted doubling permutation matrices `P_{2x+1}` and
/// `P_{2x+(n-4)}` plus the zero-magic correction block; the correction
/// cancels the entry at (1, 0) and creates one at (2, 0), which narrows
/// column supports enough that no panmagic permutation fits inside the
/// support. The result is verified panstochastic before being returned.
pub fn lemma41_matrix(n: usize) -> Result<SquareMatrix, GalleryError> {
    if n.gcd(&30) != 1 {
        return Err(GalleryError::NotCoprimeTo30 { n });
    }
    if n < 7 {
        return Err(GalleryError::OrderTooSmall { n });
    }
    let a = if n == 7 {
        fixture(Fixture::Lemma41_7)
    } else {
        let first = affine_perm(AffineSpec { a: 2, b: 1 }, n).expect("n is odd");
        let second = affine_perm(AffineSpec { a: 2, b: n - 4 }, n).expect("n is odd");
        let base = &SquareMatrix::from_permutation(&first).scaled(&frac(1, 2))
            + &SquareMatrix::from_permutation(&second).scaled(&frac(1, 2));
        &base + &correction_matrix(n)
    };
    assert!(a.check_panstochastic().holds(), "construction must be panstochastic");
    Ok(a)
}

/// Blows a matrix of order `m` up to order `m * n` by taking the Kronecker
/// product with the doubling permutation matrix on `n` points; requires
/// `gcd(n, 6) = 1` so the factor is panmagic and non-decomposability
/// survives the lift.
pub fn lift(a: &SquareMatrix, n: usize) -> Result<SquareMatrix, GalleryError> {
    if n.gcd(&6) != 1 {
        return Err(GalleryError::NotCoprimeTo6 { n });
    }
    let rho = affine_perm(AffineSpec { a: 2 % n, b: 0 }, n).expect("n is coprime to 6");
    Ok(kronecker(a, &SquareMatrix::from_permutation(&rho)))
}

/// A panstochastic matrix of order `n` that is not a convex combination of
/// panmagic permutation matrices, for any `n > 1` except 5.
///
/// Dispatch, preferring the most direct construction:
/// when `gcd(n, 6) > 1` the uniform matrix works because no panmagic
/// permutations exist at all; when `gcd(n, 30) = 1` the explicit
/// [`lemma41_matrix`] applies directly; otherwise `n` is a multiple of 5
/// and the order-25 fixture or a smaller [`lemma41_matrix`] is lifted.
pub fn counterexample(n: usize) -> Result<SquareMatrix, GalleryError> {
    if n <= 1 || n == 5 {
        return Err(GalleryError::AllDecomposable { n });
    }
    if n.gcd(&6) > 1 {
        return Ok(uniform(n));
    }
    if n.gcd(&30) == 1 {
        return lemma41_matrix(n);
    }
    // gcd(n, 6) = 1 with a factor of 5 present.
    if n.is_multiple_of(25) {
        return lift(&fixture(Fixture::Thm12_25), n / 25);
    }
    // n = 5q with q > 1 coprime to 30.
    lift(&lemma41_matrix(n / 5)?, 5)
}
