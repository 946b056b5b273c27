//! Wreath and Kronecker products.
//!
//! Indices of the product of inner order `m` and outer order `n` are packed
//! as `x = j*n + s` with `j` the block coordinate (in `0..m`) and `s` the
//! inner coordinate (in `0..n`). The wreath product of blocks
//! `A_0, .., A_{n-1}` (each `m x m`) over an outer matrix `B` (`n x n`) has
//!
//! ```text
//! W[i*n + r, j*n + s] = A_s[i, j] * B[r, s]
//! ```
//!
//! so the block placed at outer cell `(r, s)` is `A_s` scaled by `B[r, s]`:
//! blocks are chosen by the outer *column*. When every block is the same
//! matrix `A` this collapses to the Kronecker product `A (x) B`. Wreath
//! products multiply magic numbers, preserve the panmagic and panstochastic
//! properties, and (for permutations) are recoverable from the product
//! together with the outer data, which is what [`factor_through_support`]
//! does.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::matrix::SquareMatrix;
use crate::perm::Permutation;

/// Errors from product constructors and from factoring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductError {
    /// The number of blocks must equal the outer order.
    BlockCountMismatch { expected: usize, got: usize },
    /// Every block must have the same order as block `0`.
    BlockOrderMismatch { index: usize, expected: usize, got: usize },
    /// The permutation to factor must have degree `inner * outer`.
    DegreeMismatch { expected: usize, got: usize },
    /// Factoring hit a packed index whose image leaves the prescribed
    /// support (wrong inner image, or a zero cell of the outer matrix).
    SupportEscape { index: usize },
}

impl fmt::Display for ProductError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductError::BlockCountMismatch { expected, got } => {
                write!(f, "expected {} blocks, got {}", expected, got)
            }
            ProductError::BlockOrderMismatch { index, expected, got } => {
                write!(f, "block {} has order {}, expected {}", index, got, expected)
            }
            ProductError::DegreeMismatch { expected, got } => {
                write!(f, "expected degree {}, got {}", expected, got)
            }
            ProductError::SupportEscape { index } => {
                write!(f, "image of index {} leaves the prescribed support", index)
            }
        }
    }
}

impl core::error::Error for ProductError {}

fn check_blocks<T>(
    blocks: &[T],
    outer_order: usize,
    order_of: impl Fn(&T) -> usize,
) -> Result<usize, ProductError> {
    if blocks.len() != outer_order {
        return Err(ProductError::BlockCountMismatch { expected: outer_order, got: blocks.len() });
    }
    let m = order_of(&blocks[0]);
    for (index, block) in blocks.iter().enumerate() {
        if order_of(block) != m {
            return Err(ProductError::BlockOrderMismatch {
                index,
                expected: m,
                got: order_of(block),
            });
        }
    }
    Ok(m)
}

/// The wreath product of `outer.order()` blocks of equal order over `outer`.
pub fn wreath_matrices(
    blocks: &[SquareMatrix],
    outer: &SquareMatrix,
) -> Result<SquareMatrix, ProductError> {
    let n = outer.order();
    let m = check_blocks(blocks, n, SquareMatrix::order)?;
    Ok(SquareMatrix::from_fn(m * n, |row, col| {
        let (i, r) = (row / n, row % n);
        let (j, s) = (col / n, col % n);
        blocks[s].get(i, j) * outer.get(r, s)
    }))
}

/// The Kronecker product `a (x) b`: the wreath product in which every block
/// is `a`.
pub fn kronecker(a: &SquareMatrix, b: &SquareMatrix) -> SquareMatrix {
    let n = b.order();
    SquareMatrix::from_fn(a.order() * n, |row, col| {
        let (i, r) = (row / n, row % n);
        let (j, s) = (col / n, col % n);
        a.get(i, j) * b.get(r, s)
    })
}

/// The wreath product of permutations: `outer.degree()` inner permutations
/// of equal degree, wired by `outer`:
///
/// ```text
/// pi(j*n + s) = blocks[s](j) * n + outer(s)
/// ```
pub fn wreath_perms(
    blocks: &[Permutation],
    outer: &Permutation,
) -> Result<Permutation, ProductError> {
    let n = outer.degree();
    let m = check_blocks(blocks, n, Permutation::degree)?;
    let images = (0..m * n)
        .map(|x| {
            let (j, s) = (x / n, x % n);
            blocks[s].image(j) * n + outer.image(s)
        })
        .collect();
    Ok(Permutation::from_images(images).expect("wreath of bijections is a bijection"))
}

/// Recovers the inner permutations of a wreath product from the product
/// permutation, a matrix whose support the blocks must respect, and the
/// outer permutation.
///
/// Requires `pi` to have degree `a.order() * rho.degree()` and its
/// permutation matrix to be supported inside `kronecker(a, P_rho)`: every
/// `x = j*n + s` must satisfy `pi(x) = i*n + rho(s)` with `a[i, j] != 0`.
/// The first packed index violating that is reported. On success the blocks
/// `lambda_0, .., lambda_{n-1}` satisfy `wreath_perms(lambdas, rho) = pi`.
pub fn factor_through_support(
    pi: &Permutation,
    a: &SquareMatrix,
    rho: &Permutation,
) -> Result<Vec<Permutation>, ProductError> {
    let m = a.order();
    let n = rho.degree();
    if pi.degree() != m * n {
        return Err(ProductError::DegreeMismatch { expected: m * n, got: pi.degree() });
    }
    for x in 0..m * n {
        let s = x % n;
        let j = x / n;
        let y = pi.image(x);
        let (i, r) = (y / n, y % n);
        if r != rho.image(s) || a.get(i, j).is_zero() {
            return Err(ProductError::SupportEscape { index: x });
        }
    }
    let mut lambda_images: Vec<Vec<usize>> = (0..n).map(|_| Vec::with_capacity(m)).collect();
    for j in 0..m {
        for (s, images) in lambda_images.iter_mut().enumerate() {
            images.push(pi.image(j * n + s) / n);
        }
    }
    Ok(lambda_images
        .into_iter()
        .map(|images| {
            Permutation::from_images(images).expect("sections of a bijection are bijections")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{affine_perm, is_panmagic_perm, AffineSpec};
    use crate::scalar::{frac, int};
    use alloc::vec;

    fn doubling(n: usize) -> Permutation {
        affine_perm(AffineSpec { a: 2, b: 0 }, n).unwrap()
    }

    fn uniform(n: usize) -> SquareMatrix {
        SquareMatrix::from_fn(n, |_, _| frac(1, n as i64))
    }

    #[test]
    fn order_one_blocks_reproduce_the_outer_matrix() {
        let b = SquareMatrix::from_fn(3, |i, j| int((2 * i + j) as i64));
        let ones: Vec<SquareMatrix> = (0..3).map(|_| SquareMatrix::identity(1)).collect();
        assert_eq!(wreath_matrices(&ones, &b).unwrap(), b);
        assert_eq!(kronecker(&SquareMatrix::identity(1), &b), b);
        assert_eq!(kronecker(&b, &SquareMatrix::identity(1)), b);
    }

    #[test]
    fn equal_blocks_collapse_to_kronecker() {
        let a = SquareMatrix::from_fn(2, |i, j| frac((i + 1) as i64, (j + 1) as i64));
        let b = SquareMatrix::from_fn(3, |i, j| int((i * 3 + j) as i64));
        let blocks: Vec<SquareMatrix> = (0..3).map(|_| a.clone()).collect();
        assert_eq!(wreath_matrices(&blocks, &b).unwrap(), kronecker(&a, &b));
    }

    #[test]
    fn kronecker_of_uniforms_is_uniform() {
        assert_eq!(kronecker(&uniform(5), &uniform(5)), uniform(25));
    }

    #[test]
    fn kronecker_grand_total_is_multiplicative() {
        let a = SquareMatrix::from_fn(3, |i, j| int((i + 2 * j) as i64));
        let b = SquareMatrix::from_fn(4, |i, j| frac(1 + i as i64, 1 + j as i64));
        assert_eq!(kronecker(&a, &b).grand_total(), a.grand_total() * b.grand_total());
    }

    #[test]
    fn block_validation() {
        let b = SquareMatrix::identity(3);
        let blocks = vec![SquareMatrix::identity(2); 2];
        assert_eq!(
            wreath_matrices(&blocks, &b),
            Err(ProductError::BlockCountMismatch { expected: 3, got: 2 })
        );
        let ragged =
            vec![SquareMatrix::identity(2), SquareMatrix::identity(3), SquareMatrix::identity(2)];
        assert_eq!(
            wreath_matrices(&ragged, &b),
            Err(ProductError::BlockOrderMismatch { index: 1, expected: 2, got: 3 })
        );
    }

    #[test]
    fn wreath_of_identities_is_identity() {
        let blocks = vec![Permutation::identity(4); 3];
        let pi = wreath_perms(&blocks, &Permutation::identity(3)).unwrap();
        assert_eq!(pi, Permutation::identity(12));
    }

    #[test]
    fn wreath_of_panmagic_permutations_is_panmagic() {
        let blocks = vec![doubling(5); 5];
        let pi = wreath_perms(&blocks, &doubling(5)).unwrap();
        assert_eq!(pi.degree(), 25);
        assert!(is_panmagic_perm(&pi).is_some());
    }

    #[test]
    fn one_bad_block_breaks_the_product() {
        // The identity block is not panmagic, and that is already fatal.
        let mut blocks = vec![doubling(5); 5];
        blocks[2] = Permutation::identity(5);
        let pi = wreath_perms(&blocks, &doubling(5)).unwrap();
        assert!(is_panmagic_perm(&pi).is_none());
    }

    #[test]
    fn wreath_commutes_with_permutation_matrices() {
        let blocks = vec![doubling(5), Permutation::identity(5)];
        let outer = Permutation::from_images(vec![1, 0]).unwrap();
        let pi = wreath_perms(&blocks, &outer).unwrap();
        let block_matrices: Vec<SquareMatrix> =
            blocks.iter().map(SquareMatrix::from_permutation).collect();
        let outer_matrix = SquareMatrix::from_permutation(&outer);
        assert_eq!(
            SquareMatrix::from_permutation(&pi),
            wreath_matrices(&block_matrices, &outer_matrix).unwrap()
        );
    }

    #[test]
    fn factoring_round_trip() {
        let lambdas = vec![doubling(5), affine_perm(AffineSpec { a: 3, b: 1 }, 5).unwrap()];
        let rho = Permutation::from_images(vec![1, 0]).unwrap();
        let pi = wreath_perms(&lambdas, &rho).unwrap();
        let all_ones = SquareMatrix::from_fn(5, |_, _| int(1));
        assert_eq!(factor_through_support(&pi, &all_ones, &rho).unwrap(), lambdas);
    }

    #[test]
    fn factoring_respects_tight_support() {
        let lambdas = vec![doubling(5), doubling(5), doubling(5)];
        let rho = Permutation::from_images(vec![2, 0, 1]).unwrap();
        let pi = wreath_perms(&lambdas, &rho).unwrap();
        let support = SquareMatrix::from_permutation(&doubling(5));
        assert_eq!(factor_through_support(&pi, &support, &rho).unwrap(), lambdas);
        // Shrinking the support below what the blocks use must fail: the
        // first block coordinate with 2j != j (mod 5) is j = 1, reached at
        // packed index 3.
        assert_eq!(
            factor_through_support(&pi, &SquareMatrix::identity(5), &rho),
            Err(ProductError::SupportEscape { index: 3 })
        );
    }

    #[test]
    fn factoring_rejects_wrong_outer_wiring() {
        // The identity on 25 indices never maps inner coordinate s to 2s.
        let pi = Permutation::identity(25);
        let result = factor_through_support(&pi, &SquareMatrix::identity(5), &doubling(5));
        assert_eq!(result, Err(ProductError::SupportEscape { index: 1 }));
    }

    #[test]
    fn factoring_checks_degree() {
        let pi = Permutation::identity(10);
        let result = factor_through_support(&pi, &SquareMatrix::identity(5), &doubling(5));
        assert_eq!(result, Err(ProductError::DegreeMismatch { expected: 25, got: 10 }));
    }
}
