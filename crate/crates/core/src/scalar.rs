//! The scalar field: arbitrary-precision rationals.

use num_bigint::BigInt;

/// Exact rational scalar. Always held in lowest terms with a positive
/// denominator, so equality is structural and hashing-free comparisons are
/// safe.
pub type Scalar = num_rational::BigRational;

/// The integer `v` as a scalar.
pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// The fraction `p / q` as a scalar, reduced to lowest terms.
///
/// Panics when `q == 0`.
pub fn frac(p: i64, q: i64) -> Scalar {
    assert!(q != 0, "zero denominator");
    Scalar::new(BigInt::from(p), BigInt::from(q))
}
