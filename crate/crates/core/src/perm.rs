//! Permutations of `{0, .., n-1}` and the panmagic ones among them.
//!
//! A permutation `pi` is *panmagic* when both companion maps
//! `j -> pi(j) - j (mod n)` and `j -> pi(j) + j (mod n)` are themselves
//! bijections. Equivalently, the permutation matrix of `pi` hits every
//! down-diagonal and every up-diagonal exactly once, which makes it
//! panstochastic. Such permutations exist exactly when `gcd(n, 6) = 1`.
//!
//! The affine permutations `j -> a*j + b (mod n)` with
//! `gcd(a, n) = gcd(a - 1, n) = gcd(a + 1, n) = 1` are always panmagic; for
//! `n = 5, 7, 11` they exhaust the panmagic permutations, and from `n = 13`
//! on they do not. [`nonaffine_piecewise`] builds explicit non-affine
//! witnesses for composite degrees.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

/// A permutation of `{0, .., n-1}`, `n >= 1`, stored as its image sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

/// Errors from permutation constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    Empty,
    ImageOutOfRange { index: usize, image: usize, degree: usize },
    DuplicateImage { image: usize },
    NotCoprime { a: usize, n: usize },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::Empty => f.write_str("a permutation needs degree at least 1"),
            PermError::ImageOutOfRange { index, image, degree } => {
                write!(
                    f,
                    "image {} at index {} is out of range for degree {}",
                    image, index, degree
                )
            }
            PermError::DuplicateImage { image } => {
                write!(f, "image {} appears more than once", image)
            }
            PermError::NotCoprime { a, n } => {
                write!(f, "multiplier {} is not coprime to {}", a, n)
            }
        }
    }
}

impl core::error::Error for PermError {}

impl Permutation {
    /// The identity on `{0, .., n-1}`. Panics when `n == 0`.
    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "permutation degree must be at least 1");
        Permutation { images: (0..n).collect() }
    }

    /// Builds a permutation from its image sequence, validating that it is a
    /// bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![false; n];
        for (index, &image) in images.iter().enumerate() {
            if image >= n {
                return Err(PermError::ImageOutOfRange { index, image, degree: n });
            }
            if seen[image] {
                return Err(PermError::DuplicateImage { image });
            }
            seen[image] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// The image of `j`. Panics when `j` is out of range.
    pub fn image(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (j, &i) in self.images.iter().enumerate() {
            inv[i] = j;
        }
        Permutation { images: inv }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, i) in self.images.iter().enumerate() {
            if j > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", i)?;
        }
        Ok(())
    }
}

/// Proof that a permutation is panmagic: both companion maps, as
/// permutations.
///
/// `lambda(j) = pi(j) - j (mod n)` and `rho(j) = pi(j) + j (mod n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PanmagicWitness {
    pub pi: Permutation,
    pub lambda: Permutation,
    pub rho: Permutation,
}

/// Checks both companion maps of `pi` and returns them when they are
/// bijections.
pub fn is_panmagic_perm(pi: &Permutation) -> Option<PanmagicWitness> {
    let n = pi.degree();
    let mut lambda = Vec::with_capacity(n);
    let mut rho = Vec::with_capacity(n);
    let mut seen_diff = vec![false; n];
    let mut seen_sum = vec![false; n];
    for j in 0..n {
        let diff = (pi.image(j) + n - j) % n;
        let sum = (pi.image(j) + j) % n;
        if seen_diff[diff] || seen_sum[sum] {
            return None;
        }
        seen_diff[diff] = true;
        seen_sum[sum] = true;
        lambda.push(diff);
        rho.push(sum);
    }
    Some(PanmagicWitness {
        pi: pi.clone(),
        lambda: Permutation { images: lambda },
        rho: Permutation { images: rho },
    })
}

/// Parameters of an affine map `j -> a*j + b (mod n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffineSpec {
    pub a: usize,
    pub b: usize,
}

/// The affine permutation `j -> a*j + b (mod n)`. Coefficients are reduced
/// mod `n`; the multiplier must be coprime to `n`. Panics when `n == 0`.
pub fn affine_perm(spec: AffineSpec, n: usize) -> Result<Permutation, PermError> {
    assert!(n > 0, "permutation degree must be at least 1");
    let a = spec.a % n;
    let b = spec.b % n;
    if a.gcd(&n) != 1 {
        return Err(PermError::NotCoprime { a: spec.a, n });
    }
    let images =
        (0..n).map(|j| ((a as u128 * j as u128 + b as u128) % n as u128) as usize).collect();
    Ok(Permutation { images })
}

/// Whether the affine permutation with these parameters is panmagic:
/// `gcd(a, n) = gcd(a - 1, n) = gcd(a + 1, n) = 1`. The translation part
/// plays no role. Errors when `a` is not coprime to `n` (no permutation at
/// all). Panics when `n == 0`.
pub fn is_affine_panmagic(spec: AffineSpec, n: usize) -> Result<bool, PermError> {
    assert!(n > 0, "permutation degree must be at least 1");
    let a = spec.a % n;
    if a.gcd(&n) != 1 {
        return Err(PermError::NotCoprime { a: spec.a, n });
    }
    let pred = (a + n - 1) % n;
    let succ = (a + 1) % n;
    Ok(pred.gcd(&n) == 1 && succ.gcd(&n) == 1)
}

/// Largest degree [`enumerate_panmagic`] accepts. The search is exhaustive
/// and its tree grows quickly; past this degree use
/// [`enumerate_panmagic_uncapped`] and bring patience.
pub const ENUMERATION_CAP: usize = 17;

/// Error from [`enumerate_panmagic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerateError {
    DegreeTooLarge { n: usize, cap: usize },
}

impl fmt::Display for EnumerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerateError::DegreeTooLarge { n, cap } => {
                write!(f, "degree {} exceeds the enumeration cap {}", n, cap)
            }
        }
    }
}

impl core::error::Error for EnumerateError {}

/// All panmagic permutations of degree `n <= ENUMERATION_CAP`, sorted
/// lexicographically by image sequence.
pub fn enumerate_panmagic(n: usize) -> Result<Vec<Permutation>, EnumerateError> {
    if n > ENUMERATION_CAP {
        return Err(EnumerateError::DegreeTooLarge { n, cap: ENUMERATION_CAP });
    }
    Ok(enumerate_panmagic_uncapped(n))
}

/// All panmagic permutations of degree `n`, any `n >= 1`, sorted
/// lexicographically by image sequence. Exhaustive backtracking: columns are
/// assigned in order and a partial assignment is abandoned as soon as a
/// value, difference, or sum repeats. Panics when `n == 0`.
pub fn enumerate_panmagic_uncapped(n: usize) -> Vec<Permutation> {
    assert!(n > 0, "permutation degree must be at least 1");
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(n);
    let mut used_value = vec![false; n];
    let mut used_diff = vec![false; n];
    let mut used_sum = vec![false; n];
    search(n, &mut images, &mut used_value, &mut used_diff, &mut used_sum, &mut out);
    out
}

fn search(
    n: usize,
    images: &mut Vec<usize>,
    used_value: &mut [bool],
    used_diff: &mut [bool],
    used_sum: &mut [bool],
    out: &mut Vec<Permutation>,
) {
    let j = images.len();
    if j == n {
        out.push(Permutation { images: images.clone() });
        return;
    }
    for i in 0..n {
        let diff = (i + n - j) % n;
        let sum = (i + j) % n;
        if used_value[i] || used_diff[diff] || used_sum[sum] {
            continue;
        }
        used_value[i] = true;
        used_diff[diff] = true;
        used_sum[sum] = true;
        images.push(i);
        search(n, images, used_value, used_diff, used_sum, out);
        images.pop();
        used_value[i] = false;
        used_diff[diff] = false;
        used_sum[sum] = false;
    }
}

/// All parameter pairs of panmagic affine permutations of degree `n`, sorted
/// by multiplier then translation. Panics when `n == 0`.
pub fn enumerate_affine_panmagic(n: usize) -> Vec<AffineSpec> {
    assert!(n > 0, "permutation degree must be at least 1");
    let mut out = Vec::new();
    for a in 0..n {
        if a.gcd(&n) != 1 {
            continue;
        }
        if is_affine_panmagic(AffineSpec { a, b: 0 }, n).expect("multiplier checked coprime") {
            for b in 0..n {
                out.push(AffineSpec { a, b });
            }
        }
    }
    out
}

/// Errors from [`nonaffine_piecewise`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiecewiseError {
    /// `gcd(n, 6) != 1`: no panmagic permutations of degree `n` exist.
    NotCoprimeToSix { n: usize },
    /// `n` is prime (or `1`), so the two pieces cannot both be nonempty.
    NotComposite { n: usize },
    /// `p` is not a prime divisor of `n`.
    NotPrimeDivisor { p: usize, n: usize },
    /// The construction produced a permutation that failed verification.
    /// Not observed for any valid input; kept because the output is checked
    /// rather than trusted.
    NotPanmagic { n: usize, p: usize },
    /// The construction produced an affine permutation. Likewise guarded
    /// against rather than assumed impossible.
    Affine { n: usize, p: usize },
}

impl fmt::Display for PiecewiseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiecewiseError::NotCoprimeToSix { n } => {
                write!(f, "degree {} shares a factor with 6", n)
            }
            PiecewiseError::NotComposite { n } => {
                write!(f, "degree {} is not composite", n)
            }
            PiecewiseError::NotPrimeDivisor { p, n } => {
                write!(f, "{} is not a prime divisor of {}", p, n)
            }
            PiecewiseError::NotPanmagic { n, p } => {
                write!(f, "piecewise construction for n = {}, p = {} failed verification", n, p)
            }
            PiecewiseError::Affine { n, p } => {
                write!(f, "piecewise construction for n = {}, p = {} came out affine", n, p)
            }
        }
    }
}

impl core::error::Error for PiecewiseError {}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A non-affine panmagic permutation of composite degree `n` with
/// `gcd(n, 6) = 1`, built piecewise from a prime divisor `p` of `n`:
///
/// `pi(x) = 2x (mod n)` when `p` divides `x`, and `3x (mod n)` otherwise.
///
/// The output is verified panmagic and verified non-affine before being
/// returned.
pub fn nonaffine_piecewise(n: usize, p: usize) -> Result<Permutation, PiecewiseError> {
    if n.gcd(&6) != 1 {
        return Err(PiecewiseError::NotCoprimeToSix { n });
    }
    if !is_prime(p) || !n.is_multiple_of(p) {
        return Err(PiecewiseError::NotPrimeDivisor { p, n });
    }
    if n == p {
        return Err(PiecewiseError::NotComposite { n });
    }
    let images: Vec<usize> = (0..n)
        .map(|x| {
            let factor = if x % p == 0 { 2u128 } else { 3u128 };
            (factor * x as u128 % n as u128) as usize
        })
        .collect();
    let pi = Permutation::from_images(images).map_err(|_| PiecewiseError::NotPanmagic { n, p })?;
    if is_panmagic_perm(&pi).is_none() {
        return Err(PiecewiseError::NotPanmagic { n, p });
    }
    if is_affine(&pi).is_some() {
        return Err(PiecewiseError::Affine { n, p });
    }
    Ok(pi)
}

/// Recognizes affine permutations: returns the reduced parameters when
/// `pi(j) = a*j + b (mod n)` for all `j`.
pub fn is_affine(pi: &Permutation) -> Option<AffineSpec> {
    let n = pi.degree();
    let b = pi.image(0);
    let a = if n == 1 { 0 } else { (pi.image(1) + n - b) % n };
    for j in 0..n {
        if pi.image(j) != ((a as u128 * j as u128 + b as u128) % n as u128) as usize {
            return None;
        }
    }
    Some(AffineSpec { a, b })
}
