//! Acceptance suite: one test per published acceptance criterion. Each test
//! prints a single pass line (visible with `--nocapture`); a failed assert
//! is the corresponding fail line.

use panmagic::decomp::{
    decompose5, forced_chain, membership, non_decomp_certificate, span_rank_check, Membership,
    PropagationConflict,
};
use panmagic::gallery::{counterexample, fixture, Fixture};
use panmagic::perm::{
    affine_perm, enumerate_affine_panmagic, enumerate_panmagic, is_affine, is_affine_panmagic,
    is_panmagic_perm, nonaffine_piecewise, Permutation,
};
use panmagic::products::{factor_through_support, kronecker, wreath_matrices, wreath_perms};
use panmagic::scalar::{frac, int};
use panmagic::{AffineSpec, MagicReport, Scalar, SquareMatrix};

use num_integer::Integer;
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn perm_set(perms: &[Permutation]) -> BTreeSet<Vec<usize>> {
    perms.iter().map(|p| p.images().to_vec()).collect()
}

fn affine_set(n: usize, specs: &[AffineSpec]) -> BTreeSet<Vec<usize>> {
    specs.iter().map(|&s| affine_perm(s, n).unwrap().images().to_vec()).collect()
}

fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// A random panmagic matrix with the requested magic number: a linear
/// combination of panmagic permutation matrices whose coefficients sum to
/// `mu` exactly.
fn random_panmagic(vertices: &[Permutation], mu: &Scalar, rng: &mut ChaCha8Rng) -> SquareMatrix {
    let n = vertices[0].degree();
    let picks = rng.gen_range(1..=3.min(vertices.len()));
    let mut acc = SquareMatrix::zeros(n);
    let mut remaining = mu.clone();
    for k in 0..picks {
        let coeff = if k + 1 == picks {
            remaining.clone()
        } else {
            let c = small_rational(rng);
            remaining -= c.clone();
            c
        };
        let vertex = vertices.choose(rng).unwrap();
        acc = &acc + &SquareMatrix::from_permutation(vertex).scaled(&coeff);
    }
    acc
}

/// A random convex combination of the given permutation matrices.
fn random_convex(vertices: &[Permutation], rng: &mut ChaCha8Rng) -> SquareMatrix {
    let n = vertices[0].degree();
    let picks = rng.gen_range(1..=vertices.len());
    let weights: Vec<Scalar> =
        (0..picks).map(|_| frac(rng.gen_range(1..=9), rng.gen_range(1..=9))).collect();
    let total: Scalar = weights.iter().cloned().sum();
    let mut acc = SquareMatrix::zeros(n);
    for w in &weights {
        let vertex = vertices.choose(rng).unwrap();
        acc = &acc + &SquareMatrix::from_permutation(vertex).scaled(&(w / &total));
    }
    acc
}

fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

#[test]
fn criterion_1_enumeration_counts() {
    assert_eq!(enumerate_panmagic(1).unwrap().len(), 1);
    for n in [2, 3, 4, 6, 8, 9, 10, 12] {
        assert!(enumerate_panmagic(n).unwrap().is_empty(), "degree {}", n);
    }

    let five = enumerate_panmagic(5).unwrap();
    assert_eq!(five.len(), 10);
    let affine_five: Vec<AffineSpec> =
        (0..5).flat_map(|c| [AffineSpec { a: 2, b: c }, AffineSpec { a: 3, b: c }]).collect();
    assert_eq!(perm_set(&five), affine_set(5, &affine_five));

    let seven = enumerate_panmagic(7).unwrap();
    assert_eq!(seven.len(), 28);
    assert_eq!(perm_set(&seven), affine_set(7, &enumerate_affine_panmagic(7)));

    let eleven = enumerate_panmagic(11).unwrap();
    assert_eq!(eleven.len(), 88);
    assert_eq!(perm_set(&eleven), affine_set(11, &enumerate_affine_panmagic(11)));

    let thirteen = enumerate_panmagic(13).unwrap();
    let affine_thirteen = affine_set(13, &enumerate_affine_panmagic(13));
    assert_eq!(affine_thirteen.len(), 130);
    assert_eq!(thirteen.len(), 4524);
    let full = perm_set(&thirteen);
    assert!(affine_thirteen.is_subset(&full));
    assert!(affine_thirteen.len() < full.len());

    println!("criterion 1: pass (enumeration counts 1, 0x8, 10, 28, 88, 130 < 4524)");
}

#[test]
fn criterion_2_decomposition_round_trip() {
    let five = enumerate_panmagic(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for trial in 0..200 {
        let a = random_convex(&five, &mut rng);
        let decomp = decompose5(&a).unwrap_or_else(|e| panic!("trial {}: {}", trial, e));
        let mut total = int(0);
        for term in &decomp.terms {
            assert!(!term.coeff.is_negative(), "trial {}", trial);
            assert!(is_panmagic_perm(&term.perm).is_some(), "trial {}", trial);
            total += term.coeff.clone();
        }
        assert!(total.is_one(), "trial {}: coefficients sum to {}", trial, total);
        assert_eq!(decomp.matrix(), a, "trial {}", trial);
    }

    for f in [Fixture::Uniform5, Fixture::Perm2x_5, Fixture::Magic60] {
        let a = fixture(f);
        let decomp = decompose5(&a).unwrap();
        assert_eq!(decomp.matrix(), a, "{}", f.name());
    }

    println!("criterion 2: pass (200 random + 3 stored order-5 matrices decompose exactly)");
}

#[test]
fn criterion_3_spanning_rank() {
    let (rank, dim) = span_rank_check();
    assert_eq!((rank, dim), (9, 9));
    println!("criterion 3: pass (vertex span rank {} equals space dimension {})", rank, dim);
}

#[test]
fn criterion_4_order7_certificate_agreement() {
    let a = fixture(Fixture::Lemma41_7);
    assert!(a.check_panstochastic().holds());

    let vertices: Vec<SquareMatrix> =
        enumerate_panmagic(7).unwrap().iter().map(SquareMatrix::from_permutation).collect();
    assert_eq!(vertices.len(), 28);
    let verdict = membership(&a, &vertices).unwrap();
    assert_eq!(verdict, Membership::Infeasible);

    let cert = non_decomp_certificate(&a).unwrap().expect("certificate must exist");
    assert_eq!(cert.entry, (1, 0));

    println!("criterion 4: pass (order-7 matrix: hull test infeasible, certificate at (1, 0))");
}

#[test]
fn criterion_5_counterexample_family() {
    for n in 2..=49usize {
        if n == 5 {
            continue;
        }
        let a = counterexample(n).unwrap_or_else(|e| panic!("order {}: {}", n, e));
        assert_eq!(a.order(), n);
        assert!(a.check_panstochastic().holds(), "order {}", n);
        if n.gcd(&6) == 1 {
            let cert = non_decomp_certificate(&a)
                .unwrap()
                .unwrap_or_else(|| panic!("order {}: no certificate", n));
            assert!(cert.search_exhausted > 0, "order {}", n);
        } else if n <= 12 {
            assert!(enumerate_panmagic(n).unwrap().is_empty(), "order {}", n);
        } else {
            assert!(enumerate_affine_panmagic(n).is_empty(), "order {}", n);
        }
    }

    let big = fixture(Fixture::Thm12_25);
    let cert = non_decomp_certificate(&big).unwrap().unwrap();
    assert_eq!(cert.entry, (2, 0));
    let trace = forced_chain(&big, (2, 0)).unwrap();
    let chain: Vec<(usize, usize)> =
        trace.assignments.iter().map(|fa| (fa.column, fa.row)).collect();
    assert_eq!(chain, vec![(13, 18), (21, 4), (8, 17)]);
    assert_eq!(trace.conflict, Some(PropagationConflict::UpDiagonalReused { column: 8, row: 17 }));

    println!("criterion 5: pass (counterexamples for 2..=49 except 5; 25x25 chain reproduced)");
}

#[test]
fn criterion_6_product_laws() {
    let pools: Vec<(usize, Vec<Permutation>)> =
        [1usize, 5, 7].into_iter().map(|m| (m, enumerate_panmagic(m).unwrap())).collect();
    let pool = |m: usize| -> &Vec<Permutation> { &pools.iter().find(|(k, _)| *k == m).unwrap().1 };
    let mut rng = ChaCha8Rng::seed_from_u64(6);

    // Equal-magic blocks wreathed with a panmagic outer matrix stay
    // panmagic, and the magic number multiplies.
    for _ in 0..100 {
        let m = *[1usize, 5, 7].choose(&mut rng).unwrap();
        let n = *[1usize, 5, 7].choose(&mut rng).unwrap();
        let mu_a = small_rational(&mut rng);
        let mu_b = small_rational(&mut rng);
        let blocks: Vec<SquareMatrix> =
            (0..n).map(|_| random_panmagic(pool(m), &mu_a, &mut rng)).collect();
        let outer = random_panmagic(pool(n), &mu_b, &mut rng);
        let w = wreath_matrices(&blocks, &outer).unwrap();
        assert_eq!(w.check_panmagic(), MagicReport::Panmagic { mu: &mu_a * &mu_b });
    }

    // A wreath of permutations is panmagic exactly when all inner blocks
    // and the outer permutation are; both directions must occur.
    let mut positives = 0u32;
    let mut negatives = 0u32;
    for _ in 0..100 {
        let mut all_panmagic = true;
        let blocks: Vec<Permutation> = (0..5)
            .map(|_| {
                if rng.gen_bool(0.75) {
                    pool(5).choose(&mut rng).unwrap().clone()
                } else {
                    let p = random_perm(5, &mut rng);
                    all_panmagic &= is_panmagic_perm(&p).is_some();
                    p
                }
            })
            .collect();
        let outer = if rng.gen_bool(0.75) {
            pool(5).choose(&mut rng).unwrap().clone()
        } else {
            let p = random_perm(5, &mut rng);
            all_panmagic &= is_panmagic_perm(&p).is_some();
            p
        };
        let pi = wreath_perms(&blocks, &outer).unwrap();
        assert_eq!(is_panmagic_perm(&pi).is_some(), all_panmagic);
        if all_panmagic {
            positives += 1;
        } else {
            negatives += 1;
        }
    }
    assert!(positives > 0 && negatives > 0);

    // Kronecker products multiply magic numbers and preserve
    // panstochasticity.
    for _ in 0..100 {
        let m = *[1usize, 5, 7].choose(&mut rng).unwrap();
        let n = *[5usize, 7].choose(&mut rng).unwrap();
        let mu_a = small_rational(&mut rng);
        let mu_b = small_rational(&mut rng);
        let a = random_panmagic(pool(m), &mu_a, &mut rng);
        let b = random_panmagic(pool(n), &mu_b, &mut rng);
        assert_eq!(kronecker(&a, &b).check_panmagic(), MagicReport::Panmagic { mu: &mu_a * &mu_b });
        let c = random_convex(pool(m), &mut rng);
        let d = random_convex(pool(n), &mut rng);
        assert!(kronecker(&c, &d).check_panstochastic().holds());
    }

    // A Kronecker product of panmagic permutations is panmagic.
    for _ in 0..100 {
        let m = *[5usize, 7].choose(&mut rng).unwrap();
        let n = *[5usize, 7].choose(&mut rng).unwrap();
        let lambda = pool(m).choose(&mut rng).unwrap().clone();
        let rho = pool(n).choose(&mut rng).unwrap().clone();
        let blocks = vec![lambda; n];
        let pi = wreath_perms(&blocks, &rho).unwrap();
        assert!(is_panmagic_perm(&pi).is_some());
    }

    // Factoring a support-dominated permutation through a Kronecker
    // template recovers the inner blocks exactly.
    for trial in 0..100 {
        let m = 5usize;
        let n = *[3usize, 5].choose(&mut rng).unwrap();
        let generators: Vec<Permutation> =
            (0..rng.gen_range(2..=3)).map(|_| random_perm(m, &mut rng)).collect();
        let mut a = SquareMatrix::zeros(m);
        for g in &generators {
            a = &a + &SquareMatrix::from_permutation(g);
        }
        let rho = random_perm(n, &mut rng);
        let blocks: Vec<Permutation> =
            (0..n).map(|_| generators.choose(&mut rng).unwrap().clone()).collect();
        let pi = wreath_perms(&blocks, &rho).unwrap();
        let recovered = factor_through_support(&pi, &a, &rho).unwrap();
        assert_eq!(recovered, blocks, "trial {}", trial);

        let shifted: Vec<usize> = (0..n).map(|s| rho.image((s + 1) % n)).collect();
        let wrong = Permutation::from_images(shifted).unwrap();
        assert_ne!(wrong, rho);
        assert!(factor_through_support(&pi, &a, &wrong).is_err(), "trial {}", trial);
    }

    println!("criterion 6: pass (product laws hold on 100 random instances each)");
}

#[test]
fn criterion_7_affine_criterion_agreement() {
    for n in 1..=50usize {
        for a in 0..n {
            for b in 0..n {
                let spec = AffineSpec { a, b };
                match affine_perm(spec, n) {
                    Ok(pi) => {
                        let direct = is_panmagic_perm(&pi).is_some();
                        let arithmetic = is_affine_panmagic(spec, n).unwrap();
                        assert_eq!(direct, arithmetic, "n={} a={} b={}", n, a, b);
                    }
                    Err(_) => {
                        assert!(a.gcd(&n) != 1);
                        assert!(is_affine_panmagic(spec, n).is_err());
                    }
                }
            }
        }
    }
    println!("criterion 7: pass (witness test matches the gcd test for every n <= 50)");
}

#[test]
fn criterion_8_nonaffine_piecewise() {
    for (n, p) in [(25usize, 5usize), (35, 5), (35, 7), (49, 7)] {
        let pi = nonaffine_piecewise(n, p).unwrap();
        assert!(is_panmagic_perm(&pi).is_some(), "n={} p={}", n, p);
        assert!(is_affine(&pi).is_none(), "n={} p={}", n, p);
    }
    println!("criterion 8: pass (piecewise construction is panmagic and non-affine)");
}
