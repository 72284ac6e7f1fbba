mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sonar_core::ff::FieldCtx;
use sonar_core::sidon::{self, bose, canonical_alpha, max_sidon_bound, ruzsa, verify_sidon};
use sonar_core::SidonSet;

fn bose_props(set: &SidonSet, q: u64) {
    assert_eq!(set.len() as u64, q);
    assert_eq!(set.modulus(), q * q - 1);
    assert!(verify_sidon(set).pass);
    let b = q + 1;
    // B1
    assert!(set.elements().iter().all(|a| a % b != 0));
    // B2
    let mut r = set.residues(b);
    r.dedup();
    assert_eq!(r.len() as u64, q);
    // B3
    assert_eq!(set.residues(b), (1..=q).collect::<Vec<_>>());
    assert!(set.coverage_check(b, q as usize));
}

#[test]
fn bose_every_theta_and_alpha_small_q() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let ext = FieldCtx::quadratic_extension(q).unwrap();
        let outside: Vec<_> = ext.elements().filter(|&x| ext.pow(x, q) != x).collect();
        for theta in ext.primitive_elements() {
            for &alpha in &outside {
                bose_props(&bose(&ext, theta, alpha).unwrap(), q);
            }
        }
    }
}

#[test]
fn bose_larger_q_sampled() {
    for q in [
        11u64, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49,
    ] {
        let ext = FieldCtx::quadratic_extension(q).unwrap();
        let alpha = canonical_alpha(&ext).unwrap();
        for theta in ext.primitive_elements().into_iter().step_by(7).take(12) {
            bose_props(&bose(&ext, theta, alpha).unwrap(), q);
        }
        let theta = ext.primitive();
        for alpha in ext
            .elements()
            .filter(|&x| ext.pow(x, q) != x)
            .step_by(31)
            .take(12)
        {
            bose_props(&bose(&ext, theta, alpha).unwrap(), q);
        }
    }
}

#[test]
fn bose_saturates_the_counting_bound() {
    for q in [3u64, 4, 5, 7, 8, 9] {
        let set = sidon::bose_canonical(q).unwrap();
        assert_eq!(set.len() as u64, max_sidon_bound(q * q - 1), "q = {q}");
    }
}

#[test]
fn ruzsa_every_prime_and_root() {
    for p in (3..=50u64).filter(|&p| sonar_core::arith::is_prime(p)) {
        let field = FieldCtx::new(p, 1).unwrap();
        for theta in field.primitive_elements() {
            let set = ruzsa(p, theta.0).unwrap();
            assert_eq!(set.len() as u64, p - 1);
            assert_eq!(set.modulus(), p * p - p);
            assert!(verify_sidon(&set).pass);
            assert!(set.len() as u64 <= max_sidon_bound(p * p - p));
            // R1
            assert_eq!(set.residues(p), (1..p).collect::<Vec<_>>());
            // R2, class 0 read as p - 1
            assert!(set.coverage_check(p - 1, p as usize - 1));
        }
    }
}

#[test]
fn pair_sums_agree_with_differences_exhaustively() {
    for n in 1..=12u64 {
        for mask in 0u32..(1 << n) {
            let elements: Vec<u64> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
            let set = SidonSet::external(n, elements.clone()).unwrap();
            assert_eq!(
                verify_sidon(&set).pass,
                common::sidon_by_differences(&elements, n),
                "{elements:?} in Z_{n}"
            );
        }
    }
}

#[test]
fn witness_is_a_genuine_collision() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2000 {
        let n = rng.gen_range(2..60u64);
        let k = rng.gen_range(0..=n.min(12));
        let mut elements: Vec<u64> = (0..n).collect();
        for i in 0..k as usize {
            let j = rng.gen_range(i..n as usize);
            elements.swap(i, j);
        }
        elements.truncate(k as usize);
        let set = SidonSet::external(n, elements).unwrap();
        let report = verify_sidon(&set);
        if let Some(w) = report.witness {
            assert_eq!((w.a + w.b) % n, (w.c + w.d) % n);
            let mut l = [w.a, w.b];
            let mut r = [w.c, w.d];
            l.sort();
            r.sort();
            assert_ne!(l, r);
        }
        assert_eq!(report.pass, report.witness.is_none());
    }
}

/// Translations and unit multiples are automorphisms (or affine maps) of
/// Z_N that preserve the Sidon property.
#[test]
fn affine_images_of_sidon_sets_are_sidon() {
    for n in 1..=20u64 {
        let units: Vec<u64> = (1..=n).filter(|&u| common::gcd(u, n) == 1).collect();
        for set in common::all_sidon_subsets(n) {
            for t in 0..n {
                let moved: Vec<u64> = set.iter().map(|a| (a + t) % n).collect();
                let s = SidonSet::external(n, moved).unwrap();
                assert!(verify_sidon(&s).pass);
            }
            for &u in &units {
                let scaled: Vec<u64> = set.iter().map(|a| a * u % n).collect();
                let s = SidonSet::external(n, scaled).unwrap();
                assert!(verify_sidon(&s).pass);
                assert!(s.len() as u64 <= max_sidon_bound(n));
            }
        }
    }
}

proptest! {
    #[test]
    fn sidon_sets_never_exceed_the_bound(n in 1u64..40, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // greedy random Sidon set
        let mut cur: Vec<u64> = Vec::new();
        for _ in 0..4 * n {
            let x = rng.gen_range(0..n);
            if cur.contains(&x) {
                continue;
            }
            cur.push(x);
            if !common::sidon_by_differences(&cur, n) {
                cur.pop();
            }
        }
        let set = SidonSet::external(n, cur).unwrap();
        prop_assert!(verify_sidon(&set).pass);
        prop_assert!(set.len() as u64 <= max_sidon_bound(n));
    }
}
