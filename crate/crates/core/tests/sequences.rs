mod common;

use proptest::prelude::*;
use sonar_core::classic;
use sonar_core::ff::FieldCtx;
use sonar_core::fold::{self, fold_sidon, unfold};
use sonar_core::sidon::{self, canonical_alpha};
use sonar_core::verify::{check_modular, check_plain, check_values, difference_triangle_of, Mode};
use sonar_core::{Error, SonarSeq};

fn sample_constructions() -> Vec<SonarSeq> {
    let mut out = Vec::new();
    for p in [3u64, 5, 7, 11, 13] {
        out.push(classic::quadratic(p, 1, 0, 0).unwrap());
        out.push(
            classic::welch_exp(p, FieldCtx::new(p, 1).unwrap().primitive().0, 0, true).unwrap(),
        );
        out.push(classic::welch_log(p, FieldCtx::new(p, 1).unwrap().primitive().0).unwrap());
        out.push(
            fold::sonar_from_ruzsa_mod_p(p, FieldCtx::new(p, 1).unwrap().primitive().0).unwrap(),
        );
        out.push(
            fold::sonar_from_ruzsa_mod_p_minus_1(p, FieldCtx::new(p, 1).unwrap().primitive().0)
                .unwrap(),
        );
    }
    for q in [3u64, 4, 5, 7, 8, 9] {
        let ext = FieldCtx::quadratic_extension(q).unwrap();
        let base = FieldCtx::with_order(q).unwrap();
        out.push(classic::shift(&ext, &base, ext.primitive(), base.primitive()).unwrap());
        out.push(classic::golomb(&base, base.primitive(), base.primitive()).unwrap());
        out.push(
            fold::sonar_from_bose(&ext, ext.primitive(), canonical_alpha(&ext).unwrap()).unwrap(),
        );
    }
    out
}

#[test]
fn modular_property_implies_plain_property() {
    for s in sample_constructions() {
        assert!(
            check_modular(&s, s.m()).unwrap().pass,
            "{:?}",
            s.provenance()
        );
        assert!(check_plain(&s).unwrap().pass, "{:?}", s.provenance());
        assert!(check_plain(&s.to_plain()).unwrap().pass);
    }
}

#[test]
fn the_printed_p13_sequence_differs_from_the_label_last_ordering() {
    // residue-0 element placed last instead of first
    let label_last = [12, 11, 8, 1, 12, 7, 9, 12, 4, 0, 4, 12];
    assert!(!check_values(&label_last, Mode::Modular(13)).unwrap().pass);
    let folded = fold::sonar_from_ruzsa_mod_p_minus_1(13, 2).unwrap();
    assert_eq!(
        folded.rotate_right(label_last.len() - 1).values(),
        &label_last
    );
}

#[test]
fn fold_reconstructs_the_sidon_set() {
    for p in (3..50u64).filter(|&p| sonar_core::arith::is_prime(p)) {
        let theta = FieldCtx::new(p, 1).unwrap().primitive().0;
        let set = sidon::ruzsa(p, theta).unwrap();
        let a = fold_sidon(&set, p - 1, p).unwrap();
        assert_eq!(unfold(&a, p), set.elements());
        let b = fold_sidon(&set, p, p - 1).unwrap();
        assert_eq!(unfold(&b, p - 1), set.elements());
    }
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let set = sidon::bose_canonical(q).unwrap();
        let s = fold_sidon(&set, (q - 1).max(1), q + 1);
        let s = s.unwrap();
        assert_eq!(unfold(&s, q + 1), set.elements());
    }
}

#[test]
fn fold_rejects_sets_without_coverage() {
    let set = sidon::bose_canonical(5).unwrap();
    // 24 = 3 * 8: residues mod 8 do not form [1, 5]
    assert!(matches!(
        fold_sidon(&set, 3, 8),
        Err(Error::CoverageFailure { .. })
    ));
    // b = q never divides q^2 - 1
    assert!(matches!(
        fold_sidon(&set, 4, 5),
        Err(Error::ModulusMismatch { .. })
    ));
}

fn seq_strategy() -> impl Strategy<Value = (Vec<u64>, u64)> {
    (1u64..9).prop_flat_map(|m| (prop::collection::vec(0..m, 1..11), Just(m)))
}

proptest! {
    #[test]
    fn triangle_scan_agrees_with_direct_scan((values, m) in seq_strategy()) {
        let report = check_values(&values, Mode::Modular(m)).unwrap();
        let oracle = common::first_violation(&values, Some(m));
        prop_assert_eq!(report.witness.map(|w| (w.h, w.i, w.j)), oracle);
        let report = check_values(&values, Mode::Plain).unwrap();
        let oracle = common::first_violation(&values, None);
        prop_assert_eq!(report.witness.map(|w| (w.h, w.i, w.j)), oracle);

        let tri = difference_triangle_of(&values, Mode::Modular(m)).unwrap();
        prop_assert_eq!(tri.first_collision(), check_values(&values, Mode::Modular(m)).unwrap().witness);
        for (k, row) in tri.rows().enumerate() {
            prop_assert_eq!(row.len(), values.len() - k - 1);
        }
    }

    #[test]
    fn translation_preserves_the_modular_property((values, m) in seq_strategy(), c in 0u64..20) {
        let moved: Vec<u64> = values.iter().map(|v| (v + c) % m).collect();
        let a = check_values(&values, Mode::Modular(m)).unwrap();
        let b = check_values(&moved, Mode::Modular(m)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn classic_dimensions(k in 0usize..14, s in -30i64..30, a in 1i64..200, b in -50i64..50) {
        let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
        let p = primes[k];
        let f = FieldCtx::new(p, 1).unwrap();
        let roots = f.primitive_elements();
        let alpha = roots[(a as usize) % roots.len()].0;
        if a % p as i64 != 0 {
            let seq = classic::quadratic(p, a, b, s).unwrap();
            prop_assert_eq!((seq.m(), seq.n()), (p, p as usize + 1));
            prop_assert!(check_modular(&seq, p).unwrap().pass);
        }
        let seq = classic::welch_exp(p, alpha, s, true).unwrap();
        prop_assert_eq!((seq.m(), seq.n()), (p, p as usize));
        prop_assert!(check_modular(&seq, p).unwrap().pass);
        let seq = classic::welch_exp(p, alpha, 0, false).unwrap();
        prop_assert_eq!((seq.m(), seq.n()), (p, p as usize - 1));
        prop_assert!(check_modular(&seq, p).unwrap().pass);
        let seq = classic::welch_log(p, alpha).unwrap();
        prop_assert_eq!((seq.m(), seq.n()), (p - 1, p as usize - 1));
        prop_assert!(check_modular(&seq, p - 1).unwrap().pass);
    }
}
