//! Folding a Sidon set of Z_{mb} into an `m × n` modular sonar sequence.
//!
//! If the residues of `A ⊂ Z_{mb}` modulo `b` hit every label in `[1, n]`
//! exactly once, then `f(i) = ⌊a_i / b⌋`, with `a_i` the element labelled
//! `i`, has distinct differences modulo `m`: a collision in the difference
//! triangle lifts (via `a_i = b·f(i) + i`) to a repeated sum in `A`.

use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FieldElem};
use crate::sequence::{SeqProvenance, SonarSeq};
use crate::sidon::{self, residue_labels, verify_sidon, Provenance, SidonSet};

/// `f(i) = ⌊a_i / b⌋` over Z_m, where `a_i ≡ i (mod b)`.
///
/// When `n = b` the residues are all of Z_b; class 0 then counts as label
/// `b` for the coverage test but is placed at position 1, with class `r`
/// at position `r + 1`. (Putting it last breaks `a_i = b·f(i) + i`.)
///
/// The set is re-verified here, so externally supplied sets are safe to pass.
pub fn fold_sidon(s: &SidonSet, m: u64, b: u64) -> Result<SonarSeq> {
    if m == 0 || b == 0 {
        return Err(Error::InvalidModulus);
    }
    if m.checked_mul(b) != Some(s.modulus()) {
        return Err(Error::ModulusMismatch {
            actual: s.modulus(),
            m,
            b,
        });
    }
    let report = verify_sidon(s);
    if let Some(w) = report.witness {
        return Err(Error::NotSidon {
            a: w.a,
            b: w.b,
            c: w.c,
            d: w.d,
            modulus: s.modulus(),
        });
    }
    let n = s.len();
    let mut labelled = residue_labels(s.elements(), b, n).ok_or(Error::CoverageFailure { b, n })?;
    if n as u64 == b {
        // full residue system: the element ≡ 0 goes first so that position
        // i carries residue i − 1 and a = b·f + (i − 1) holds throughout
        labelled.rotate_right(1);
    }
    let values = labelled.iter().map(|a| a / b).collect();
    let provenance = fold_provenance(s, m, b);
    Ok(SonarSeq::modular(m, values)?.with_provenance(provenance))
}

fn fold_provenance(s: &SidonSet, m: u64, b: u64) -> SeqProvenance {
    match *s.provenance() {
        Provenance::Bose {
            q, theta, alpha, ..
        } if m + 2 == b => SeqProvenance::new("bose-fold")
            .with("q", q)
            .with("theta", theta)
            .with("alpha", alpha),
        Provenance::Ruzsa { p, theta } if b == p => SeqProvenance::new("ruzsa-fold-mod-p")
            .with("p", p)
            .with("theta", theta),
        Provenance::Ruzsa { p, theta } if m == p => SeqProvenance::new("ruzsa-fold-mod-p-minus-1")
            .with("p", p)
            .with("theta", theta),
        _ => SeqProvenance::new("fold").with("m", m).with("b", b),
    }
}

/// Inverse of the fold: `a_i = b·f(i) + i`, or `b·f(i) + i − 1` when the
/// set was a full residue system mod `b`.
pub fn unfold(seq: &SonarSeq, b: u64) -> Vec<u64> {
    let shift = if seq.n() as u64 == b { 0 } else { 1 };
    let mut out: Vec<u64> = seq
        .values()
        .iter()
        .enumerate()
        .map(|(k, &f)| f * b + k as u64 + shift)
        .collect();
    out.sort_unstable();
    out
}

/// `(q−1) × q` sequence from Bose's set folded with `b = q + 1`.
pub fn sonar_from_bose(ext: &FieldCtx, theta: FieldElem, alpha: FieldElem) -> Result<SonarSeq> {
    let set = sidon::bose(ext, theta, alpha)?;
    let q = set.len() as u64;
    fold_sidon(&set, q - 1, q + 1)
}

/// `(p−1) × (p−1)` sequence: Ruzsa's set folded with `b = p`.
pub fn sonar_from_ruzsa_mod_p(p: u64, theta: u64) -> Result<SonarSeq> {
    let set = sidon::ruzsa(p, theta)?;
    fold_sidon(&set, p - 1, p)
}

/// `p × (p−1)` sequence: Ruzsa's set folded with `b = p − 1`.
pub fn sonar_from_ruzsa_mod_p_minus_1(p: u64, theta: u64) -> Result<SonarSeq> {
    let set = sidon::ruzsa(p, theta)?;
    fold_sidon(&set, p, p - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::check_modular;

    #[test]
    fn ruzsa_folds() {
        let s = sonar_from_ruzsa_mod_p(7, 3).unwrap();
        assert_eq!(s.values(), &[5, 0, 4, 0, 0, 3]);
        assert_eq!((s.m(), s.n()), (6, 6));
        assert_eq!(s.provenance().construction, "ruzsa-fold-mod-p");

        let s = sonar_from_ruzsa_mod_p_minus_1(13, 2).unwrap();
        assert_eq!(s.values(), &[12, 12, 11, 8, 1, 12, 7, 9, 12, 4, 0, 4]);
        assert!(check_modular(&s, 13).unwrap().pass);

        let s = sonar_from_ruzsa_mod_p(5, 2).unwrap();
        assert_eq!((s.m(), s.n()), (4, 4));
        assert!(check_modular(&s, 4).unwrap().pass);
    }

    #[test]
    fn bose_fold_q3() {
        let ext = FieldCtx::quadratic_extension(3).unwrap();
        let s = sonar_from_bose(&ext, ext.primitive(), ext.primitive()).unwrap();
        assert_eq!((s.m(), s.n()), (2, 3));
        assert!(check_modular(&s, 2).unwrap().pass);
    }

    #[test]
    fn rejections() {
        let r7 = sidon::ruzsa(7, 3).unwrap();
        assert!(matches!(
            fold_sidon(&r7, 5, 7),
            Err(Error::ModulusMismatch {
                actual: 42,
                m: 5,
                b: 7
            })
        ));
        // Bose set folded by q instead of q + 1: residues collide
        let ext = FieldCtx::quadratic_extension(9).unwrap();
        let b9 = sidon::bose(&ext, FieldElem(6), FieldElem(6)).unwrap();
        assert!(matches!(
            fold_sidon(&b9, 80 / 8, 8),
            Err(Error::CoverageFailure { .. })
        ));
        let bad = SidonSet::external(6, vec![0, 1, 2]).unwrap();
        assert!(matches!(
            fold_sidon(&bad, 2, 3),
            Err(Error::NotSidon { .. })
        ));
    }

    #[test]
    fn unfold_round_trip() {
        let r13 = sidon::ruzsa(13, 2).unwrap();
        let s = fold_sidon(&r13, 13, 12).unwrap();
        assert_eq!(unfold(&s, 12), r13.elements());
    }
}
