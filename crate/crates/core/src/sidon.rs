//! Sidon sets in cyclic groups Z_N: Bose and Ruzsa constructions, brute-force
//! verification, and the residue-coverage properties the folding step needs.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, is_primitive_root, pow_mod};
use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    /// `log_θ(α + F_q)` inside GF(q²); `modulus_poly` fixes the field.
    Bose {
        q: u64,
        theta: u64,
        alpha: u64,
        modulus_poly: Vec<u64>,
    },
    Ruzsa {
        p: u64,
        theta: u64,
    },
    External,
}

/// Distinct residues of Z_N, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SidonSetRepr")]
pub struct SidonSet {
    modulus: u64,
    elements: Vec<u64>,
    provenance: Provenance,
}

#[derive(Deserialize)]
struct SidonSetRepr {
    modulus: u64,
    elements: Vec<u64>,
    #[serde(default = "external")]
    provenance: Provenance,
}

fn external() -> Provenance {
    Provenance::External
}

impl TryFrom<SidonSetRepr> for SidonSet {
    type Error = Error;

    fn try_from(r: SidonSetRepr) -> Result<Self> {
        SidonSet::new(r.modulus, r.elements, r.provenance)
    }
}

/// Two pairs with the same sum: `a + b ≡ c + d (mod N)`, `{a, b} ≠ {c, d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumCollision {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SidonReport {
    pub pass: bool,
    pub witness: Option<SumCollision>,
}

impl SidonSet {
    /// Sorts `elements`; rejects out-of-range values and duplicates.
    pub fn new(modulus: u64, mut elements: Vec<u64>, provenance: Provenance) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus);
        }
        if let Some(&value) = elements.iter().find(|&&a| a >= modulus) {
            return Err(Error::ElementOutOfRange { value, modulus });
        }
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0]));
        }
        Ok(SidonSet {
            modulus,
            elements,
            provenance,
        })
    }

    pub fn external(modulus: u64, elements: Vec<u64>) -> Result<Self> {
        Self::new(modulus, elements, Provenance::External)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The multiset `{a mod b}`, sorted.
    pub fn residues(&self, b: u64) -> Vec<u64> {
        assert!(b >= 1, "residue modulus must be positive");
        let mut r: Vec<u64> = self.elements.iter().map(|a| a % b).collect();
        r.sort_unstable();
        r
    }

    /// True iff the residues mod `b` are exactly one representative of each
    /// class `1..=n`. Residue class 0 is read as label `b`, so for `b = n` it
    /// stands for `n`.
    pub fn coverage_check(&self, b: u64, n: usize) -> bool {
        residue_labels(&self.elements, b, n).is_some()
    }

    pub fn to_json_file(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n").map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| Error::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }
}

/// For each label `1..=n`, the unique element with that residue label mod
/// `b`; `None` unless the labels form a bijection onto `[1, n]`.
pub(crate) fn residue_labels(elements: &[u64], b: u64, n: usize) -> Option<Vec<u64>> {
    if elements.len() != n || b == 0 {
        return None;
    }
    let mut by_label = vec![None; n];
    for &a in elements {
        let label = match a % b {
            0 => b,
            r => r,
        };
        let slot = by_label.get_mut((label as usize).checked_sub(1)?)?;
        if slot.is_some() {
            return None;
        }
        *slot = Some(a);
    }
    by_label.into_iter().collect()
}

/// All pairwise sums `a_i + a_j` (`i ≤ j`) mod N must be distinct.
pub fn verify_sidon(s: &SidonSet) -> SidonReport {
    let n = s.modulus;
    let mut seen: HashMap<u64, (u64, u64)> = HashMap::with_capacity(s.len() * (s.len() + 1) / 2);
    for (i, &a) in s.elements.iter().enumerate() {
        for &b in &s.elements[i..] {
            let sum = ((a as u128 + b as u128) % n as u128) as u64;
            if let Some(&(c, d)) = seen.get(&sum) {
                return SidonReport {
                    pass: false,
                    witness: Some(SumCollision {
                        a: c,
                        b: d,
                        c: a,
                        d: b,
                    }),
                };
            }
            seen.insert(sum, (a, b));
        }
    }
    SidonReport {
        pass: true,
        witness: None,
    }
}

pub use crate::arith::max_sidon_bound;

fn base_field_order(ext: &FieldCtx) -> Result<u64> {
    if !ext.degree().is_multiple_of(2) {
        return Err(Error::NotQuadraticExtension(ext.order()));
    }
    Ok(ext.characteristic().pow(ext.degree() / 2))
}

/// Bose's set `{log_θ(α + a) : a ∈ F_q}` in Z_{q²−1}.
///
/// `ext` is GF(q²); F_q is its subfield `{x : x^q = x}`. `alpha` must lie
/// outside that subfield and `theta` must be primitive.
pub fn bose(ext: &FieldCtx, theta: FieldElem, alpha: FieldElem) -> Result<SidonSet> {
    let q = base_field_order(ext)?;
    ext.elem(alpha.0)?;
    if !ext.is_primitive(theta) {
        return Err(Error::NotPrimitive(theta.0));
    }
    if ext.pow(alpha, q) == alpha {
        return Err(Error::AlphaInBaseField(alpha.0));
    }
    let mut elements = Vec::with_capacity(q as usize);
    for a in base_field(ext, q) {
        let x = ext.add(alpha, a);
        elements.push(ext.discrete_log(theta, x)?);
    }
    let set = SidonSet::new(
        q * q - 1,
        elements,
        Provenance::Bose {
            q,
            theta: theta.0,
            alpha: alpha.0,
            modulus_poly: ext.modulus_poly().to_vec(),
        },
    )?;
    debug_assert!(verify_sidon(&set).pass);
    Ok(set)
}

/// The subfield F_q of GF(q²): zero together with the powers of `g^(q+1)`.
pub fn base_field(ext: &FieldCtx, q: u64) -> Vec<FieldElem> {
    let step = ext.exp_primitive(q + 1);
    let mut out = Vec::with_capacity(q as usize);
    out.push(FieldElem::ZERO);
    let mut x = FieldElem::ONE;
    for _ in 0..q - 1 {
        out.push(x);
        x = ext.mul(x, step);
    }
    out.sort_unstable();
    out
}

/// Smallest element of GF(q²) outside F_q.
pub fn canonical_alpha(ext: &FieldCtx) -> Result<FieldElem> {
    let q = base_field_order(ext)?;
    Ok(ext
        .elements()
        .find(|&x| ext.pow(x, q) != x)
        .expect("a proper extension has elements outside the base field"))
}

/// Bose's set for `q` with the canonical field, generator and `α`.
pub fn bose_canonical(q: u64) -> Result<SidonSet> {
    let ext = FieldCtx::quadratic_extension(q)?;
    let alpha = canonical_alpha(&ext)?;
    bose(&ext, ext.primitive(), alpha)
}

/// Ruzsa's set `{ip − θ^i(p−1) mod (p²−p) : 1 ≤ i ≤ p−1}`.
pub fn ruzsa(p: u64, theta: u64) -> Result<SidonSet> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotOddPrime(p));
    }
    if theta >= p || !is_primitive_root(theta, p) {
        return Err(Error::NotPrimitive(theta));
    }
    let n = (p * p - p) as i128;
    let elements = (1..p)
        .map(|i| {
            let t = pow_mod(theta, i, p) as i128;
            (i as i128 * p as i128 - t * (p as i128 - 1)).rem_euclid(n) as u64
        })
        .collect();
    let set = SidonSet::new(n as u64, elements, Provenance::Ruzsa { p, theta })?;
    debug_assert!(verify_sidon(&set).pass);
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ruzsa_small() {
        assert_eq!(ruzsa(3, 2).unwrap().elements(), &[4, 5]);
        assert_eq!(ruzsa(7, 3).unwrap().elements(), &[2, 4, 5, 27, 31, 36]);
        assert!(matches!(ruzsa(9, 2), Err(Error::NotOddPrime(9))));
        assert!(matches!(ruzsa(2, 1), Err(Error::NotOddPrime(2))));
        assert!(matches!(ruzsa(7, 2), Err(Error::NotPrimitive(2))));
    }

    #[test]
    fn verify_examples() {
        let s = SidonSet::external(42, vec![2, 4, 5, 27, 31, 36]).unwrap();
        assert!(verify_sidon(&s).pass);
        let s = SidonSet::external(6, vec![0, 1, 2]).unwrap();
        let r = verify_sidon(&s);
        assert!(!r.pass);
        assert_eq!(
            r.witness,
            Some(SumCollision {
                a: 0,
                b: 2,
                c: 1,
                d: 1
            })
        );
        assert!(verify_sidon(&SidonSet::external(10, vec![]).unwrap()).pass);
    }

    #[test]
    fn set_validation() {
        assert!(matches!(
            SidonSet::external(5, vec![1, 5]),
            Err(Error::ElementOutOfRange {
                value: 5,
                modulus: 5
            })
        ));
        assert!(matches!(
            SidonSet::external(5, vec![1, 1]),
            Err(Error::DuplicateElement(1))
        ));
        assert_eq!(
            SidonSet::external(9, vec![5, 1, 3]).unwrap().elements(),
            &[1, 3, 5]
        );
    }

    #[test]
    fn residue_views() {
        let r7 = ruzsa(7, 3).unwrap();
        assert_eq!(r7.residues(7), vec![1, 2, 3, 4, 5, 6]);
        assert!(r7.coverage_check(7, 6));
        assert!(r7.coverage_check(6, 6));
        let r13 = ruzsa(13, 2).unwrap();
        assert!(r13.residues(12).contains(&0));
        assert!(r13.coverage_check(12, 12));
        assert!(!r13.coverage_check(11, 12));
    }

    #[test]
    fn bose_small_q() {
        let ext = FieldCtx::quadratic_extension(3).unwrap();
        let theta = ext.primitive();
        let s = bose(&ext, theta, theta).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.modulus(), 8);
        assert!(verify_sidon(&s).pass);
        assert!(matches!(
            bose(&ext, theta, FieldElem(1)),
            Err(Error::AlphaInBaseField(1))
        ));
        assert!(matches!(
            bose(&ext, FieldElem(1), theta),
            Err(Error::NotPrimitive(1))
        ));
        let odd = FieldCtx::new(3, 3).unwrap();
        assert!(matches!(
            bose(&odd, odd.primitive(), odd.primitive()),
            Err(Error::NotQuadraticExtension(27))
        ));
    }

    #[test]
    fn base_field_is_fixed_field() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let ext = FieldCtx::quadratic_extension(q).unwrap();
            assert_eq!(base_field(&ext, q), ext.fixed_by_power(q), "q = {q}");
        }
    }

    #[test]
    fn json_import_reverifies_shape() {
        let s: SidonSet =
            serde_json::from_str(r#"{"modulus": 42, "elements": [36, 2, 4]}"#).unwrap();
        assert_eq!(s.elements(), &[2, 4, 36]);
        assert_eq!(s.provenance(), &Provenance::External);
        assert!(serde_json::from_str::<SidonSet>(r#"{"modulus": 4, "elements": [4]}"#).is_err());
        let r = ruzsa(7, 3).unwrap();
        let back: SidonSet = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
